use crate::syntax::UProp;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A finite rooted Kripke model. World 0 is the root and `up[w]` is the
/// bitmask of worlds accessible from `w`, including `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    pub up: Vec<u32>,
    pub valuation: BTreeMap<String, u32>,
}

impl KripkeModel {
    pub fn worlds(&self) -> usize {
        self.up.len()
    }

    fn all(&self) -> u32 {
        (1u32 << self.up.len()) - 1
    }

    /// The worlds forcing `p`.
    pub fn forcing(&self, p: &UProp) -> u32 {
        match p {
            UProp::Atom(a) => self.valuation.get(a).copied().unwrap_or(0),
            UProp::Top => self.all(),
            UProp::Bot => 0,
            UProp::And(a, b) => self.forcing(a) & self.forcing(b),
            UProp::Or(a, b) => self.forcing(a) | self.forcing(b),
            UProp::Imp(a, b) => {
                let ok = !self.forcing(a) | self.forcing(b);
                (0..self.up.len()).filter(|&w| self.up[w] & !ok == 0).fold(0, |m, w| m | (1 << w))
            }
        }
    }

    pub fn forces(&self, w: usize, p: &UProp) -> bool {
        self.forcing(p) & (1 << w) != 0
    }

    /// Reflexive, transitive, antisymmetric, rooted at 0 and with monotone
    /// valuations.
    pub fn is_well_formed(&self) -> bool {
        let n = self.up.len();
        let all = self.all();
        let mut ok = n > 0 && self.up[0] == all;
        for w in 0..n {
            ok &= self.up[w] & (1 << w) != 0;
            for v in 0..n {
                if self.up[w] & (1 << v) != 0 {
                    ok &= self.up[v] & !self.up[w] == 0;
                    ok &= v == w || self.up[v] & (1 << w) == 0;
                }
            }
        }
        ok && self.valuation.values().all(|&m| is_up_set(&self.up, m))
    }
}

impl fmt::Display for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.up.len();
        writeln!(f, "worlds: {n} (root w0)")?;
        for w in 0..n {
            let succ: Vec<String> =
                (0..n).filter(|&v| v != w && self.up[w] & (1 << v) != 0).map(|v| alloc::format!("w{v}")).collect();
            let atoms: Vec<&str> =
                self.valuation.iter().filter(|(_, &m)| m & (1 << w) != 0).map(|(a, _)| a.as_str()).collect();
            writeln!(f, "w{w}: above [{}] forces {{{}}}", succ.join(", "), atoms.join(", "))?;
        }
        Ok(())
    }
}

fn is_up_set(up: &[u32], m: u32) -> bool {
    (0..up.len()).all(|w| m & (1 << w) == 0 || up[w] & !m == 0)
}

/// Rooted partial orders on `n` worlds whose order extends the numbering.
fn frames(n: usize) -> Vec<Vec<u32>> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for bits in 0u32..(1 << pairs.len()) {
        let mut up: Vec<u32> = (0..n).map(|w| 1 << w).collect();
        up[0] = (1 << n) - 1;
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if bits & (1 << k) != 0 {
                up[i] |= 1 << j;
            }
        }
        let transitive = (0..n).all(|w| (0..n).all(|v| up[w] & (1 << v) == 0 || up[v] & !up[w] == 0));
        if transitive {
            out.push(up);
        }
    }
    out
}

/// A countermodel to `p` with at most `max_worlds` worlds, smallest first.
pub fn kripke_refute(p: &UProp, max_worlds: usize) -> Option<KripkeModel> {
    assert!(max_worlds <= 5, "at most five worlds are supported");
    let names: Vec<String> = p.atoms().into_iter().collect();
    for n in 1..=max_worlds {
        for up in frames(n) {
            let ups: Vec<u32> = (0u32..(1 << n)).filter(|&m| is_up_set(&up, m)).collect();
            let mut idx = alloc::vec![0usize; names.len()];
            loop {
                let model = KripkeModel {
                    up: up.clone(),
                    valuation: names.iter().cloned().zip(idx.iter().map(|&i| ups[i])).collect(),
                };
                if !model.forces(0, p) {
                    return Some(model);
                }
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < ups.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_uprop;

    #[test]
    fn frame_counts() {
        // Isomorphic frames may repeat.
        assert_eq!(frames(1).len(), 1);
        assert_eq!(frames(2).len(), 1);
        assert_eq!(frames(3).len(), 2);
        assert!(frames(4).iter().all(|up| up[0] == 0b1111));
    }

    #[test]
    fn countermodels() {
        assert_eq!(kripke_refute(&parse_uprop("p -> p").unwrap(), 3), None);
        for text in ["p \\/ (p -> false)", "((p -> q) -> p) -> p"] {
            let p = parse_uprop(text).unwrap();
            assert_eq!(kripke_refute(&p, 1), None, "{text} is a classical tautology");
            let m = kripke_refute(&p, 2).unwrap();
            assert_eq!(m.worlds(), 2);
            assert!(m.is_well_formed());
            assert!(!m.forces(0, &p));
        }
        let lem = kripke_refute(&parse_uprop("p \\/ (p -> false)").unwrap(), 2).unwrap();
        assert!(!lem.forces(0, &UProp::atom("p")));
        assert!(!lem.forces(0, &parse_uprop("p -> false").unwrap()));
    }
}
