use crate::syntax::{Neg, Pos};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A hypothesis: `x : A-` or a suspended positive `z : <A+>`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hyp {
    Neg(Neg),
    Susp(Pos),
}

impl fmt::Display for Hyp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hyp::Neg(a) => write!(f, "{a}"),
            Hyp::Susp(a) => write!(f, "<{a}>"),
        }
    }
}

/// The hypothetical context. Later bindings shadow earlier ones with the
/// same name; iteration only yields visible bindings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ctx {
    entries: Vec<(String, Hyp)>,
}

impl Ctx {
    pub fn new() -> Self {
        Ctx { entries: Vec::new() }
    }

    pub fn with(mut self, name: &str, hyp: Hyp) -> Self {
        self.push(name.into(), hyp);
        self
    }

    pub fn push(&mut self, name: String, hyp: Hyp) {
        self.entries.push((name, hyp));
    }

    pub fn pop(&mut self) -> Option<(String, Hyp)> {
        self.entries.pop()
    }

    pub fn lookup(&self, name: &str) -> Option<&Hyp> {
        self.entries.iter().rev().find(|(n, _)| n == name).map(|(_, h)| h)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.lookup(name).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Hyp)> {
        let entries = &self.entries;
        entries
            .iter()
            .enumerate()
            .filter(move |(i, (n, _))| !entries[i + 1..].iter().any(|(m, _)| m == n))
            .map(|(_, (n, h))| (n.as_str(), h))
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_suspension_normal(&self) -> bool {
        self.iter().all(|(_, h)| !matches!(h, Hyp::Susp(a) if !a.is_atom()))
    }
}

impl fmt::Display for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, h)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}:{h}")?;
        }
        Ok(())
    }
}

impl FromIterator<(String, Hyp)> for Ctx {
    fn from_iter<I: IntoIterator<Item = (String, Hyp)>>(iter: I) -> Self {
        Ctx { entries: iter.into_iter().collect() }
    }
}
