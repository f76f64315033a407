//! The unfocused sequent calculus G3, extended with the ordered Ψ sequents
//! `Γ; Ψ ⊢ Q` used by de-focalization.

use crate::syntax::UProp;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A multiset of unpolarized propositions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset(BTreeMap<UProp, usize>);

impl Multiset {
    pub fn new() -> Self {
        Multiset(BTreeMap::new())
    }

    pub fn insert(&mut self, p: UProp) {
        *self.0.entry(p).or_insert(0) += 1;
    }

    pub fn with(&self, p: UProp) -> Self {
        let mut m = self.clone();
        m.insert(p);
        m
    }

    pub fn contains(&self, p: &UProp) -> bool {
        self.0.contains_key(p)
    }

    pub fn count(&self, p: &UProp) -> usize {
        self.0.get(p).copied().unwrap_or(0)
    }

    /// Total number of elements, counting multiplicity.
    pub fn len(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Distinct elements with their multiplicities.
    pub fn iter(&self) -> impl Iterator<Item = (&UProp, usize)> {
        self.0.iter().map(|(p, n)| (p, *n))
    }
}

impl FromIterator<UProp> for Multiset {
    fn from_iter<I: IntoIterator<Item = UProp>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for p in iter {
            m.insert(p);
        }
        m
    }
}

/// `Γ; Ψ ⊢ goal`. Plain G3 sequents have an empty Ψ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USequent {
    pub gamma: Multiset,
    pub psi: Vec<UProp>,
    pub goal: UProp,
}

impl USequent {
    pub fn plain(gamma: Multiset, goal: UProp) -> Self {
        USequent { gamma, psi: Vec::new(), goal }
    }
}

impl fmt::Display for USequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, n) in self.gamma.iter() {
            for _ in 0..n {
                if !first {
                    f.write_str(", ")?;
                }
                first = false;
                write!(f, "{p}")?;
            }
        }
        if !self.psi.is_empty() {
            f.write_str("; ")?;
            for (i, p) in self.psi.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{p}")?;
            }
        }
        write!(f, " |- {}", self.goal)
    }
}

/// An unfocused derivation. Left rules name their principal formula by value,
/// so derivations do not depend on the shape of the surrounding context.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UDeriv {
    Init(String),
    BotL,
    OrR1(Box<UDeriv>),
    OrR2(Box<UDeriv>),
    OrL { principal: UProp, left: Box<UDeriv>, right: Box<UDeriv> },
    TopR,
    AndR(Box<UDeriv>, Box<UDeriv>),
    AndL1 { principal: UProp, premise: Box<UDeriv> },
    AndL2 { principal: UProp, premise: Box<UDeriv> },
    ImpR(Box<UDeriv>),
    ImpL { principal: UProp, arg: Box<UDeriv>, body: Box<UDeriv> },
    PsiCons(Box<UDeriv>),
    PsiNil(Box<UDeriv>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleTag {
    Init,
    BotL,
    OrR1,
    OrR2,
    OrL,
    TopR,
    AndR,
    AndL1,
    AndL2,
    ImpR,
    ImpL,
    PsiCons,
    PsiNil,
}

impl UDeriv {
    pub fn tag(&self) -> RuleTag {
        match self {
            UDeriv::Init(_) => RuleTag::Init,
            UDeriv::BotL => RuleTag::BotL,
            UDeriv::OrR1(_) => RuleTag::OrR1,
            UDeriv::OrR2(_) => RuleTag::OrR2,
            UDeriv::OrL { .. } => RuleTag::OrL,
            UDeriv::TopR => RuleTag::TopR,
            UDeriv::AndR(..) => RuleTag::AndR,
            UDeriv::AndL1 { .. } => RuleTag::AndL1,
            UDeriv::AndL2 { .. } => RuleTag::AndL2,
            UDeriv::ImpR(_) => RuleTag::ImpR,
            UDeriv::ImpL { .. } => RuleTag::ImpL,
            UDeriv::PsiCons(_) => RuleTag::PsiCons,
            UDeriv::PsiNil(_) => RuleTag::PsiNil,
        }
    }

    pub fn premises(&self) -> Vec<&UDeriv> {
        match self {
            UDeriv::Init(_) | UDeriv::BotL | UDeriv::TopR => Vec::new(),
            UDeriv::OrR1(d) | UDeriv::OrR2(d) | UDeriv::ImpR(d) | UDeriv::PsiCons(d) | UDeriv::PsiNil(d) => {
                alloc::vec![&**d]
            }
            UDeriv::AndL1 { premise, .. } | UDeriv::AndL2 { premise, .. } => alloc::vec![&**premise],
            UDeriv::OrL { left, right, .. } => alloc::vec![&**left, &**right],
            UDeriv::AndR(a, b) => alloc::vec![&**a, &**b],
            UDeriv::ImpL { arg, body, .. } => alloc::vec![&**arg, &**body],
        }
    }

    /// Rule tags with multiplicities.
    pub fn skeleton(&self) -> BTreeMap<RuleTag, usize> {
        let mut out = BTreeMap::new();
        let mut stack = alloc::vec![self];
        while let Some(d) = stack.pop() {
            *out.entry(d.tag()).or_insert(0) += 1;
            stack.extend(d.premises());
        }
        out
    }

    pub fn size(&self) -> usize {
        1 + self.premises().iter().map(|d| d.size()).sum::<usize>()
    }

    /// Strip one `PsiNil`, if present.
    pub fn unwrap_nil(self) -> UDeriv {
        match self {
            UDeriv::PsiNil(d) => *d,
            d => d,
        }
    }
}

/// The first node of a derivation that does not match its sequent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleMismatch {
    pub path: Vec<&'static str>,
    pub sequent: String,
    pub expected: String,
}

impl fmt::Display for RuleMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at /{}: sequent {} needs {}", self.path.join("/"), self.sequent, self.expected)
    }
}

struct UChecker {
    path: Vec<&'static str>,
}

impl UChecker {
    fn fail(&self, s: &USequent, expected: impl Into<String>) -> RuleMismatch {
        RuleMismatch { path: self.path.clone(), sequent: alloc::format!("{s}"), expected: expected.into() }
    }

    fn sub(&mut self, label: &'static str, s: &USequent, d: &UDeriv) -> Result<(), RuleMismatch> {
        self.path.push(label);
        self.check(s, d)?;
        self.path.pop();
        Ok(())
    }

    fn check(&mut self, s: &USequent, d: &UDeriv) -> Result<(), RuleMismatch> {
        match d {
            UDeriv::PsiCons(d1) => {
                let Some((p, rest)) = s.psi.split_first() else {
                    return Err(self.fail(s, "a nonempty ordered context for cons"));
                };
                let next = USequent { gamma: s.gamma.with(p.clone()), psi: rest.to_vec(), goal: s.goal.clone() };
                return self.sub("cons", &next, d1);
            }
            UDeriv::PsiNil(d1) => {
                if !s.psi.is_empty() {
                    return Err(self.fail(s, "an empty ordered context for nil"));
                }
                return self.sub("nil", s, d1);
            }
            _ if !s.psi.is_empty() => return Err(self.fail(s, "cons before any G3 rule")),
            _ => {}
        }
        let goal = |g: UProp| USequent { gamma: s.gamma.clone(), psi: Vec::new(), goal: g };
        let hyp = |h: UProp| USequent { gamma: s.gamma.with(h), psi: Vec::new(), goal: s.goal.clone() };
        let in_ctx = |p: &UProp| s.gamma.contains(p);
        match d {
            UDeriv::Init(p) => {
                let atom = UProp::Atom(p.clone());
                if s.goal != atom || !in_ctx(&atom) {
                    return Err(self.fail(s, alloc::format!("goal {p} with {p} among the hypotheses for init")));
                }
            }
            UDeriv::BotL => {
                if !in_ctx(&UProp::Bot) {
                    return Err(self.fail(s, "false among the hypotheses"));
                }
            }
            UDeriv::OrR1(d1) | UDeriv::OrR2(d1) => {
                let UProp::Or(a, b) = &s.goal else {
                    return Err(self.fail(s, "a disjunctive goal"));
                };
                let (label, side) = if matches!(d, UDeriv::OrR1(_)) { ("orr1", a) } else { ("orr2", b) };
                self.sub(label, &goal((**side).clone()), d1)?;
            }
            UDeriv::OrL { principal, left, right } => {
                let UProp::Or(a, b) = principal else {
                    return Err(self.fail(s, "a disjunction as principal formula"));
                };
                if !in_ctx(principal) {
                    return Err(self.fail(s, alloc::format!("{principal} among the hypotheses")));
                }
                self.sub("orl.0", &hyp((**a).clone()), left)?;
                self.sub("orl.1", &hyp((**b).clone()), right)?;
            }
            UDeriv::TopR => {
                if s.goal != UProp::Top {
                    return Err(self.fail(s, "goal true"));
                }
            }
            UDeriv::AndR(d1, d2) => {
                let UProp::And(a, b) = &s.goal else {
                    return Err(self.fail(s, "a conjunctive goal"));
                };
                self.sub("andr.0", &goal((**a).clone()), d1)?;
                self.sub("andr.1", &goal((**b).clone()), d2)?;
            }
            UDeriv::AndL1 { principal, premise } | UDeriv::AndL2 { principal, premise } => {
                let UProp::And(a, b) = principal else {
                    return Err(self.fail(s, "a conjunction as principal formula"));
                };
                if !in_ctx(principal) {
                    return Err(self.fail(s, alloc::format!("{principal} among the hypotheses")));
                }
                let (label, side) = if matches!(d, UDeriv::AndL1 { .. }) { ("andl1", a) } else { ("andl2", b) };
                self.sub(label, &hyp((**side).clone()), premise)?;
            }
            UDeriv::ImpR(d1) => {
                let UProp::Imp(a, b) = &s.goal else {
                    return Err(self.fail(s, "an implicational goal"));
                };
                let next = USequent { gamma: s.gamma.with((**a).clone()), psi: Vec::new(), goal: (**b).clone() };
                self.sub("impr", &next, d1)?;
            }
            UDeriv::ImpL { principal, arg, body } => {
                let UProp::Imp(a, b) = principal else {
                    return Err(self.fail(s, "an implication as principal formula"));
                };
                if !in_ctx(principal) {
                    return Err(self.fail(s, alloc::format!("{principal} among the hypotheses")));
                }
                self.sub("impl.0", &goal((**a).clone()), arg)?;
                self.sub("impl.1", &hyp((**b).clone()), body)?;
            }
            UDeriv::PsiCons(_) | UDeriv::PsiNil(_) => unreachable!(),
        }
        Ok(())
    }
}

/// Check `d` against `s`.
pub fn check_uderiv(s: &USequent, d: &UDeriv) -> Result<(), RuleMismatch> {
    UChecker { path: Vec::new() }.check(s, d)
}

/// Weakening. Derivations carry no contexts, so the tree is unchanged; the
/// result checks at any larger context because rules only test membership.
pub fn weaken_u(d: &UDeriv, _extra: &UProp) -> UDeriv {
    d.clone()
}

/// The three left rules that are admissible on Ψ sequents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsiKind {
    And(UProp, UProp),
    Bot,
    Or(UProp, UProp),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PremiseMismatch(pub String);

impl fmt::Display for PremiseMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "premise mismatch: {}", self.0)
    }
}

/// From `Γ,P1,P2;Ψ ⊢ Q` derive `Γ,P1∧P2;Ψ ⊢ Q`; derive `Γ,⊥;Ψ ⊢ Q`; from
/// `Γ,P1;Ψ ⊢ Q` and `Γ,P2;Ψ ⊢ Q` derive `Γ,P1∨P2;Ψ ⊢ Q`. The construction
/// walks down Ψ with cons and applies the G3 rule at the nil leaf.
pub fn psi_left_lemma(kind: &PsiKind, psi: &[UProp], premises: &[UDeriv]) -> Result<UDeriv, PremiseMismatch> {
    let want = match kind {
        PsiKind::Bot => 0,
        PsiKind::And(..) => 1,
        PsiKind::Or(..) => 2,
    };
    if premises.len() != want {
        return Err(PremiseMismatch(alloc::format!("expected {want} premises, got {}", premises.len())));
    }
    if !psi.is_empty() {
        let mut inner = Vec::with_capacity(premises.len());
        for d in premises {
            match d {
                UDeriv::PsiCons(d1) => inner.push((**d1).clone()),
                _ => return Err(PremiseMismatch("premise does not start with cons".into())),
            }
        }
        return Ok(UDeriv::PsiCons(Box::new(psi_left_lemma(kind, &psi[1..], &inner)?)));
    }
    let plain = |d: &UDeriv| match d {
        UDeriv::PsiNil(d1) => Ok((**d1).clone()),
        UDeriv::PsiCons(_) => Err(PremiseMismatch("premise has cons but the ordered context is empty".into())),
        d => Ok(d.clone()),
    };
    let node = match kind {
        PsiKind::Bot => UDeriv::BotL,
        PsiKind::And(a, b) => {
            let principal = UProp::and(a.clone(), b.clone());
            let d = weaken_u(&plain(&premises[0])?, &principal);
            let inner = UDeriv::AndL1 { principal: principal.clone(), premise: Box::new(d) };
            UDeriv::AndL2 { principal, premise: Box::new(inner) }
        }
        PsiKind::Or(a, b) => {
            let principal = UProp::or(a.clone(), b.clone());
            let left = weaken_u(&plain(&premises[0])?, &principal);
            let right = weaken_u(&plain(&premises[1])?, &principal);
            UDeriv::OrL { principal, left: Box::new(left), right: Box::new(right) }
        }
    };
    Ok(UDeriv::PsiNil(Box::new(node)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_uprop;

    fn u(s: &str) -> UProp {
        parse_uprop(s).unwrap()
    }

    fn ctx(ps: &[&str]) -> Multiset {
        ps.iter().map(|s| u(s)).collect()
    }

    /// The textbook derivation of (p ∧ q) ⊃ (r ∧ s) ⊃ (p ∧ r).
    pub(crate) fn p0_derivation() -> UDeriv {
        let pq = u("p /\\ q");
        let rs = u("r /\\ s");
        UDeriv::ImpR(Box::new(UDeriv::ImpR(Box::new(UDeriv::AndR(
            Box::new(UDeriv::AndL1 { principal: pq, premise: Box::new(UDeriv::Init("p".into())) }),
            Box::new(UDeriv::AndL1 { principal: rs, premise: Box::new(UDeriv::Init("r".into())) }),
        )))))
    }

    #[test]
    fn p0_checks() {
        let s = USequent::plain(Multiset::new(), u("(p /\\ q) -> (r /\\ s) -> (p /\\ r)"));
        check_uderiv(&s, &p0_derivation()).unwrap();
        let w = weaken_u(&p0_derivation(), &u("r"));
        check_uderiv(&USequent { gamma: ctx(&["r"]), ..s }, &w).unwrap();
        assert_eq!(w.skeleton(), p0_derivation().skeleton());
    }

    #[test]
    fn init_needs_membership() {
        check_uderiv(&USequent::plain(ctx(&["p", "q"]), u("p")), &UDeriv::Init("p".into())).unwrap();
        assert!(check_uderiv(&USequent::plain(ctx(&["q"]), u("p")), &UDeriv::Init("p".into())).is_err());
    }

    #[test]
    fn wrong_goal_shape() {
        let d = UDeriv::OrR1(Box::new(UDeriv::Init("p".into())));
        check_uderiv(&USequent::plain(ctx(&["p"]), u("p \\/ false")), &d).unwrap();
        let e = check_uderiv(&USequent::plain(ctx(&["p"]), u("p")), &d).unwrap_err();
        assert!(e.path.is_empty());
    }

    #[test]
    fn and_lemma_at_nil() {
        let d = UDeriv::Init("p".into());
        let out = psi_left_lemma(&PsiKind::And(u("p"), u("q")), &[], &[d]).unwrap();
        let UDeriv::PsiNil(inner) = &out else { panic!() };
        assert_eq!(inner.tag(), RuleTag::AndL2);
        assert_eq!(inner.premises()[0].tag(), RuleTag::AndL1);
        let s = USequent::plain(ctx(&["p /\\ q"]), u("p"));
        check_uderiv(&s, &out).unwrap();
    }

    #[test]
    fn bot_lemma_under_cons() {
        let out = psi_left_lemma(&PsiKind::Bot, &[u("r")], &[]).unwrap();
        assert_eq!(out, UDeriv::PsiCons(Box::new(UDeriv::PsiNil(Box::new(UDeriv::BotL)))));
        let s = USequent { gamma: ctx(&["false"]), psi: alloc::vec![u("r")], goal: u("q") };
        check_uderiv(&s, &out).unwrap();
    }

    #[test]
    fn and_lemma_under_cons() {
        // Γ, p, q; s ⊢ p  ⟶  Γ, p∧q; s ⊢ p
        let d = UDeriv::PsiCons(Box::new(UDeriv::PsiNil(Box::new(UDeriv::Init("p".into())))));
        check_uderiv(&USequent { gamma: ctx(&["p", "q"]), psi: alloc::vec![u("s")], goal: u("p") }, &d).unwrap();
        let out = psi_left_lemma(&PsiKind::And(u("p"), u("q")), &[u("s")], &[d]).unwrap();
        let s = USequent { gamma: ctx(&["p /\\ q"]), psi: alloc::vec![u("s")], goal: u("p") };
        check_uderiv(&s, &out).unwrap();
        assert_eq!(out.tag(), RuleTag::PsiCons);
    }

    #[test]
    fn or_lemma() {
        let d1 = UDeriv::OrR2(Box::new(UDeriv::Init("p".into())));
        let d2 = UDeriv::OrR1(Box::new(UDeriv::Init("q".into())));
        let out = psi_left_lemma(&PsiKind::Or(u("p"), u("q")), &[], &[d1, d2]).unwrap();
        check_uderiv(&USequent::plain(ctx(&["p \\/ q"]), u("q \\/ p")), &out).unwrap();
        assert!(psi_left_lemma(&PsiKind::Or(u("p"), u("q")), &[], &[UDeriv::TopR]).is_err());
    }
}
