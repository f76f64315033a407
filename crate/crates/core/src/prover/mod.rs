//! Focused backward proof search, derivation counting and a Kripke
//! countermodel search.

mod kripke;
mod search;

pub use kripke::{kripke_refute, KripkeModel};
pub use search::{Chooser, InOrder, Stats};

use crate::kernel::{check, Ctx, Expr, Sequent, Spine, Term, Value};
use crate::syntax::{is_suspension_normal, Neg, Pos, Succedent};
use alloc::string::String;
use core::fmt;
use search::{Search, Tally};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProveError {
    NotSuspensionNormal(String),
    /// The search produced a term the checker rejects.
    Unsound(String),
}

impl fmt::Display for ProveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProveError::NotSuspensionNormal(s) => write!(f, "not suspension-normal: {s}"),
            ProveError::Unsound(s) => write!(f, "search produced an ill-typed term: {s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Proved(T),
    NotProvable,
    /// The budget ran out before the search finished.
    Exhausted,
}

impl<T> Outcome<T> {
    pub fn proved(self) -> Option<T> {
        match self {
            Outcome::Proved(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, Outcome::Proved(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Count {
    pub count: u128,
    /// No branch was pruned, no count saturated and the budget held.
    pub exact: bool,
}

pub struct Prover<'c> {
    pub budget: Option<usize>,
    chooser: Option<&'c mut dyn Chooser>,
    stats: Stats,
}

impl Default for Prover<'_> {
    fn default() -> Self {
        Prover::new()
    }
}

impl<'c> Prover<'c> {
    pub fn new() -> Self {
        Prover { budget: None, chooser: None, stats: Stats::default() }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn with_chooser(mut self, c: &'c mut dyn Chooser) -> Self {
        self.chooser = Some(c);
        self
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    fn run<O>(&mut self, ctx: &Ctx, f: impl FnOnce(&mut Search<'_>) -> O) -> (O, bool) {
        let mut in_order = InOrder;
        let chooser: &mut dyn Chooser = match &mut self.chooser {
            Some(c) => *c,
            None => &mut in_order,
        };
        let mut s = Search::new(ctx.clone(), self.budget, chooser);
        let out = f(&mut s);
        self.stats = s.stats;
        (out, s.exhausted)
    }

    fn finish(&self, seq: Sequent, found: Option<Expr>, exhausted: bool) -> Result<Outcome<Expr>, ProveError> {
        match found {
            Some(e) => match check(&seq, &e) {
                Ok(()) => Ok(Outcome::Proved(e)),
                Err(err) => Err(ProveError::Unsound(alloc::format!("{e}: {err}"))),
            },
            None if exhausted => Ok(Outcome::Exhausted),
            None => Ok(Outcome::NotProvable),
        }
    }

    fn normal(ctx: &Ctx, u: &Succedent) -> Result<(), ProveError> {
        if is_suspension_normal(ctx, u) {
            Ok(())
        } else {
            Err(ProveError::NotSuspensionNormal(alloc::format!("{ctx} ⊢ {u}")))
        }
    }

    /// A term for `Γ; · ⊢ U`.
    pub fn prove(&mut self, ctx: &Ctx, u: &Succedent) -> Result<Outcome<Term>, ProveError> {
        self.prove_term(ctx, &[], u)
    }

    /// A term for `Γ; Ω ⊢ U`.
    pub fn prove_term(&mut self, ctx: &Ctx, omega: &[Pos], u: &Succedent) -> Result<Outcome<Term>, ProveError> {
        Self::normal(ctx, u)?;
        let (found, ex) = self.run(ctx, |s| s.term::<Option<Expr>>(omega, u));
        let out = self.finish(Sequent::term(ctx.clone(), omega.into(), u.clone()), found, ex)?;
        Ok(map_outcome(out, |e| match e {
            Expr::Term(t) => t,
            _ => unreachable!(),
        }))
    }

    /// A value for `Γ ⊢ [A+]`.
    pub fn prove_value(&mut self, ctx: &Ctx, a: &Pos) -> Result<Outcome<Value>, ProveError> {
        Self::normal(ctx, &Succedent::RFoc(a.clone()))?;
        let (found, ex) = self.run(ctx, |s| s.value::<Option<Expr>>(a));
        let out = self.finish(Sequent::value(ctx.clone(), a.clone()), found, ex)?;
        Ok(map_outcome(out, |e| match e {
            Expr::Value(v) => v,
            _ => unreachable!(),
        }))
    }

    /// A spine for `Γ; [A-] ⊢ U`.
    pub fn prove_spine(&mut self, ctx: &Ctx, a: &Neg, u: &Succedent) -> Result<Outcome<Spine>, ProveError> {
        Self::normal(ctx, u)?;
        let (found, ex) = self.run(ctx, |s| s.spine::<Option<Expr>>(a, u));
        let out = self.finish(Sequent::spine(ctx.clone(), a.clone(), u.clone()), found, ex)?;
        Ok(map_outcome(out, |e| match e {
            Expr::Spine(s) => s,
            _ => unreachable!(),
        }))
    }

    /// The number of focused derivations of `Γ; · ⊢ U`, or a lower bound.
    pub fn count(&mut self, ctx: &Ctx, u: &Succedent) -> Result<Count, ProveError> {
        Self::normal(ctx, u)?;
        let (Tally(n), ex) = self.run(ctx, |s| s.term::<Tally>(&[], u));
        let exact = !ex && self.stats.prunes == 0 && n != u128::MAX;
        Ok(Count { count: n, exact })
    }
}

fn map_outcome<A, B>(o: Outcome<A>, f: impl FnOnce(A) -> B) -> Outcome<B> {
    match o {
        Outcome::Proved(a) => Outcome::Proved(f(a)),
        Outcome::NotProvable => Outcome::NotProvable,
        Outcome::Exhausted => Outcome::Exhausted,
    }
}

pub fn prove(ctx: &Ctx, u: &Succedent) -> Result<Outcome<Term>, ProveError> {
    Prover::new().prove(ctx, u)
}

pub fn count_derivations(ctx: &Ctx, u: &Succedent, budget: Option<usize>) -> Result<Count, ProveError> {
    let mut p = Prover::new();
    p.budget = budget;
    p.count(ctx, u)
}

/// Whether `P` is provable under polarization strategy `s`.
pub fn provable(p: &crate::syntax::UProp, s: crate::syntax::Strategy) -> bool {
    let u = Succedent::INeg(crate::syntax::polarize(p, s));
    matches!(prove(&Ctx::new(), &u), Ok(Outcome::Proved(_)))
}
