//! The two focal substitutions and capture-avoiding renaming.

use super::term::{free_vars_spine, free_vars_value, Expr, Fresh, Name, Spine, Term, Value};
use alloc::boxed::Box;
use alloc::collections::BTreeSet;

/// Replace free occurrences of `old` by `new`, which must not occur in the input.
pub(crate) struct Rename<'a> {
    pub old: &'a str,
    pub new: &'a str,
}

impl Rename<'_> {
    fn name(&self, x: &str) -> Name {
        if x == self.old {
            self.new.into()
        } else {
            x.into()
        }
    }

    pub fn value(&self, v: &Value) -> Value {
        match v {
            Value::Var(z) => Value::Var(self.name(z)),
            Value::Thunk(n) => Value::thunk(self.term(n)),
            Value::Inl(v, b) => Value::inl(self.value(v), b.clone()),
            Value::Inr(v, a) => Value::inr(self.value(v), a.clone()),
            Value::UnitP => Value::UnitP,
            Value::PairP(a, b) => Value::pair(self.value(a), self.value(b)),
        }
    }

    pub fn term(&self, n: &Term) -> Term {
        match n {
            Term::RFoc(v) => Term::RFoc(self.value(v)),
            Term::LFoc(x, s) => Term::LFoc(self.name(x), self.spine(s)),
            Term::SuspendP(z, _, _) | Term::LetDown(z, _, _) if z == self.old => n.clone(),
            Term::SuspendP(z, a, n) => Term::SuspendP(z.clone(), a.clone(), Box::new(self.term(n))),
            Term::LetDown(x, a, n) => Term::LetDown(x.clone(), a.clone(), Box::new(self.term(n))),
            Term::Abort => Term::Abort,
            Term::Case(a, b) => Term::case(self.term(a), self.term(b)),
            Term::LetUnit(n) => Term::let_unit(self.term(n)),
            Term::Split(n) => Term::split(self.term(n)),
            Term::SuspendN(n) => Term::suspend_n(self.term(n)),
            Term::Ret(n) => Term::ret(self.term(n)),
            Term::Lam(n) => Term::lam(self.term(n)),
            Term::UnitN => Term::UnitN,
            Term::PairN(a, b) => Term::pair(self.term(a), self.term(b)),
        }
    }

    pub fn spine(&self, s: &Spine) -> Spine {
        match s {
            Spine::Nil => Spine::Nil,
            Spine::Match(n) => Spine::match_(self.term(n)),
            Spine::App(v, s) => Spine::app(self.value(v), self.spine(s)),
            Spine::Pi1(s, b) => Spine::pi1(self.spine(s), b.clone()),
            Spine::Pi2(s, a) => Spine::pi2(self.spine(s), a.clone()),
        }
    }
}

/// Move the binder `y` of `body` out of the way of `avoid`, returning the
/// binder to use and the correspondingly renamed body.
pub(crate) fn freshen(y: &str, body: &Term, avoid: &BTreeSet<Name>, fresh: &mut Fresh) -> (Name, Term) {
    if avoid.contains(y) {
        let y2 = fresh.name(y);
        let body = Rename { old: y, new: &y2 }.term(body);
        (y2, body)
    } else {
        (y.into(), body.clone())
    }
}

/// `[V/z]E`.
struct PosSubst<'a> {
    v: &'a Value,
    z: &'a str,
    fv: BTreeSet<Name>,
    fresh: &'a mut Fresh,
}

impl PosSubst<'_> {
    fn value(&mut self, e: &Value) -> Value {
        match e {
            Value::Var(y) if y == self.z => self.v.clone(),
            Value::Var(_) | Value::UnitP => e.clone(),
            Value::Thunk(n) => Value::thunk(self.term(n)),
            Value::Inl(v, b) => Value::inl(self.value(v), b.clone()),
            Value::Inr(v, a) => Value::inr(self.value(v), a.clone()),
            Value::PairP(a, b) => Value::pair(self.value(a), self.value(b)),
        }
    }

    fn term(&mut self, e: &Term) -> Term {
        match e {
            Term::RFoc(v) => Term::RFoc(self.value(v)),
            Term::LFoc(x, s) => Term::LFoc(x.clone(), self.spine(s)),
            Term::SuspendP(y, _, _) | Term::LetDown(y, _, _) if y == self.z => e.clone(),
            Term::SuspendP(y, a, n) => {
                let (y, n) = freshen(y, n, &self.fv, self.fresh);
                Term::SuspendP(y, a.clone(), Box::new(self.term(&n)))
            }
            Term::LetDown(y, a, n) => {
                let (y, n) = freshen(y, n, &self.fv, self.fresh);
                Term::LetDown(y, a.clone(), Box::new(self.term(&n)))
            }
            Term::Abort => Term::Abort,
            Term::Case(a, b) => Term::case(self.term(a), self.term(b)),
            Term::LetUnit(n) => Term::let_unit(self.term(n)),
            Term::Split(n) => Term::split(self.term(n)),
            Term::SuspendN(n) => Term::suspend_n(self.term(n)),
            Term::Ret(n) => Term::ret(self.term(n)),
            Term::Lam(n) => Term::lam(self.term(n)),
            Term::UnitN => Term::UnitN,
            Term::PairN(a, b) => Term::pair(self.term(a), self.term(b)),
        }
    }

    fn spine(&mut self, e: &Spine) -> Spine {
        match e {
            Spine::Nil => Spine::Nil,
            Spine::Match(n) => Spine::match_(self.term(n)),
            Spine::App(v, s) => Spine::app(self.value(v), self.spine(s)),
            Spine::Pi1(s, b) => Spine::pi1(self.spine(s), b.clone()),
            Spine::Pi2(s, a) => Spine::pi2(self.spine(s), a.clone()),
        }
    }
}

/// `[V/z]E`: discharge the suspension `z : <A+>` with a value of `[A+]`.
pub fn subst_pos(v: &Value, z: &str, e: &Expr, fresh: &mut Fresh) -> Expr {
    let mut s = PosSubst { v, z, fv: free_vars_value(v), fresh };
    match e {
        Expr::Value(e) => Expr::Value(s.value(e)),
        Expr::Term(e) => Expr::Term(s.term(e)),
        Expr::Spine(e) => Expr::Spine(s.spine(e)),
    }
}

pub fn subst_pos_term(v: &Value, z: &str, e: &Term, fresh: &mut Fresh) -> Term {
    PosSubst { v, z, fv: free_vars_value(v), fresh }.term(e)
}

pub fn subst_pos_value(v: &Value, z: &str, e: &Value, fresh: &mut Fresh) -> Value {
    PosSubst { v, z, fv: free_vars_value(v), fresh }.value(e)
}

/// `[E]S`.
struct NegSubst<'a> {
    s: &'a Spine,
    fv: BTreeSet<Name>,
    fresh: &'a mut Fresh,
}

impl NegSubst<'_> {
    // Only the constructors that can conclude with the suspended succedent
    // are traversed; values and right-inversion terms live at other
    // succedents and are left alone.
    fn term(&mut self, e: &Term) -> Term {
        match e {
            Term::LFoc(x, sp) => Term::LFoc(x.clone(), self.spine(sp)),
            Term::SuspendP(y, a, n) => {
                let (y, n) = freshen(y, n, &self.fv, self.fresh);
                Term::SuspendP(y, a.clone(), Box::new(self.term(&n)))
            }
            Term::LetDown(y, a, n) => {
                let (y, n) = freshen(y, n, &self.fv, self.fresh);
                Term::LetDown(y, a.clone(), Box::new(self.term(&n)))
            }
            Term::Abort => Term::Abort,
            Term::Case(a, b) => Term::case(self.term(a), self.term(b)),
            Term::LetUnit(n) => Term::let_unit(self.term(n)),
            Term::Split(n) => Term::split(self.term(n)),
            Term::RFoc(_)
            | Term::SuspendN(_)
            | Term::Ret(_)
            | Term::Lam(_)
            | Term::UnitN
            | Term::PairN(..) => e.clone(),
        }
    }

    fn spine(&mut self, e: &Spine) -> Spine {
        match e {
            Spine::Nil => self.s.clone(),
            Spine::Match(n) => Spine::match_(self.term(n)),
            Spine::App(v, sp) => Spine::app(v.clone(), self.spine(sp)),
            Spine::Pi1(sp, b) => Spine::pi1(self.spine(sp), b.clone()),
            Spine::Pi2(sp, a) => Spine::pi2(self.spine(sp), a.clone()),
        }
    }
}

/// `[E]S`: replace the identity leaves of the suspended succedent of `E` by `S`.
pub fn subst_neg(e: &Term, s: &Spine, fresh: &mut Fresh) -> Term {
    NegSubst { s, fv: free_vars_spine(s), fresh }.term(e)
}

/// `[E]S` for a spine `E` whose own succedent is the suspension.
pub fn subst_neg_spine(e: &Spine, s: &Spine, fresh: &mut Fresh) -> Spine {
    NegSubst { s, fv: free_vars_spine(s), fresh }.spine(e)
}

pub fn rename_term(n: &Term, old: &str, new: &str) -> Term {
    Rename { old, new }.term(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Neg, Pos};

    #[test]
    fn positive_hits_and_misses() {
        let mut f = Fresh::new();
        let v = Value::UnitP;
        assert_eq!(subst_pos_value(&v, "z", &Value::var("z"), &mut f), Value::UnitP);
        assert_eq!(subst_pos_value(&v, "z", &Value::var("y"), &mut f), Value::var("y"));
        assert_eq!(subst_pos_term(&v, "z", &Term::RFoc(Value::var("z")), &mut f), Term::RFoc(Value::UnitP));
    }

    #[test]
    fn positive_respects_shadowing_and_capture() {
        let mut f = Fresh::new();
        let p = Pos::atom("p");
        let shadow = Term::suspend_p("z", p.clone(), Term::RFoc(Value::var("z")));
        assert_eq!(subst_pos_term(&Value::UnitP, "z", &shadow, &mut f), shadow);
        // [y/z](η⁺y. rft ⟨y, z⟩) must not capture y.
        let body = Term::suspend_p("y", p.clone(), Term::RFoc(Value::pair(Value::var("y"), Value::var("z"))));
        let out = subst_pos_term(&Value::var("y"), "z", &body, &mut f);
        let Term::SuspendP(y2, _, inner) = &out else { panic!() };
        assert_ne!(y2, "y");
        assert_eq!(**inner, Term::RFoc(Value::pair(Value::var(y2), Value::var("y"))));
    }

    #[test]
    fn negative_replaces_identity_leaves() {
        let mut f = Fresh::new();
        let s = Spine::pi1(Spine::Nil, Neg::atom("q"));
        assert_eq!(subst_neg(&Term::lfoc("x", Spine::Nil), &s, &mut f), Term::lfoc("x", s.clone()));
        let e = Term::case(Term::lfoc("x", Spine::Nil), Term::lfoc("y", Spine::Nil));
        assert_eq!(
            subst_neg(&e, &s, &mut f),
            Term::case(Term::lfoc("x", s.clone()), Term::lfoc("y", s.clone()))
        );
        let e = Term::lfoc("x", Spine::match_(Term::lfoc("y", Spine::Nil)));
        assert_eq!(subst_neg(&e, &s, &mut f), Term::lfoc("x", Spine::match_(Term::lfoc("y", s.clone()))));
    }

    #[test]
    fn negative_leaves_values_alone() {
        let mut f = Fresh::new();
        let inner = Value::thunk(Term::suspend_n(Term::lfoc("y", Spine::Nil)));
        let e = Term::lfoc("x", Spine::app(inner.clone(), Spine::Nil));
        let s = Spine::Match(Box::new(Term::Abort));
        assert_eq!(subst_neg(&e, &s, &mut f), Term::lfoc("x", Spine::app(inner, s)));
    }
}
