//! Identity expansion and the identity principles derived from it.

use crate::kernel::{subst_neg, subst_pos_term, Expr, Fresh, Spine, Term, Value};
use crate::syntax::{Neg, Pos};
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Prop {
    Pos(Pos),
    Neg(Neg),
}

impl Prop {
    fn children(&self) -> Vec<Prop> {
        match self {
            Prop::Pos(Pos::Down(a)) => alloc::vec![Prop::Neg((**a).clone())],
            Prop::Pos(Pos::Or(a, b) | Pos::And(a, b)) => alloc::vec![Prop::Pos((**a).clone()), Prop::Pos((**b).clone())],
            Prop::Neg(Neg::Up(a)) => alloc::vec![Prop::Pos((**a).clone())],
            Prop::Neg(Neg::Imp(a, b)) => alloc::vec![Prop::Pos((**a).clone()), Prop::Neg((**b).clone())],
            Prop::Neg(Neg::And(a, b)) => alloc::vec![Prop::Neg((**a).clone()), Prop::Neg((**b).clone())],
            _ => Vec::new(),
        }
    }
}

/// Counts expansion calls and those whose proposition is not an immediate
/// subformula of the caller's.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    stack: Vec<Prop>,
    pub calls: usize,
    pub violations: usize,
}

impl Trace {
    fn enter(&mut self, p: Prop) {
        self.calls += 1;
        if let Some(top) = self.stack.last() {
            if !top.children().contains(&p) {
                self.violations += 1;
            }
        }
        self.stack.push(p);
    }
}

pub struct Expander<'a> {
    fresh: &'a mut Fresh,
    trace: Option<Trace>,
}

impl<'a> Expander<'a> {
    pub fn new(fresh: &'a mut Fresh) -> Self {
        Expander { fresh, trace: None }
    }

    pub fn traced(fresh: &'a mut Fresh) -> Self {
        Expander { fresh, trace: Some(Trace::default()) }
    }

    pub fn trace(&self) -> Option<&Trace> {
        self.trace.as_ref()
    }

    fn enter(&mut self, p: impl FnOnce() -> Prop) {
        if let Some(t) = &mut self.trace {
            t.enter(p());
        }
    }

    fn leave(&mut self) {
        if let Some(t) = &mut self.trace {
            t.stack.pop();
        }
    }

    /// `η^{A+}(z.N)`: from `Γ, z:<A+>; Ω ⊢ N : U` to `Γ; A+, Ω ⊢ U`.
    pub fn expand_pos(&mut self, a: &Pos, z: &str, n: &Term) -> Term {
        self.fresh.reserve(z);
        self.fresh.reserve_expr(&Expr::Term(n.clone()));
        self.pos(a, z, n)
    }

    /// `η^{A-}(N)`: from `Γ; · ⊢ N : <A->` to `Γ; · ⊢ A-`.
    pub fn expand_neg(&mut self, a: &Neg, n: &Term) -> Term {
        self.fresh.reserve_expr(&Expr::Term(n.clone()));
        self.neg(a, n)
    }

    fn pos(&mut self, a: &Pos, z: &str, n: &Term) -> Term {
        self.enter(|| Prop::Pos(a.clone()));
        let out = match a {
            Pos::Atom(_) => Term::suspend_p(z, a.clone(), n.clone()),
            Pos::Down(b) => {
                let x = self.fresh.name("x");
                let thunk = Value::thunk(self.neg(b, &Term::lfoc(&x, Spine::Nil)));
                Term::let_down(&x, (**b).clone(), subst_pos_term(&thunk, z, n, self.fresh))
            }
            Pos::Zero => Term::Abort,
            Pos::Or(a1, a2) => {
                let z1 = self.fresh.name("z");
                let n1 = subst_pos_term(&Value::inl(Value::var(&z1), (**a2).clone()), z, n, self.fresh);
                let left = self.pos(a1, &z1, &n1);
                let z2 = self.fresh.name("z");
                let n2 = subst_pos_term(&Value::inr(Value::var(&z2), (**a1).clone()), z, n, self.fresh);
                let right = self.pos(a2, &z2, &n2);
                Term::case(left, right)
            }
            Pos::One => Term::let_unit(subst_pos_term(&Value::UnitP, z, n, self.fresh)),
            Pos::And(a1, a2) => {
                let z1 = self.fresh.name("z");
                let z2 = self.fresh.name("z");
                let inner = subst_pos_term(&Value::pair(Value::var(&z1), Value::var(&z2)), z, n, self.fresh);
                let inner = self.pos(a2, &z2, &inner);
                Term::split(self.pos(a1, &z1, &inner))
            }
        };
        self.leave();
        out
    }

    fn neg(&mut self, a: &Neg, n: &Term) -> Term {
        self.enter(|| Prop::Neg(a.clone()));
        let out = match a {
            Neg::Atom(_) => Term::suspend_n(n.clone()),
            Neg::Up(b) => {
                let z = self.fresh.name("z");
                let id = self.pos(b, &z, &Term::RFoc(Value::var(&z)));
                Term::ret(subst_neg(n, &Spine::match_(id), self.fresh))
            }
            Neg::Imp(b, c) => {
                let z = self.fresh.name("z");
                let applied = subst_neg(n, &Spine::app(Value::var(&z), Spine::Nil), self.fresh);
                let body = self.neg(c, &applied);
                Term::lam(self.pos(b, &z, &body))
            }
            Neg::Top => Term::UnitN,
            Neg::And(a1, a2) => {
                let n1 = subst_neg(n, &Spine::pi1(Spine::Nil, (**a2).clone()), self.fresh);
                let n2 = subst_neg(n, &Spine::pi2(Spine::Nil, (**a1).clone()), self.fresh);
                Term::pair(self.neg(a1, &n1), self.neg(a2, &n2))
            }
        };
        self.leave();
        out
    }
}

pub fn expand_pos(a: &Pos, z: &str, n: &Term, fresh: &mut Fresh) -> Term {
    Expander::new(fresh).expand_pos(a, z, n)
}

pub fn expand_neg(a: &Neg, n: &Term, fresh: &mut Fresh) -> Term {
    Expander::new(fresh).expand_neg(a, n)
}

/// `Γ; A+ ⊢ η^{A+}(z. rft z) : A+`.
pub fn id_pos(a: &Pos, fresh: &mut Fresh) -> Term {
    let z = fresh.name("z");
    expand_pos(a, &z, &Term::RFoc(Value::var(&z)), fresh)
}

/// `Γ, x:A-; · ⊢ η^{A-}(x·nil) : A-`.
pub fn id_neg(a: &Neg, x: &str, fresh: &mut Fresh) -> Term {
    fresh.reserve(x);
    expand_neg(a, &Term::lfoc(x, Spine::Nil), fresh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{alpha_eq, check_term, Ctx, Hyp};
    use crate::syntax::{Succedent, parse_neg, parse_pos};

    #[test]
    fn base_cases() {
        let mut f = Fresh::new();
        let n = Term::RFoc(Value::var("z"));
        let p = Pos::atom("p");
        assert_eq!(expand_pos(&p, "z", &n, &mut f), Term::suspend_p("z", p, n.clone()));
        assert_eq!(expand_pos(&Pos::Zero, "z", &n, &mut f), Term::Abort);
        assert_eq!(expand_pos(&Pos::One, "z", &n, &mut f), Term::let_unit(Term::RFoc(Value::UnitP)));
        let m = Term::lfoc("x", Spine::Nil);
        assert_eq!(expand_neg(&Neg::atom("q"), &m, &mut f), Term::suspend_n(m.clone()));
        assert_eq!(expand_neg(&Neg::Top, &m, &mut f), Term::UnitN);
    }

    #[test]
    fn negative_conjunction_projects() {
        let mut f = Fresh::new();
        let a = parse_neg("p- & q-").unwrap();
        let out = expand_neg(&a, &Term::lfoc("x", Spine::Nil), &mut f);
        let want = Term::pair(
            Term::suspend_n(Term::lfoc("x", Spine::pi1(Spine::Nil, Neg::atom("q")))),
            Term::suspend_n(Term::lfoc("x", Spine::pi2(Spine::Nil, Neg::atom("p")))),
        );
        assert_eq!(out, want);
    }

    #[test]
    fn identity_principles() {
        let mut f = Fresh::new();
        let p = Pos::atom("p");
        assert!(alpha_eq(&id_pos(&p, &mut f), &Term::suspend_p("z", p.clone(), Term::RFoc(Value::var("z")))));
        assert_eq!(id_pos(&Pos::Zero, &mut f), Term::Abort);
        assert_eq!(id_pos(&Pos::One, &mut f), Term::let_unit(Term::RFoc(Value::UnitP)));
        for text in ["dn(p- & q-) -> dn(r- & s-) -> (p- & r-)", "(p+ * q+) -> (r+ * s+) -> up(p+ * r+)", "up(p+ + 0) & T"] {
            let a = parse_neg(text).unwrap();
            let ctx = Ctx::new().with("x", Hyp::Neg(a.clone()));
            let n = id_neg(&a, "x", &mut f);
            assert!(check_term(&ctx, &[], &n, &Succedent::INeg(a.clone())).is_ok(), "{text}: {n}");
        }
    }

    #[test]
    fn expansion_of_suspended_disjunction() {
        let mut f = Fresh::new();
        let a = parse_pos("p+ + q+").unwrap();
        let ctx = Ctx::new().with("z", Hyp::Susp(a.clone()));
        let n = Term::RFoc(Value::var("z"));
        let u = Succedent::SPos(a.clone());
        assert!(check_term(&ctx, &[], &n, &u).is_ok());
        let out = expand_pos(&a, "z", &n, &mut f);
        assert!(check_term(&Ctx::new(), &[a], &out, &u).is_ok());
    }

    #[test]
    fn recursion_is_on_immediate_subformulas() {
        let mut f = Fresh::new();
        let a = parse_neg("dn(dn(up(p+ * 1)) -> q-) -> up(p+ + dn T)").unwrap();
        let mut e = Expander::traced(&mut f);
        e.expand_neg(&a, &Term::lfoc("x", Spine::Nil));
        let t = e.trace().unwrap();
        assert!(t.calls > 5);
        assert_eq!(t.violations, 0);
    }
}
