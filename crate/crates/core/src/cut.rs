//! Cut admissibility as hereditary substitution. The four parts are mutually
//! recursive: principal cuts at positive and negative propositions, rightist
//! substitution for a negative hypothesis and leftist substitution for a
//! positive conclusion.

use crate::kernel::{free_vars_term, freshen, subst_pos_term, Ctx, Expr, Fresh, Name, Spine, Term, Value};
use crate::syntax::{is_stable, is_suspension_normal, Neg, Pos, Succedent};
use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutError {
    NotSuspensionNormal(String),
    NotStable(String),
    /// The inputs do not have the shapes their types promise.
    Mismatch(String),
}

impl fmt::Display for CutError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutError::NotSuspensionNormal(m) => write!(f, "not suspension-normal: {m}"),
            CutError::NotStable(u) => write!(f, "succedent {u} is not stable"),
            CutError::Mismatch(m) => write!(f, "ill-typed cut: {m}"),
        }
    }
}

/// The termination measure: the size of the cut proposition, then the part
/// (1 to 4, in the order principal positive, principal negative, rightist,
/// leftist), then the size of the derivation being traversed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CutMetric {
    pub prop_size: usize,
    pub part: u8,
    pub deriv_size: usize,
}

/// Records every call's metric and flags calls that fail to decrease
/// strictly below their caller's.
#[derive(Clone, Debug, Default)]
pub struct Audit {
    stack: Vec<CutMetric>,
    pub calls: usize,
    pub max_depth: usize,
    pub violations: Vec<(CutMetric, CutMetric)>,
}

impl Audit {
    fn enter(&mut self, m: CutMetric) {
        self.calls += 1;
        if let Some(top) = self.stack.last() {
            if m >= *top {
                self.violations.push((*top, m));
            }
        }
        self.stack.push(m);
        self.max_depth = self.max_depth.max(self.stack.len());
    }
}

type R<T> = Result<T, CutError>;

fn mismatch<T>(what: impl fmt::Display) -> R<T> {
    Err(CutError::Mismatch(alloc::format!("{what}")))
}

pub struct Cutter<'a> {
    fresh: &'a mut Fresh,
    audit: Option<Audit>,
}

impl<'a> Cutter<'a> {
    pub fn new(fresh: &'a mut Fresh) -> Self {
        Cutter { fresh, audit: None }
    }

    /// Like [`Cutter::new`] but recording the metric of every call.
    pub fn audited(fresh: &'a mut Fresh) -> Self {
        Cutter { fresh, audit: Some(Audit::default()) }
    }

    pub fn audit(&self) -> Option<&Audit> {
        self.audit.as_ref()
    }

    pub fn fresh(&mut self) -> &mut Fresh {
        self.fresh
    }

    fn reserve(&mut self, es: &[Expr]) {
        for e in es {
            self.fresh.reserve_expr(e);
        }
        if let Some(a) = &mut self.audit {
            a.stack.clear();
        }
    }

    fn enter(&mut self, prop_size: usize, part: u8, deriv_size: usize) {
        if let Some(a) = &mut self.audit {
            a.enter(CutMetric { prop_size, part, deriv_size });
        }
    }

    fn leave<T>(&mut self, out: R<T>) -> R<T> {
        if let Some(a) = &mut self.audit {
            a.stack.pop();
        }
        out
    }

    /// `(V • N)^{A+}`.
    pub fn cut_pos(&mut self, v: &Value, a: &Pos, n: &Term) -> R<Term> {
        self.reserve(&[Expr::Value(v.clone()), Expr::Term(n.clone())]);
        self.principal_pos(v, a, n)
    }

    /// `(M • S)^{A-}`.
    pub fn cut_neg(&mut self, m: &Term, a: &Neg, s: &Spine) -> R<Term> {
        self.reserve(&[Expr::Term(m.clone()), Expr::Spine(s.clone())]);
        self.principal_neg(m, a, s)
    }

    /// `⟦M/x⟧^{A-} E`.
    pub fn rsubst(&mut self, m: &Term, x: &str, a: &Neg, e: &Expr) -> R<Expr> {
        self.reserve(&[Expr::Term(m.clone()), e.clone()]);
        let mut r = Rightist { m, x, a, fv: free_vars_term(m) };
        match e {
            Expr::Value(e) => r.value(self, e).map(Expr::Value),
            Expr::Term(e) => r.term(self, e).map(Expr::Term),
            Expr::Spine(e) => r.spine(self, e).map(Expr::Spine),
        }
    }

    pub fn rsubst_term(&mut self, m: &Term, x: &str, a: &Neg, e: &Term) -> R<Term> {
        self.reserve(&[Expr::Term(m.clone()), Expr::Term(e.clone())]);
        Rightist { m, x, a, fv: free_vars_term(m) }.term(self, e)
    }

    /// `⟦E⟧^{A+} N` for a term `E`.
    pub fn lsubst_term(&mut self, e: &Term, a: &Pos, n: &Term) -> R<Term> {
        self.reserve(&[Expr::Term(e.clone()), Expr::Term(n.clone())]);
        Leftist { a, n, fv: free_vars_term(n) }.term(self, e)
    }

    /// `⟦E⟧^{A+} N` for a spine `E`.
    pub fn lsubst_spine(&mut self, e: &Spine, a: &Pos, n: &Term) -> R<Spine> {
        self.reserve(&[Expr::Spine(e.clone()), Expr::Term(n.clone())]);
        Leftist { a, n, fv: free_vars_term(n) }.spine(self, e)
    }

    fn principal_pos(&mut self, v: &Value, a: &Pos, n: &Term) -> R<Term> {
        self.enter(a.size(), 1, v.size() + n.size());
        let out = self.principal_pos_body(v, a, n);
        self.leave(out)
    }

    fn principal_pos_body(&mut self, v: &Value, a: &Pos, n: &Term) -> R<Term> {
        match (v, a, n) {
            (Value::Var(_), Pos::Atom(_), Term::SuspendP(z, _, body)) => Ok(subst_pos_term(v, z, body, self.fresh)),
            (Value::Var(z), _, _) if !a.is_atom() => Err(CutError::NotSuspensionNormal(alloc::format!("{z} : <{a}>"))),
            (Value::Thunk(m), Pos::Down(b), Term::LetDown(x, _, body)) => {
                Rightist { m, x, a: b, fv: free_vars_term(m) }.term(self, body)
            }
            (Value::Inl(v, _), Pos::Or(a1, _), Term::Case(n1, _)) => self.principal_pos(v, a1, n1),
            (Value::Inr(v, _), Pos::Or(_, a2), Term::Case(_, n2)) => self.principal_pos(v, a2, n2),
            (Value::UnitP, Pos::One, Term::LetUnit(body)) => Ok((**body).clone()),
            (Value::PairP(v1, v2), Pos::And(a1, a2), Term::Split(body)) => {
                let mid = self.principal_pos(v1, a1, body)?;
                self.principal_pos(v2, a2, &mid)
            }
            _ => mismatch(alloc::format!("no principal cut of {v} against {n} at {a}")),
        }
    }

    fn principal_neg(&mut self, m: &Term, a: &Neg, s: &Spine) -> R<Term> {
        self.enter(a.size(), 2, m.size() + s.size());
        let out = self.principal_neg_body(m, a, s);
        self.leave(out)
    }

    fn principal_neg_body(&mut self, m: &Term, a: &Neg, s: &Spine) -> R<Term> {
        match (m, a, s) {
            (Term::SuspendN(n), Neg::Atom(_), Spine::Nil) => Ok((**n).clone()),
            (_, _, Spine::Nil) if !a.is_atom() => Err(CutError::NotSuspensionNormal(alloc::format!("<{a}>"))),
            (Term::Ret(m), Neg::Up(b), Spine::Match(n)) => Leftist { a: b, n, fv: free_vars_term(n) }.term(self, m),
            (Term::Lam(n), Neg::Imp(b, c), Spine::App(v, s)) => {
                let mid = self.principal_pos(v, b, n)?;
                self.principal_neg(&mid, c, s)
            }
            (Term::PairN(m1, _), Neg::And(a1, _), Spine::Pi1(s, _)) => self.principal_neg(m1, a1, s),
            (Term::PairN(_, m2), Neg::And(_, a2), Spine::Pi2(s, _)) => self.principal_neg(m2, a2, s),
            _ => mismatch(alloc::format!("no principal cut of {m} against {s} at {a}")),
        }
    }
}

struct Rightist<'t> {
    m: &'t Term,
    x: &'t str,
    a: &'t Neg,
    fv: BTreeSet<Name>,
}

impl Rightist<'_> {
    fn enter(&self, c: &mut Cutter<'_>, size: usize) {
        c.enter(self.a.size(), 3, size);
    }

    fn value(&mut self, c: &mut Cutter<'_>, v: &Value) -> R<Value> {
        self.enter(c, v.size());
        let out = self.value_body(c, v);
        c.leave(out)
    }

    fn value_body(&mut self, c: &mut Cutter<'_>, v: &Value) -> R<Value> {
        Ok(match v {
            Value::Var(_) | Value::UnitP => v.clone(),
            Value::Thunk(n) => Value::thunk(self.term(c, n)?),
            Value::Inl(v, b) => Value::inl(self.value(c, v)?, b.clone()),
            Value::Inr(v, a) => Value::inr(self.value(c, v)?, a.clone()),
            Value::PairP(a, b) => Value::pair(self.value(c, a)?, self.value(c, b)?),
        })
    }

    fn term(&mut self, c: &mut Cutter<'_>, n: &Term) -> R<Term> {
        self.enter(c, n.size());
        let out = self.term_body(c, n);
        c.leave(out)
    }

    fn binder(
        &mut self,
        c: &mut Cutter<'_>,
        y: &str,
        body: &Term,
        rebuild: impl FnOnce(Name, Term) -> Term,
    ) -> R<Term> {
        let (y, body) = freshen(y, body, &self.fv, c.fresh);
        Ok(rebuild(y, self.term(c, &body)?))
    }

    fn term_body(&mut self, c: &mut Cutter<'_>, n: &Term) -> R<Term> {
        Ok(match n {
            Term::RFoc(v) => Term::RFoc(self.value(c, v)?),
            Term::LFoc(y, s) if y == self.x => {
                let s = self.spine(c, s)?;
                c.principal_neg(self.m, self.a, &s)?
            }
            Term::LFoc(y, s) => Term::LFoc(y.clone(), self.spine(c, s)?),
            Term::SuspendP(y, _, _) | Term::LetDown(y, _, _) if y == self.x => n.clone(),
            Term::SuspendP(y, b, body) => {
                self.binder(c, y, body, |y, t| Term::SuspendP(y, b.clone(), Box::new(t)))?
            }
            Term::LetDown(y, b, body) => self.binder(c, y, body, |y, t| Term::LetDown(y, b.clone(), Box::new(t)))?,
            Term::Abort | Term::UnitN => n.clone(),
            Term::Case(a, b) => Term::case(self.term(c, a)?, self.term(c, b)?),
            Term::LetUnit(t) => Term::let_unit(self.term(c, t)?),
            Term::Split(t) => Term::split(self.term(c, t)?),
            Term::SuspendN(t) => Term::suspend_n(self.term(c, t)?),
            Term::Ret(t) => Term::ret(self.term(c, t)?),
            Term::Lam(t) => Term::lam(self.term(c, t)?),
            Term::PairN(a, b) => Term::pair(self.term(c, a)?, self.term(c, b)?),
        })
    }

    fn spine(&mut self, c: &mut Cutter<'_>, s: &Spine) -> R<Spine> {
        self.enter(c, s.size());
        let out = self.spine_body(c, s);
        c.leave(out)
    }

    fn spine_body(&mut self, c: &mut Cutter<'_>, s: &Spine) -> R<Spine> {
        Ok(match s {
            Spine::Nil => Spine::Nil,
            Spine::Match(n) => Spine::match_(self.term(c, n)?),
            Spine::App(v, s) => Spine::app(self.value(c, v)?, self.spine(c, s)?),
            Spine::Pi1(s, b) => Spine::pi1(self.spine(c, s)?, b.clone()),
            Spine::Pi2(s, a) => Spine::pi2(self.spine(c, s)?, a.clone()),
        })
    }
}

struct Leftist<'t> {
    a: &'t Pos,
    n: &'t Term,
    fv: BTreeSet<Name>,
}

impl Leftist<'_> {
    fn term(&mut self, c: &mut Cutter<'_>, e: &Term) -> R<Term> {
        c.enter(self.a.size(), 4, e.size());
        let out = self.term_body(c, e);
        c.leave(out)
    }

    fn term_body(&mut self, c: &mut Cutter<'_>, e: &Term) -> R<Term> {
        Ok(match e {
            Term::RFoc(v) => c.principal_pos(v, self.a, self.n)?,
            Term::LFoc(x, s) => Term::LFoc(x.clone(), self.spine(c, s)?),
            Term::SuspendP(y, b, body) => {
                let (y, body) = freshen(y, body, &self.fv, c.fresh);
                Term::SuspendP(y, b.clone(), Box::new(self.term(c, &body)?))
            }
            Term::LetDown(y, b, body) => {
                let (y, body) = freshen(y, body, &self.fv, c.fresh);
                Term::LetDown(y, b.clone(), Box::new(self.term(c, &body)?))
            }
            Term::Abort => Term::Abort,
            Term::Case(a, b) => Term::case(self.term(c, a)?, self.term(c, b)?),
            Term::LetUnit(t) => Term::let_unit(self.term(c, t)?),
            Term::Split(t) => Term::split(self.term(c, t)?),
            _ => return mismatch(alloc::format!("{e} cannot conclude the stable succedent {}", self.a)),
        })
    }

    fn spine(&mut self, c: &mut Cutter<'_>, e: &Spine) -> R<Spine> {
        c.enter(self.a.size(), 4, e.size());
        let out = self.spine_body(c, e);
        c.leave(out)
    }

    fn spine_body(&mut self, c: &mut Cutter<'_>, e: &Spine) -> R<Spine> {
        Ok(match e {
            Spine::Nil => return mismatch(alloc::format!("nil cannot conclude the stable succedent {}", self.a)),
            Spine::Match(t) => Spine::match_(self.term(c, t)?),
            Spine::App(v, s) => Spine::app(v.clone(), self.spine(c, s)?),
            Spine::Pi1(s, b) => Spine::pi1(self.spine(c, s)?, b.clone()),
            Spine::Pi2(s, a) => Spine::pi2(self.spine(c, s)?, a.clone()),
        })
    }
}

fn require_normal(ctx: &Ctx, u: &Succedent) -> R<()> {
    if is_suspension_normal(ctx, u) {
        Ok(())
    } else {
        Err(CutError::NotSuspensionNormal(alloc::format!("{ctx} ⊢ {u}")))
    }
}

fn require_stable(u: &Succedent) -> R<()> {
    if is_stable(u) {
        Ok(())
    } else {
        Err(CutError::NotStable(alloc::format!("{u}")))
    }
}

fn reserve_ctx(ctx: &Ctx, fresh: &mut Fresh) {
    for (x, _) in ctx.iter() {
        fresh.reserve(x);
    }
}

/// `Γ ⊢ V : [A+]` and `Γ; A+, Ω ⊢ N : U` give `Γ; Ω ⊢ (V • N) : U`.
pub fn cut_pos(ctx: &Ctx, u: &Succedent, v: &Value, a: &Pos, n: &Term, fresh: &mut Fresh) -> R<Term> {
    require_normal(ctx, u)?;
    reserve_ctx(ctx, fresh);
    Cutter::new(fresh).cut_pos(v, a, n)
}

/// `Γ ⊢ M : A-` and `Γ; [A-] ⊢ S : U` give `Γ ⊢ (M • S) : U`.
pub fn cut_neg(ctx: &Ctx, u: &Succedent, m: &Term, a: &Neg, s: &Spine, fresh: &mut Fresh) -> R<Term> {
    require_normal(ctx, u)?;
    require_stable(u)?;
    reserve_ctx(ctx, fresh);
    Cutter::new(fresh).cut_neg(m, a, s)
}

/// `Γ ⊢ M : A-` and `Γ, x:A-; L ⊢ E : U` give `Γ; L ⊢ ⟦M/x⟧E : U`. For a
/// value `U` is its right focus.
pub fn rsubst(ctx: &Ctx, u: &Succedent, m: &Term, x: &str, a: &Neg, e: &Expr, fresh: &mut Fresh) -> R<Expr> {
    require_normal(ctx, u)?;
    reserve_ctx(ctx, fresh);
    Cutter::new(fresh).rsubst(m, x, a, e)
}

/// `Γ; L ⊢ E : A+` and `Γ; A+ ⊢ N : U` give `Γ; L ⊢ ⟦E⟧N : U`.
pub fn lsubst(ctx: &Ctx, u: &Succedent, e: &Expr, a: &Pos, n: &Term, fresh: &mut Fresh) -> R<Expr> {
    require_normal(ctx, u)?;
    require_stable(u)?;
    reserve_ctx(ctx, fresh);
    let mut c = Cutter::new(fresh);
    match e {
        Expr::Term(e) => c.lsubst_term(e, a, n).map(Expr::Term),
        Expr::Spine(e) => c.lsubst_spine(e, a, n).map(Expr::Spine),
        Expr::Value(_) => mismatch("a value has no stable succedent"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check_term, Hyp};

    fn p() -> Pos {
        Pos::atom("p")
    }

    #[test]
    fn principal_positive_cases() {
        let mut f = Fresh::new();
        let mut c = Cutter::new(&mut f);
        let n = Term::RFoc(Value::var("w"));
        assert_eq!(c.cut_pos(&Value::UnitP, &Pos::One, &Term::let_unit(n.clone())).unwrap(), n);
        let or = Pos::or(Pos::One, p());
        let case = Term::case(Term::let_unit(n.clone()), Term::Abort);
        assert_eq!(c.cut_pos(&Value::inl(Value::UnitP, p()), &or, &case).unwrap(), n);
        let eta = Term::suspend_p("z2", p(), Term::RFoc(Value::var("z2")));
        assert_eq!(c.cut_pos(&Value::var("z"), &p(), &eta).unwrap(), Term::RFoc(Value::var("z")));
        let r = c.cut_pos(&Value::var("z"), &or, &case);
        assert!(matches!(r, Err(CutError::NotSuspensionNormal(_))));
    }

    #[test]
    fn principal_negative_cases() {
        let mut f = Fresh::new();
        let mut c = Cutter::new(&mut f);
        let up = Neg::up(p());
        let m = Term::ret(Term::RFoc(Value::var("w")));
        let n = Term::suspend_p("z", p(), Term::RFoc(Value::var("z")));
        assert_eq!(c.cut_neg(&m, &up, &Spine::match_(n)).unwrap(), Term::RFoc(Value::var("w")));
        let pair = Term::pair(Term::suspend_n(Term::lfoc("a", Spine::Nil)), Term::UnitN);
        let and = Neg::and(Neg::atom("q"), Neg::Top);
        let s = Spine::pi1(Spine::Nil, Neg::Top);
        assert_eq!(c.cut_neg(&pair, &and, &s).unwrap(), Term::lfoc("a", Spine::Nil));
    }

    #[test]
    fn application_reduces_and_checks() {
        let mut f = Fresh::new();
        let ctx = Ctx::new().with("w", Hyp::Susp(p()));
        let u = Succedent::SPos(p());
        let a = Neg::imp(p(), Neg::up(p()));
        let m = Term::lam(Term::suspend_p("z", p(), Term::ret(Term::RFoc(Value::var("z")))));
        let s = Spine::app(Value::var("w"), Spine::match_(Term::suspend_p("z2", p(), Term::RFoc(Value::var("z2")))));
        let mut c = Cutter::audited(&mut f);
        let out = c.cut_neg(&m, &a, &s).unwrap();
        assert_eq!(out, Term::RFoc(Value::var("w")));
        assert!(check_term(&ctx, &[], &out, &u).is_ok());
        let audit = c.audit().unwrap();
        assert!(audit.violations.is_empty());
        assert!(audit.calls >= 4);
    }

    #[test]
    fn rightist_cases() {
        let mut f = Fresh::new();
        let mut c = Cutter::new(&mut f);
        let a = Neg::atom("q");
        let m = Term::suspend_n(Term::lfoc("y", Spine::Nil));
        let z = Expr::Value(Value::var("z"));
        assert_eq!(c.rsubst(&m, "x", &a, &z).unwrap(), z);
        let hit = Term::lfoc("x", Spine::Nil);
        assert_eq!(c.rsubst_term(&m, "x", &a, &hit).unwrap(), Term::lfoc("y", Spine::Nil));
        let miss = Term::lfoc("x2", Spine::Nil);
        assert_eq!(c.rsubst_term(&m, "x", &a, &miss).unwrap(), miss);
        // A binder named like a free variable of M is renamed.
        let e = Term::let_down("y", a.clone(), Term::lfoc("x", Spine::Nil));
        let out = c.rsubst_term(&m, "x", &a, &e).unwrap();
        let Term::LetDown(y2, _, body) = &out else { panic!() };
        assert_ne!(y2, "y");
        assert_eq!(**body, Term::lfoc("y", Spine::Nil));
    }

    #[test]
    fn leftist_cases() {
        let mut f = Fresh::new();
        let mut c = Cutter::new(&mut f);
        let n = Term::suspend_p("z", p(), Term::RFoc(Value::var("z")));
        assert_eq!(c.lsubst_term(&Term::RFoc(Value::var("w")), &p(), &n).unwrap(), Term::RFoc(Value::var("w")));
        assert_eq!(c.lsubst_term(&Term::Abort, &p(), &n).unwrap(), Term::Abort);
        let case = Term::case(Term::RFoc(Value::var("a")), Term::RFoc(Value::var("b")));
        assert_eq!(
            c.lsubst_term(&case, &p(), &n).unwrap(),
            Term::case(Term::RFoc(Value::var("a")), Term::RFoc(Value::var("b")))
        );
        let s = Spine::match_(Term::RFoc(Value::var("a")));
        assert_eq!(c.lsubst_spine(&s, &p(), &n).unwrap(), s);
    }

    #[test]
    fn entry_points_check_normality() {
        let mut f = Fresh::new();
        let ctx = Ctx::new().with("z", Hyp::Susp(Pos::or(p(), p())));
        let u = Succedent::SPos(p());
        let r = cut_pos(&ctx, &u, &Value::UnitP, &Pos::One, &Term::let_unit(Term::Abort), &mut f);
        assert!(matches!(r, Err(CutError::NotSuspensionNormal(_))));
        let r = cut_neg(&Ctx::new(), &Succedent::INeg(Neg::Top), &Term::UnitN, &Neg::Top, &Spine::Nil, &mut f);
        assert!(matches!(r, Err(CutError::NotStable(_))));
    }
}
