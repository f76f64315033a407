//! The checker for values, terms and spines. Annotations make it syntax
//! directed: every constructor determines its rule and premises.

use super::context::{Ctx, Hyp};
use super::term::{Expr, Spine, Term, Value};
use crate::syntax::{is_stable, Neg, Pos, Succedent};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckErrorKind {
    TypeMismatch { expected: String, found: String },
    UnboundVariable(String),
    /// The constructor does not apply to an atomic proposition, or a
    /// variable names a hypothesis of the other kind.
    WrongSort(String),
    NotStable(String),
    OmegaNonEmpty(String),
    /// The expression's sort does not fit the judgment form.
    JudgmentShape(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckError {
    pub path: Vec<&'static str>,
    pub kind: CheckErrorKind,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at /{}: ", self.path.join("/"))?;
        match &self.kind {
            CheckErrorKind::TypeMismatch { expected, found } => write!(f, "type mismatch: expected {expected}, found {found}"),
            CheckErrorKind::UnboundVariable(x) => write!(f, "unbound variable {x}"),
            CheckErrorKind::WrongSort(m) => write!(f, "wrong sort: {m}"),
            CheckErrorKind::NotStable(u) => write!(f, "focus under the unstable succedent {u}"),
            CheckErrorKind::OmegaNonEmpty(m) => write!(f, "inversion context not empty: {m}"),
            CheckErrorKind::JudgmentShape(m) => write!(f, "judgment shape: {m}"),
        }
    }
}

/// Left-hand side of a sequent: an inversion context or a left focus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ante {
    Omega(Vec<Pos>),
    Focus(Neg),
}

/// `Γ; L ⊢ U` in the one-sequent view: values are `Γ; · ⊢ [A+]`, terms have
/// an inversion context, spines a left focus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    pub ctx: Ctx,
    pub ante: Ante,
    pub succ: Succedent,
}

impl Sequent {
    pub fn value(ctx: Ctx, a: Pos) -> Self {
        Sequent { ctx, ante: Ante::Omega(Vec::new()), succ: Succedent::RFoc(a) }
    }
    pub fn term(ctx: Ctx, omega: Vec<Pos>, succ: Succedent) -> Self {
        Sequent { ctx, ante: Ante::Omega(omega), succ }
    }
    pub fn spine(ctx: Ctx, a: Neg, succ: Succedent) -> Self {
        Sequent { ctx, ante: Ante::Focus(a), succ }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; ", self.ctx)?;
        match &self.ante {
            Ante::Omega(o) if o.is_empty() => f.write_str("·")?,
            Ante::Omega(o) => {
                for (i, a) in o.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
            }
            Ante::Focus(a) => write!(f, "[{a}]")?,
        }
        write!(f, " ⊢ {}", self.succ)
    }
}

fn term_ctor(n: &Term) -> &'static str {
    match n {
        Term::RFoc(_) => "rfoc",
        Term::LFoc(..) => "lfoc",
        Term::SuspendP(..) => "eta+",
        Term::LetDown(..) => "letdown",
        Term::Abort => "abort",
        Term::Case(..) => "case",
        Term::LetUnit(_) => "letunit",
        Term::Split(_) => "split",
        Term::SuspendN(_) => "eta-",
        Term::Ret(_) => "ret",
        Term::Lam(_) => "lam",
        Term::UnitN => "unit-",
        Term::PairN(..) => "pair-",
    }
}

fn value_ctor(v: &Value) -> &'static str {
    match v {
        Value::Var(_) => "var",
        Value::Thunk(_) => "thunk",
        Value::Inl(..) => "inl",
        Value::Inr(..) => "inr",
        Value::UnitP => "unit+",
        Value::PairP(..) => "pair+",
    }
}

fn spine_ctor(s: &Spine) -> &'static str {
    match s {
        Spine::Nil => "nil",
        Spine::Match(_) => "match",
        Spine::App(..) => "app",
        Spine::Pi1(..) => "pi1",
        Spine::Pi2(..) => "pi2",
    }
}

struct Checker {
    ctx: Ctx,
    path: Vec<&'static str>,
}

type Res = Result<(), CheckError>;

impl Checker {
    fn err(&self, kind: CheckErrorKind) -> CheckError {
        CheckError { path: self.path.clone(), kind }
    }

    fn mismatch(&self, expected: impl fmt::Display, found: &str) -> CheckError {
        self.err(CheckErrorKind::TypeMismatch { expected: alloc::format!("{expected}"), found: found.into() })
    }

    fn at<T>(&mut self, label: &'static str, f: impl FnOnce(&mut Self) -> Result<T, CheckError>) -> Result<T, CheckError> {
        self.path.push(label);
        let out = f(self)?;
        self.path.pop();
        Ok(out)
    }

    fn bind(&mut self, label: &'static str, name: &str, hyp: Hyp, f: impl FnOnce(&mut Self) -> Res) -> Res {
        self.ctx.push(name.into(), hyp);
        let out = self.at(label, f);
        self.ctx.pop();
        out
    }

    fn annotation<A: PartialEq + fmt::Display>(&self, found: &A, expected: &A, what: &str) -> Res {
        if found == expected {
            Ok(())
        } else {
            Err(self.mismatch(alloc::format!("{what} {expected}"), &alloc::format!("annotation {found}")))
        }
    }

    fn value(&mut self, v: &Value, a: &Pos) -> Res {
        match (v, a) {
            (Value::Var(z), _) => match self.ctx.lookup(z) {
                None => Err(self.err(CheckErrorKind::UnboundVariable(z.clone()))),
                Some(Hyp::Neg(b)) => {
                    Err(self.err(CheckErrorKind::WrongSort(alloc::format!("{z} : {b} is not a suspended positive"))))
                }
                Some(Hyp::Susp(b)) if b == a => Ok(()),
                Some(Hyp::Susp(b)) => Err(self.mismatch(alloc::format!("<{a}>"), &alloc::format!("{z} : <{b}>"))),
            },
            (Value::Thunk(n), Pos::Down(b)) => {
                let u = Succedent::INeg((**b).clone());
                self.at("thunk", |me| me.term(&[], n, &u))
            }
            (Value::Inl(v, ann), Pos::Or(a1, a2)) => {
                self.annotation(ann, a2, "right disjunct")?;
                self.at("inl", |me| me.value(v, a1))
            }
            (Value::Inr(v, ann), Pos::Or(a1, a2)) => {
                self.annotation(ann, a1, "left disjunct")?;
                self.at("inr", |me| me.value(v, a2))
            }
            (Value::UnitP, Pos::One) => Ok(()),
            (Value::PairP(v1, v2), Pos::And(a1, a2)) => {
                self.at("pair+.0", |me| me.value(v1, a1))?;
                self.at("pair+.1", |me| me.value(v2, a2))
            }
            (v, Pos::Atom(_)) => Err(self.err(CheckErrorKind::WrongSort(alloc::format!(
                "{} cannot prove the atom {a}",
                value_ctor(v)
            )))),
            (v, _) => Err(self.mismatch(alloc::format!("a value of [{a}]"), value_ctor(v))),
        }
    }

    fn term(&mut self, omega: &[Pos], n: &Term, u: &Succedent) -> Res {
        if let Some((head, tail)) = omega.split_first() {
            return self.left_inversion(head, tail, n, u);
        }
        match u {
            Succedent::RFoc(a) => Err(self.err(CheckErrorKind::JudgmentShape(alloc::format!(
                "a term cannot conclude the right focus [{a}]"
            )))),
            Succedent::INeg(a) => self.right_inversion(a, n, u),
            Succedent::SPos(_) | Succedent::SuspNeg(_) => match n {
                Term::RFoc(v) => match u {
                    Succedent::SPos(a) => self.at("rfoc", |me| me.value(v, a)),
                    _ => Err(self.mismatch("a left focus under a suspended succedent", "rfoc")),
                },
                Term::LFoc(x, s) => match self.ctx.lookup(x).cloned() {
                    None => Err(self.err(CheckErrorKind::UnboundVariable(x.clone()))),
                    Some(Hyp::Susp(b)) => Err(self.err(CheckErrorKind::WrongSort(alloc::format!(
                        "{x} : <{b}> cannot be focused on"
                    )))),
                    Some(Hyp::Neg(a)) => self.at("lfoc", |me| me.spine(s, &a, u)),
                },
                n => Err(self.mismatch(alloc::format!("a focus at the stable succedent {u}"), term_ctor(n))),
            },
        }
    }

    fn right_inversion(&mut self, a: &Neg, n: &Term, u: &Succedent) -> Res {
        match (a, n) {
            (Neg::Atom(_), Term::SuspendN(m)) => {
                let u = Succedent::SuspNeg(a.clone());
                self.at("eta-", |me| me.term(&[], m, &u))
            }
            (Neg::Up(b), Term::Ret(m)) => {
                let u = Succedent::SPos((**b).clone());
                self.at("ret", |me| me.term(&[], m, &u))
            }
            (Neg::Imp(b, c), Term::Lam(m)) => {
                let u = Succedent::INeg((**c).clone());
                self.at("lam", |me| me.term(core::slice::from_ref(&**b), m, &u))
            }
            (Neg::Top, Term::UnitN) => Ok(()),
            (Neg::And(a1, a2), Term::PairN(m1, m2)) => {
                let u1 = Succedent::INeg((**a1).clone());
                let u2 = Succedent::INeg((**a2).clone());
                self.at("pair-.0", |me| me.term(&[], m1, &u1))?;
                self.at("pair-.1", |me| me.term(&[], m2, &u2))
            }
            (_, Term::RFoc(_) | Term::LFoc(..)) => Err(self.err(CheckErrorKind::NotStable(alloc::format!("{u}")))),
            (Neg::Atom(_), n) => Err(self.err(CheckErrorKind::WrongSort(alloc::format!(
                "{} cannot invert the atom {a}",
                term_ctor(n)
            )))),
            (_, n) => Err(self.mismatch(alloc::format!("right inversion of {a}"), term_ctor(n))),
        }
    }

    fn left_inversion(&mut self, head: &Pos, tail: &[Pos], n: &Term, u: &Succedent) -> Res {
        let with_front = |front: &[&Pos]| {
            let mut o: Vec<Pos> = front.iter().map(|a| (*a).clone()).collect();
            o.extend_from_slice(tail);
            o
        };
        match (head, n) {
            (Pos::Atom(_), Term::SuspendP(z, ann, m)) => {
                self.annotation(ann, head, "suspension of")?;
                self.bind("eta+", z, Hyp::Susp(head.clone()), |me| me.term(tail, m, u))
            }
            (Pos::Down(a), Term::LetDown(x, ann, m)) => {
                self.annotation(ann, &**a, "hypothesis")?;
                self.bind("letdown", x, Hyp::Neg((**a).clone()), |me| me.term(tail, m, u))
            }
            (Pos::Zero, Term::Abort) => Ok(()),
            (Pos::Or(a, b), Term::Case(m1, m2)) => {
                let o1 = with_front(&[a]);
                let o2 = with_front(&[b]);
                self.at("case.0", |me| me.term(&o1, m1, u))?;
                self.at("case.1", |me| me.term(&o2, m2, u))
            }
            (Pos::One, Term::LetUnit(m)) => self.at("letunit", |me| me.term(tail, m, u)),
            (Pos::And(a, b), Term::Split(m)) => {
                let o = with_front(&[a, b]);
                self.at("split", |me| me.term(&o, m, u))
            }
            (
                _,
                Term::RFoc(_)
                | Term::LFoc(..)
                | Term::SuspendN(_)
                | Term::Ret(_)
                | Term::Lam(_)
                | Term::UnitN
                | Term::PairN(..),
            ) => Err(self.err(CheckErrorKind::OmegaNonEmpty(alloc::format!(
                "{} met the pending hypothesis {head}",
                term_ctor(n)
            )))),
            (Pos::Atom(_), n) => Err(self.err(CheckErrorKind::WrongSort(alloc::format!(
                "{} cannot decompose the atom {head}",
                term_ctor(n)
            )))),
            (_, n) => Err(self.mismatch(alloc::format!("left inversion of {head}"), term_ctor(n))),
        }
    }

    fn spine(&mut self, s: &Spine, a: &Neg, u: &Succedent) -> Res {
        if !is_stable(u) {
            return Err(self.err(CheckErrorKind::NotStable(alloc::format!("{u}"))));
        }
        match (s, a) {
            (Spine::Nil, _) => match u {
                Succedent::SuspNeg(b) if b == a => Ok(()),
                _ => Err(self.mismatch(alloc::format!("succedent <{a}> for nil"), &alloc::format!("{u}"))),
            },
            (Spine::Match(m), Neg::Up(b)) => self.at("match", |me| me.term(core::slice::from_ref(&**b), m, u)),
            (Spine::App(v, s1), Neg::Imp(b, c)) => {
                self.at("app.0", |me| me.value(v, b))?;
                self.at("app.1", |me| me.spine(s1, c, u))
            }
            (Spine::Pi1(s1, ann), Neg::And(a1, a2)) => {
                self.annotation(ann, &**a2, "right conjunct")?;
                self.at("pi1", |me| me.spine(s1, a1, u))
            }
            (Spine::Pi2(s1, ann), Neg::And(a1, a2)) => {
                self.annotation(ann, &**a1, "left conjunct")?;
                self.at("pi2", |me| me.spine(s1, a2, u))
            }
            (s, Neg::Atom(_)) => Err(self.err(CheckErrorKind::WrongSort(alloc::format!(
                "{} cannot eliminate the atom {a}",
                spine_ctor(s)
            )))),
            (s, _) => Err(self.mismatch(alloc::format!("a spine for [{a}]"), spine_ctor(s))),
        }
    }
}

/// `Γ ⊢ V : [A+]`.
pub fn check_value(ctx: &Ctx, v: &Value, a: &Pos) -> Res {
    Checker { ctx: ctx.clone(), path: Vec::new() }.value(v, a)
}

/// `Γ; Ω ⊢ N : U`, consuming Ω from the left.
pub fn check_term(ctx: &Ctx, omega: &[Pos], n: &Term, u: &Succedent) -> Res {
    Checker { ctx: ctx.clone(), path: Vec::new() }.term(omega, n, u)
}

/// `Γ; [A-] ⊢ S : U`.
pub fn check_spine(ctx: &Ctx, s: &Spine, a: &Neg, u: &Succedent) -> Res {
    Checker { ctx: ctx.clone(), path: Vec::new() }.spine(s, a, u)
}

/// Check any expression against a sequent of the matching form.
pub fn check(seq: &Sequent, e: &Expr) -> Res {
    let shape = |m: &str| Err(CheckError { path: Vec::new(), kind: CheckErrorKind::JudgmentShape(m.into()) });
    match (e, &seq.ante, &seq.succ) {
        (Expr::Value(v), Ante::Omega(o), Succedent::RFoc(a)) if o.is_empty() => check_value(&seq.ctx, v, a),
        (Expr::Value(_), ..) => shape("a value needs the sequent ·; · ⊢ [A+]"),
        (Expr::Term(n), Ante::Omega(o), u) if !matches!(u, Succedent::RFoc(_)) => check_term(&seq.ctx, o, n, u),
        (Expr::Term(_), ..) => shape("a term needs an inversion context and a non-focused succedent"),
        (Expr::Spine(s), Ante::Focus(a), u) => check_spine(&seq.ctx, s, a, u),
        (Expr::Spine(_), ..) => shape("a spine needs a left focus"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_neg;

    fn p() -> Pos {
        Pos::atom("p")
    }

    fn kind(r: Res) -> CheckErrorKind {
        r.unwrap_err().kind
    }

    #[test]
    fn values() {
        let ctx = Ctx::new().with("z", Hyp::Susp(p()));
        assert!(check_value(&ctx, &Value::var("z"), &p()).is_ok());
        let a = Pos::Or(Box::new(Pos::One), Box::new(Pos::Zero));
        assert!(check_value(&Ctx::new(), &Value::inl(Value::UnitP, Pos::Zero), &a).is_ok());
        let b = Pos::Or(Box::new(Pos::Zero), Box::new(Pos::One));
        let r = check_value(&Ctx::new(), &Value::inl(Value::UnitP, Pos::One), &b);
        assert!(matches!(kind(r), CheckErrorKind::TypeMismatch { .. }));
        assert!(matches!(kind(check_value(&Ctx::new(), &Value::var("w"), &p())), CheckErrorKind::UnboundVariable(_)));
    }

    #[test]
    fn spines() {
        let ctx = Ctx::new();
        let pq = parse_neg("p- & q-").unwrap();
        assert!(check_spine(&ctx, &Spine::Nil, &pq, &Succedent::SuspNeg(pq.clone())).is_ok());
        let s = Spine::pi1(Spine::Nil, Neg::atom("q"));
        assert!(check_spine(&ctx, &s, &pq, &Succedent::SuspNeg(Neg::atom("p"))).is_ok());
        let s = Spine::app(Value::UnitP, Spine::Nil);
        let r = check_spine(&ctx, &s, &Neg::atom("p"), &Succedent::SuspNeg(Neg::atom("p")));
        assert!(matches!(kind(r), CheckErrorKind::WrongSort(_)));
        let r = check_spine(&ctx, &Spine::Nil, &Neg::atom("p"), &Succedent::INeg(Neg::atom("p")));
        assert!(matches!(kind(r), CheckErrorKind::NotStable(_)));
    }

    #[test]
    fn projections_into_conjunctions() {
        let a1 = parse_neg("dn(p- & q-) -> dn(r- & s-) -> (p- & r-)").unwrap();
        let pq = parse_neg("p- & q-").unwrap();
        let rs = parse_neg("r- & s-").unwrap();
        let t = Term::lam(Term::let_down(
            "x1",
            pq,
            Term::lam(Term::let_down(
                "x2",
                rs,
                Term::pair(
                    Term::suspend_n(Term::lfoc("x1", Spine::pi1(Spine::Nil, Neg::atom("q")))),
                    Term::suspend_n(Term::lfoc("x2", Spine::pi1(Spine::Nil, Neg::atom("s")))),
                ),
            )),
        ));
        assert!(check_term(&Ctx::new(), &[], &t, &Succedent::INeg(a1.clone())).is_ok());
        let seq = Sequent::term(Ctx::new(), Vec::new(), Succedent::INeg(a1));
        assert!(check(&seq, &Expr::Term(t.clone())).is_ok());
        let wrong = Sequent::value(Ctx::new(), Pos::One);
        assert!(matches!(kind(check(&wrong, &Expr::Term(t))), CheckErrorKind::JudgmentShape(_)));
    }

    #[test]
    fn omega_is_consumed_in_order() {
        let q = Pos::atom("q");
        let goal = Succedent::SPos(Pos::And(Box::new(p()), Box::new(q.clone())));
        let t = Term::suspend_p(
            "a",
            p(),
            Term::suspend_p("b", q.clone(), Term::RFoc(Value::pair(Value::var("a"), Value::var("b")))),
        );
        assert!(check_term(&Ctx::new(), &[p(), q.clone()], &t, &goal).is_ok());
        assert!(check_term(&Ctx::new(), &[q, p()], &t, &goal).is_err());
        let r = check_term(&Ctx::new(), &[p()], &Term::UnitN, &Succedent::INeg(Neg::Top));
        assert!(matches!(kind(r), CheckErrorKind::OmegaNonEmpty(_)));
    }

    #[test]
    fn focus_needs_stability() {
        let ctx = Ctx::new().with("x", Hyp::Neg(Neg::atom("p")));
        let r = check_term(&ctx, &[], &Term::lfoc("x", Spine::Nil), &Succedent::INeg(Neg::atom("p")));
        assert!(matches!(kind(r), CheckErrorKind::NotStable(_)));
        let ok = Term::suspend_n(Term::lfoc("x", Spine::Nil));
        assert!(check_term(&ctx, &[], &ok, &Succedent::INeg(Neg::atom("p"))).is_ok());
        let r = check_term(&ctx, &[], &Term::lfoc("y", Spine::Nil), &Succedent::SuspNeg(Neg::atom("p")));
        assert!(matches!(kind(r), CheckErrorKind::UnboundVariable(_)));
    }

    #[test]
    fn errors_report_paths() {
        let t = Term::lam(Term::let_unit(Term::RFoc(Value::UnitP)));
        let a = parse_neg("1 -> up 0").unwrap();
        let e = check_term(&Ctx::new(), &[], &t, &Succedent::INeg(a)).unwrap_err();
        assert_eq!(e.path, ["lam", "letunit"]);
        assert!(matches!(e.kind, CheckErrorKind::NotStable(_)));
    }
}
