//! Translations between focused terms and unfocused derivations, and the
//! unfocused cut and identity principles obtained through them.

use crate::admissible::{adm, shift_removal_neg, shift_removal_pos, Args, Premise, PremiseMismatch, RuleId};
use crate::cut::{CutError, Cutter};
use crate::identity::id_neg;
use crate::kernel::{check, Ante, CheckError, Ctx, Expr, Fresh, Hyp, Name, Sequent, Spine, Term, Value};
use crate::syntax::{
    erase_ctx, erase_neg, erase_pos, erase_succ, is_stable, is_suspension_normal, polarize, Neg, NotSuspensionNormal,
    Pos, Strategy, Succedent, UProp,
};
use crate::unfocused::{check_uderiv, psi_left_lemma, weaken_u, PsiKind, RuleMismatch, UDeriv, USequent};
use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TranslateError {
    NotSuspensionNormal(String),
    NotStable(String),
    Ill(CheckError),
    ErasureMismatch(String),
    InconsistentPolarity(String),
    Premise(PremiseMismatch),
    Cut(CutError),
    CheckFailure(String),
}

impl fmt::Display for TranslateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TranslateError::NotSuspensionNormal(m) => write!(f, "not suspension-normal: {m}"),
            TranslateError::NotStable(u) => write!(f, "succedent {u} is not stable"),
            TranslateError::Ill(e) => write!(f, "ill-typed input: {e}"),
            TranslateError::ErasureMismatch(m) => write!(f, "erasure mismatch: {m}"),
            TranslateError::InconsistentPolarity(m) => write!(f, "inconsistent polarity: {m}"),
            TranslateError::Premise(e) => write!(f, "{e}"),
            TranslateError::Cut(e) => write!(f, "{e}"),
            TranslateError::CheckFailure(m) => write!(f, "check failure: {m}"),
        }
    }
}

impl From<NotSuspensionNormal> for TranslateError {
    fn from(e: NotSuspensionNormal) -> Self {
        TranslateError::NotSuspensionNormal(alloc::format!("{e}"))
    }
}

impl From<PremiseMismatch> for TranslateError {
    fn from(e: PremiseMismatch) -> Self {
        TranslateError::Premise(e)
    }
}

impl From<crate::unfocused::PremiseMismatch> for TranslateError {
    fn from(e: crate::unfocused::PremiseMismatch) -> Self {
        TranslateError::CheckFailure(alloc::format!("{e}"))
    }
}

impl From<CutError> for TranslateError {
    fn from(e: CutError) -> Self {
        TranslateError::Cut(e)
    }
}

type R<T> = Result<T, TranslateError>;

fn unexpected<T>(what: impl fmt::Display) -> R<T> {
    Err(TranslateError::InconsistentPolarity(alloc::format!("{what}")))
}

/// The unfocused sequent that [`defocalize`] proves for a focused one: the
/// erased context, the erased inversion context (or the erased focus, added
/// to the context) and the erased succedent.
pub fn erased_sequent(seq: &Sequent) -> R<USequent> {
    let mut gamma = erase_ctx(&seq.ctx)?;
    let goal = erase_succ(&seq.succ)?;
    let psi = match &seq.ante {
        Ante::Omega(o) => o.iter().map(erase_pos).collect(),
        Ante::Focus(a) => {
            gamma.insert(erase_neg(a));
            Vec::new()
        }
    };
    Ok(USequent { gamma, psi, goal })
}

struct Defoc {
    ctx: Ctx,
}

fn strip_cons(d: UDeriv) -> R<UDeriv> {
    match d {
        UDeriv::PsiCons(d) => Ok(*d),
        d => unexpected(alloc::format!("expected a cons node, found {:?}", d.tag())),
    }
}

fn strip_nil(d: UDeriv) -> R<UDeriv> {
    match d {
        UDeriv::PsiNil(d) => Ok(*d),
        d => unexpected(alloc::format!("expected a nil node, found {:?}", d.tag())),
    }
}

impl Defoc {
    /// A plain derivation of `Γ⊛ ⊢ A⊛`.
    fn value(&mut self, v: &Value, a: &Pos) -> R<UDeriv> {
        Ok(match (v, a) {
            (Value::Var(_), Pos::Atom(p)) => UDeriv::Init(p.clone()),
            (Value::Thunk(n), Pos::Down(b)) => strip_nil(self.term(&[], n, &Succedent::INeg((**b).clone()))?)?,
            (Value::Inl(v, _), Pos::Or(a1, _)) => UDeriv::OrR1(Box::new(self.value(v, a1)?)),
            (Value::Inr(v, _), Pos::Or(_, a2)) => UDeriv::OrR2(Box::new(self.value(v, a2)?)),
            (Value::UnitP, Pos::One) => UDeriv::TopR,
            (Value::PairP(v1, v2), Pos::And(a1, a2)) => {
                UDeriv::AndR(Box::new(self.value(v1, a1)?), Box::new(self.value(v2, a2)?))
            }
            _ => return unexpected(alloc::format!("value {v} at {a}")),
        })
    }

    fn bind<T>(&mut self, x: &str, h: Hyp, f: impl FnOnce(&mut Self) -> R<T>) -> R<T> {
        self.ctx.push(x.into(), h);
        let out = f(self);
        self.ctx.pop();
        out
    }

    /// A Ψ derivation of `Γ⊛; Ω⊛ ⊢ U⊛`.
    fn term(&mut self, omega: &[Pos], n: &Term, u: &Succedent) -> R<UDeriv> {
        if let Some((head, tail)) = omega.split_first() {
            let psi: Vec<UProp> = tail.iter().map(erase_pos).collect();
            let with = |front: &[&Pos]| {
                let mut o: Vec<Pos> = front.iter().map(|a| (*a).clone()).collect();
                o.extend_from_slice(tail);
                o
            };
            return Ok(match (head, n) {
                (Pos::Atom(_), Term::SuspendP(z, _, m)) => {
                    UDeriv::PsiCons(Box::new(self.bind(z, Hyp::Susp(head.clone()), |me| me.term(tail, m, u))?))
                }
                (Pos::Down(a), Term::LetDown(x, _, m)) => {
                    UDeriv::PsiCons(Box::new(self.bind(x, Hyp::Neg((**a).clone()), |me| me.term(tail, m, u))?))
                }
                (Pos::Zero, Term::Abort) => UDeriv::PsiCons(Box::new(psi_left_lemma(&PsiKind::Bot, &psi, &[])?)),
                (Pos::Or(a, b), Term::Case(m1, m2)) => {
                    let d1 = strip_cons(self.term(&with(&[a]), m1, u)?)?;
                    let d2 = strip_cons(self.term(&with(&[b]), m2, u)?)?;
                    let kind = PsiKind::Or(erase_pos(a), erase_pos(b));
                    UDeriv::PsiCons(Box::new(psi_left_lemma(&kind, &psi, &[d1, d2])?))
                }
                (Pos::One, Term::LetUnit(m)) => UDeriv::PsiCons(Box::new(weaken_u(&self.term(tail, m, u)?, &UProp::Top))),
                (Pos::And(a, b), Term::Split(m)) => {
                    let d = strip_cons(strip_cons(self.term(&with(&[a, b]), m, u)?)?)?;
                    let kind = PsiKind::And(erase_pos(a), erase_pos(b));
                    UDeriv::PsiCons(Box::new(psi_left_lemma(&kind, &psi, &[d])?))
                }
                _ => return unexpected(alloc::format!("{n} with pending {head}")),
            });
        }
        let plain = match (n, u) {
            (Term::RFoc(v), Succedent::SPos(a)) => self.value(v, a)?,
            (Term::LFoc(x, s), _) => {
                let Some(Hyp::Neg(a)) = self.ctx.lookup(x).cloned() else {
                    return unexpected(alloc::format!("focus on {x}"));
                };
                self.spine(s, &a, u)?
            }
            (Term::SuspendN(m), Succedent::INeg(a)) => {
                strip_nil(self.term(&[], m, &Succedent::SuspNeg(a.clone()))?)?
            }
            (Term::Ret(m), Succedent::INeg(Neg::Up(a))) => strip_nil(self.term(&[], m, &Succedent::SPos((**a).clone()))?)?,
            (Term::Lam(m), Succedent::INeg(Neg::Imp(a, b))) => {
                let d = self.term(core::slice::from_ref(&**a), m, &Succedent::INeg((**b).clone()))?;
                UDeriv::ImpR(Box::new(strip_nil(strip_cons(d)?)?))
            }
            (Term::UnitN, Succedent::INeg(Neg::Top)) => UDeriv::TopR,
            (Term::PairN(m1, m2), Succedent::INeg(Neg::And(a, b))) => {
                let d1 = strip_nil(self.term(&[], m1, &Succedent::INeg((**a).clone()))?)?;
                let d2 = strip_nil(self.term(&[], m2, &Succedent::INeg((**b).clone()))?)?;
                UDeriv::AndR(Box::new(d1), Box::new(d2))
            }
            _ => return unexpected(alloc::format!("{n} at {u}")),
        };
        Ok(UDeriv::PsiNil(Box::new(plain)))
    }

    /// A plain derivation of `Γ⊛, A⊛ ⊢ U⊛`.
    fn spine(&mut self, s: &Spine, a: &Neg, u: &Succedent) -> R<UDeriv> {
        Ok(match (s, a) {
            (Spine::Nil, Neg::Atom(p)) => UDeriv::Init(p.clone()),
            (Spine::Match(m), Neg::Up(b)) => strip_nil(strip_cons(self.term(core::slice::from_ref(&**b), m, u)?)?)?,
            (Spine::App(v, s), Neg::Imp(b, c)) => UDeriv::ImpL {
                principal: erase_neg(a),
                arg: Box::new(self.value(v, b)?),
                body: Box::new(self.spine(s, c, u)?),
            },
            (Spine::Pi1(s, _), Neg::And(a1, _)) => {
                UDeriv::AndL1 { principal: erase_neg(a), premise: Box::new(self.spine(s, a1, u)?) }
            }
            (Spine::Pi2(s, _), Neg::And(_, a2)) => {
                UDeriv::AndL2 { principal: erase_neg(a), premise: Box::new(self.spine(s, a2, u)?) }
            }
            _ => return unexpected(alloc::format!("spine {s} at {a}")),
        })
    }
}

/// De-focalization: a Ψ derivation of [`erased_sequent`]`(seq)`. Values and
/// spines, like terms with an empty Ω, give a nil node over a plain
/// derivation.
pub fn defocalize(seq: &Sequent, e: &Expr) -> R<UDeriv> {
    if !is_suspension_normal(&seq.ctx, &seq.succ) {
        return Err(TranslateError::NotSuspensionNormal(alloc::format!("{seq}")));
    }
    check(seq, e).map_err(TranslateError::Ill)?;
    let mut d = Defoc { ctx: seq.ctx.clone() };
    match (e, &seq.ante, &seq.succ) {
        (Expr::Value(v), _, Succedent::RFoc(a)) => Ok(UDeriv::PsiNil(Box::new(d.value(v, a)?))),
        (Expr::Term(n), Ante::Omega(o), u) => d.term(o, n, u),
        (Expr::Spine(s), Ante::Focus(a), u) => Ok(UDeriv::PsiNil(Box::new(d.spine(s, a, u)?))),
        _ => unexpected("judgment shape"),
    }
}

struct Foc<'f> {
    fresh: &'f mut Fresh,
}

/// A hypothesis of `Γ` erasing to `p`, with double shifts peeled.
struct Found {
    name: Name,
    wrap: crate::admissible::NegWrap,
    inner: Neg,
}

impl Foc<'_> {
    fn find(&mut self, ctx: &Ctx, p: &UProp, fits: impl Fn(&Neg) -> bool) -> Option<Found> {
        for (x, h) in ctx.iter() {
            let Hyp::Neg(a) = h else { continue };
            if erase_neg(a) != *p {
                continue;
            }
            let mut trial = self.fresh.clone();
            let (inner, wrap) = shift_removal_neg(a, x, &mut trial);
            if fits(&inner) {
                *self.fresh = trial;
                return Some(Found { name: x.into(), wrap, inner });
            }
        }
        None
    }

    /// The context under the peeled hypothesis' inner name.
    fn extend(ctx: &Ctx, f: &Found) -> Ctx {
        let mut c = ctx.clone();
        for (_, b, a) in &f.wrap.layers {
            c.push(b.clone(), Hyp::Neg(a.clone()));
        }
        c
    }

    fn left(&mut self, ctx: &Ctx, u: &Succedent, principal: &UProp, fits: impl Fn(&Neg) -> bool) -> R<(Found, Ctx)> {
        match self.find(ctx, principal, fits) {
            Some(f) => {
                let c = Self::extend(ctx, &f);
                Ok((f, c))
            }
            None => Err(TranslateError::ErasureMismatch(alloc::format!(
                "no hypothesis of {ctx} fits the principal {principal} at {u}"
            ))),
        }
    }

    fn go(&mut self, d: &UDeriv, ctx: &Ctx, u: &Succedent) -> R<Term> {
        if let Succedent::SPos(a) = u {
            let (b, wrap) = shift_removal_pos(a);
            if wrap.depth > 0 {
                return Ok(wrap.apply(self.go(d, ctx, &Succedent::SPos(b))?));
            }
        }
        let goal_pos = match u {
            Succedent::SPos(a) => Some(a),
            _ => None,
        };
        let mismatch = |what: &str| {
            Err(TranslateError::ErasureMismatch(alloc::format!("{what} does not fit the goal {u}")))
        };
        let wrap_left = |f: &Found, t: Term| f.wrap.apply(t);
        match d {
            UDeriv::PsiNil(d) => self.go(d, ctx, u),
            UDeriv::PsiCons(_) => unexpected("cons in a plain derivation"),
            UDeriv::Init(p) => {
                let atom = UProp::Atom(p.clone());
                match u {
                    Succedent::SuspNeg(_) => {
                        let (f, c) = self.left(ctx, u, &atom, |a| a.is_atom())?;
                        let x: String = f.wrap.inner(&f.name).into();
                        Ok(wrap_left(&f, adm(RuleId::InitSuspNeg, &c, u, &Args::on(&x), self.fresh)?))
                    }
                    Succedent::SPos(Pos::Atom(_)) => {
                        for (z, h) in ctx.iter() {
                            if let Hyp::Susp(a) = h {
                                if Succedent::SPos(a.clone()) == *u {
                                    return Ok(adm(RuleId::InitSuspPos, ctx, u, &Args::on(z), self.fresh)?);
                                }
                            }
                        }
                        let (f, c) = self.left(ctx, u, &atom, |a| matches!(a, Neg::Up(b) if b.is_atom()))?;
                        let x: String = f.wrap.inner(&f.name).into();
                        Ok(wrap_left(&f, adm(RuleId::InitPos, &c, u, &Args::on(&x), self.fresh)?))
                    }
                    Succedent::SPos(Pos::Down(n)) if n.is_atom() => {
                        let (f, c) = self.left(ctx, u, &atom, |a| a.is_atom())?;
                        let x: String = f.wrap.inner(&f.name).into();
                        Ok(wrap_left(&f, adm(RuleId::InitNeg, &c, u, &Args::on(&x), self.fresh)?))
                    }
                    _ => mismatch("init"),
                }
            }
            UDeriv::BotL => {
                let (f, c) = self.left(ctx, u, &UProp::Bot, |a| matches!(a, Neg::Up(b) if **b == Pos::Zero))?;
                let x: String = f.wrap.inner(&f.name).into();
                Ok(wrap_left(&f, adm(RuleId::BotUL, &c, u, &Args::on(&x), self.fresh)?))
            }
            UDeriv::OrR1(d1) | UDeriv::OrR2(d1) => {
                let Some(Pos::Or(a, b)) = goal_pos else { return mismatch("a right disjunction rule") };
                let (rule, side) = match d {
                    UDeriv::OrR1(_) => (RuleId::OrUR1, a),
                    _ => (RuleId::OrUR2, b),
                };
                let n = self.go(d1, ctx, &Succedent::SPos((**side).clone()))?;
                Ok(adm(rule, ctx, u, &Args::none().premise(Premise::new(n)), self.fresh)?)
            }
            UDeriv::TopR => match goal_pos {
                Some(Pos::One) => Ok(adm(RuleId::TopPosUR, ctx, u, &Args::none(), self.fresh)?),
                Some(Pos::Down(n)) if **n == Neg::Top => Ok(adm(RuleId::TopNegUR, ctx, u, &Args::none(), self.fresh)?),
                _ => mismatch("truth"),
            },
            UDeriv::AndR(d1, d2) => {
                let (rule, u1, u2) = match goal_pos {
                    Some(Pos::And(a, b)) => (RuleId::AndPosUR, Succedent::SPos((**a).clone()), Succedent::SPos((**b).clone())),
                    Some(Pos::Down(n)) => match &**n {
                        Neg::And(a, b) => (
                            RuleId::AndNegUR,
                            Succedent::SPos(Pos::down((**a).clone())),
                            Succedent::SPos(Pos::down((**b).clone())),
                        ),
                        _ => return mismatch("a right conjunction rule"),
                    },
                    _ => return mismatch("a right conjunction rule"),
                };
                let n1 = self.go(d1, ctx, &u1)?;
                let n2 = self.go(d2, ctx, &u2)?;
                Ok(adm(rule, ctx, u, &Args::none().premise(Premise::new(n1)).premise(Premise::new(n2)), self.fresh)?)
            }
            UDeriv::ImpR(d1) => {
                let Some(Pos::Down(n)) = goal_pos else { return mismatch("a right implication rule") };
                let Neg::Imp(a, b) = &**n else { return mismatch("a right implication rule") };
                let x1 = self.fresh.name("x");
                let c = ctx.clone().with(&x1, Hyp::Neg(Neg::up((**a).clone())));
                let n1 = self.go(d1, &c, &Succedent::SPos(Pos::down((**b).clone())))?;
                Ok(adm(RuleId::ImpUR, ctx, u, &Args::none().premise(Premise::bind(&[&x1], n1)), self.fresh)?)
            }
            UDeriv::OrL { principal, left, right } => {
                let (f, c) = self.left(ctx, u, principal, |a| matches!(a, Neg::Up(b) if matches!(**b, Pos::Or(..))))?;
                let Neg::Up(b) = &f.inner else { unreachable!() };
                let Pos::Or(a1, a2) = &**b else { unreachable!() };
                let x1 = self.fresh.name("x");
                let x2 = self.fresh.name("x");
                let n1 = self.go(left, &c.clone().with(&x1, Hyp::Neg(Neg::up((**a1).clone()))), u)?;
                let n2 = self.go(right, &c.clone().with(&x2, Hyp::Neg(Neg::up((**a2).clone()))), u)?;
                let x: String = f.wrap.inner(&f.name).into();
                let args = Args::on(&x).premise(Premise::bind(&[&x1], n1)).premise(Premise::bind(&[&x2], n2));
                Ok(wrap_left(&f, adm(RuleId::OrUL, &c, u, &args, self.fresh)?))
            }
            UDeriv::AndL1 { principal, premise } | UDeriv::AndL2 { principal, premise } => {
                let first = matches!(d, UDeriv::AndL1 { .. });
                let (f, c) = self.left(ctx, u, principal, |a| {
                    matches!(a, Neg::And(..)) || matches!(a, Neg::Up(b) if matches!(**b, Pos::And(..)))
                })?;
                let x: String = f.wrap.inner(&f.name).into();
                let t = match &f.inner {
                    Neg::And(a1, a2) => {
                        let x1 = self.fresh.name("x");
                        let side = if first { a1 } else { a2 };
                        let n1 = self.go(premise, &c.clone().with(&x1, Hyp::Neg((**side).clone())), u)?;
                        let rule = if first { RuleId::AndNegUL1 } else { RuleId::AndNegUL2 };
                        adm(rule, &c, u, &Args::on(&x).premise(Premise::bind(&[&x1], n1)), self.fresh)?
                    }
                    Neg::Up(b) => {
                        let Pos::And(a1, a2) = &**b else { unreachable!() };
                        let x1 = self.fresh.name("x");
                        let x2 = self.fresh.name("x");
                        let c2 = c
                            .clone()
                            .with(&x1, Hyp::Neg(Neg::up((**a1).clone())))
                            .with(&x2, Hyp::Neg(Neg::up((**a2).clone())));
                        let n1 = self.go(premise, &c2, u)?;
                        adm(RuleId::AndPosUL, &c, u, &Args::on(&x).premise(Premise::bind(&[&x1, &x2], n1)), self.fresh)?
                    }
                    _ => unreachable!(),
                };
                Ok(wrap_left(&f, t))
            }
            UDeriv::ImpL { principal, arg, body } => {
                let (f, c) = self.left(ctx, u, principal, |a| matches!(a, Neg::Imp(..)))?;
                let Neg::Imp(a, b) = &f.inner else { unreachable!() };
                let n1 = self.go(arg, &c, &Succedent::SPos((**a).clone()))?;
                let x2 = self.fresh.name("x");
                let n2 = self.go(body, &c.clone().with(&x2, Hyp::Neg((**b).clone())), u)?;
                let x: String = f.wrap.inner(&f.name).into();
                let args = Args::on(&x).premise(Premise::new(n1)).premise(Premise::bind(&[&x2], n2));
                Ok(wrap_left(&f, adm(RuleId::ImpUL, &c, u, &args, self.fresh)?))
            }
        }
    }
}

/// Focalization: a term for `Γ; · ⊢ U` from a derivation of `Γ⊛ ⊢ U⊛`.
pub fn focalize(d: &UDeriv, ctx: &Ctx, u: &Succedent, fresh: &mut Fresh) -> R<Term> {
    if !is_stable(u) {
        return Err(TranslateError::NotStable(alloc::format!("{u}")));
    }
    if !is_suspension_normal(ctx, u) {
        return Err(TranslateError::NotSuspensionNormal(alloc::format!("{ctx} ⊢ {u}")));
    }
    let s = USequent::plain(erase_ctx(ctx)?, erase_succ(u)?);
    if let Err(e) = check_uderiv(&s, d) {
        return Err(TranslateError::ErasureMismatch(alloc::format!("{e}")));
    }
    for (x, _) in ctx.iter() {
        fresh.reserve(x);
    }
    Foc { fresh }.go(d, ctx, u)
}

fn check_at(s: &USequent, d: &UDeriv) -> R<()> {
    check_uderiv(s, d).map_err(|e: RuleMismatch| TranslateError::CheckFailure(alloc::format!("{e}")))
}

/// The all-negative polarization of a context, one hypothesis per distinct
/// proposition.
fn polarize_ctx(gamma: &crate::unfocused::Multiset, fresh: &mut Fresh) -> Ctx {
    let mut ctx = Ctx::new();
    for (p, _) in gamma.iter() {
        let h = fresh.name("h");
        ctx.push(h, Hyp::Neg(polarize(p, Strategy::AllNeg)));
    }
    ctx
}

/// From derivations of `Γ ⊢ P` and `Γ, P ⊢ Q`, a derivation of `Γ ⊢ Q`.
pub fn unfocused_cut(gamma: &crate::unfocused::Multiset, p: &UProp, q: &UProp, d1: &UDeriv, d2: &UDeriv) -> R<UDeriv> {
    check_at(&USequent::plain(gamma.clone(), p.clone()), d1)?;
    check_at(&USequent::plain(gamma.with(p.clone()), q.clone()), d2)?;
    let mut fresh = Fresh::new();
    let ctx = polarize_ctx(gamma, &mut fresh);
    let pn = polarize(p, Strategy::AllNeg);
    let qn = polarize(q, Strategy::AllNeg);
    let x = fresh.name("x");
    let u1 = Succedent::SPos(Pos::down(pn.clone()));
    let u2 = Succedent::SPos(Pos::down(qn));
    let n1 = focalize(d1, &ctx, &u1, &mut fresh)?;
    let n2 = focalize(d2, &ctx.clone().with(&x, Hyp::Neg(pn.clone())), &u2, &mut fresh)?;
    let cut = Cutter::new(&mut fresh).lsubst_term(&n1, &Pos::down(pn.clone()), &Term::let_down(&x, pn, n2))?;
    let seq = Sequent::term(ctx, Vec::new(), u2);
    let d = defocalize(&seq, &Expr::Term(cut))?;
    let d = strip_nil(d)?;
    check_at(&USequent::plain(gamma.clone(), q.clone()), &d)?;
    Ok(d)
}

/// A derivation of `P ⊢ P` obtained from the negative identity principle.
pub fn unfocused_identity(p: &UProp) -> R<UDeriv> {
    let mut fresh = Fresh::new();
    let a = polarize(p, Strategy::AllNeg);
    let ctx = Ctx::new().with("x", Hyp::Neg(a.clone()));
    let n = id_neg(&a, "x", &mut fresh);
    let seq = Sequent::term(ctx, Vec::new(), Succedent::INeg(a));
    let d = strip_nil(defocalize(&seq, &Expr::Term(n))?)?;
    check_at(&USequent::plain(core::iter::once(p.clone()).collect(), p.clone()), &d)?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::check_term;
    use crate::syntax::{parse_neg, parse_uprop};

    fn p0() -> UProp {
        parse_uprop("(p /\\ q) -> (r /\\ s) -> (p /\\ r)").unwrap()
    }

    fn p0_derivation() -> UDeriv {
        let pq = parse_uprop("p /\\ q").unwrap();
        let rs = parse_uprop("r /\\ s").unwrap();
        UDeriv::ImpR(Box::new(UDeriv::ImpR(Box::new(UDeriv::AndR(
            Box::new(UDeriv::AndL1 { principal: pq, premise: Box::new(UDeriv::Init("p".into())) }),
            Box::new(UDeriv::AndL1 { principal: rs, premise: Box::new(UDeriv::Init("r".into())) }),
        )))))
    }

    fn term1() -> Term {
        let pq = parse_neg("p- & q-").unwrap();
        let rs = parse_neg("r- & s-").unwrap();
        Term::lam(Term::let_down(
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
        ))
    }

    #[test]
    fn defocalize_unit() {
        let seq = Sequent::term(Ctx::new(), Vec::new(), Succedent::SPos(Pos::One));
        let d = defocalize(&seq, &Expr::Term(Term::RFoc(Value::UnitP))).unwrap();
        assert_eq!(d, UDeriv::PsiNil(Box::new(UDeriv::TopR)));
    }

    #[test]
    fn defocalize_conjunction_projection() {
        let a1 = parse_neg("dn(p- & q-) -> dn(r- & s-) -> (p- & r-)").unwrap();
        let seq = Sequent::term(Ctx::new(), Vec::new(), Succedent::INeg(a1));
        let d = defocalize(&seq, &Expr::Term(term1())).unwrap();
        check_uderiv(&erased_sequent(&seq).unwrap(), &d).unwrap();
        check_uderiv(&USequent::plain(Default::default(), p0()), &d.unwrap_nil()).unwrap();
    }

    #[test]
    fn defocalize_left_inversion() {
        let ctx = Ctx::new().with("x", Hyp::Neg(Neg::up(Pos::atom("p"))));
        let t = Term::lfoc("x", Spine::match_(Term::suspend_p("z", Pos::atom("p"), Term::RFoc(Value::var("z")))));
        let seq = Sequent::term(ctx, Vec::new(), Succedent::SPos(Pos::atom("p")));
        let d = defocalize(&seq, &Expr::Term(t)).unwrap();
        check_uderiv(&erased_sequent(&seq).unwrap(), &d).unwrap();
    }

    #[test]
    fn focalize_examples() {
        let mut f = Fresh::new();
        let t = focalize(&UDeriv::TopR, &Ctx::new(), &Succedent::SPos(Pos::One), &mut f).unwrap();
        assert_eq!(t, Term::RFoc(Value::UnitP));
        let ctx = Ctx::new().with("x", Hyp::Neg(Neg::up(Pos::atom("p"))));
        let u = Succedent::SPos(Pos::atom("p"));
        let t = focalize(&UDeriv::Init("p".into()), &ctx, &u, &mut f).unwrap();
        let want = Term::lfoc("x", Spine::match_(Term::suspend_p("z", Pos::atom("p"), Term::RFoc(Value::var("z")))));
        assert!(crate::kernel::alpha_eq(&t, &want), "{t}");
        for text in ["(p+ * q+) -> (r+ * s+) -> up(p+ * r+)", "dn(p- & q-) -> dn(r- & s-) -> (p- & r-)"] {
            let a = parse_neg(text).unwrap();
            let u = Succedent::SPos(Pos::down(a));
            let t = focalize(&p0_derivation(), &Ctx::new(), &u, &mut f).unwrap();
            check_term(&Ctx::new(), &[], &t, &u).unwrap();
        }
        let r = focalize(&UDeriv::TopR, &Ctx::new(), &Succedent::SPos(Pos::Zero), &mut f);
        assert!(matches!(r, Err(TranslateError::ErasureMismatch(_))));
    }

    #[test]
    fn corollaries() {
        for text in ["p", "false", "(p /\\ q) -> (r /\\ s) -> (p /\\ r)", "p \\/ (q -> false)", "true /\\ (p \\/ q)"] {
            let p = parse_uprop(text).unwrap();
            unfocused_identity(&p).unwrap();
        }
        let p = UProp::atom("p");
        let gamma: crate::unfocused::Multiset = core::iter::once(p.clone()).collect();
        let d = unfocused_cut(&gamma, &p, &p, &UDeriv::Init("p".into()), &UDeriv::Init("p".into())).unwrap();
        check_uderiv(&USequent::plain(gamma.clone(), p.clone()), &d).unwrap();
        let d2 = UDeriv::Init("p".into());
        let d = unfocused_cut(&gamma, &UProp::Top, &p, &UDeriv::TopR, &d2).unwrap();
        check_uderiv(&USequent::plain(gamma, p), &d).unwrap();
    }
}
