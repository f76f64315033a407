use crate::kernel::{Ctx, Expr, Hyp, Name, Spine, Term, Value};
use crate::syntax::{Neg, Pos, Succedent};
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

/// Orders the alternatives at a choice point.
pub trait Chooser {
    /// A permutation of `0..n`.
    fn order(&mut self, n: usize) -> Vec<usize>;
}

/// Alternatives in their natural order.
pub struct InOrder;

impl Chooser for InOrder {
    fn order(&mut self, n: usize) -> Vec<usize> {
        (0..n).collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub stable_visited: usize,
    pub prunes: usize,
}

/// The result algebra of a search.
pub(crate) trait Out: Sized {
    /// Stop exploring alternatives after the first success.
    const FIRST: bool;
    fn none() -> Self;
    fn leaf(e: impl FnOnce() -> Expr) -> Self;
    fn found(&self) -> bool;
    fn add(&mut self, other: Self);
    fn map(self, f: impl FnOnce(Expr) -> Expr) -> Self;
    fn zip(self, other: impl FnOnce() -> Self, f: impl FnOnce(Expr, Expr) -> Expr) -> Self;
}

impl Out for Option<Expr> {
    const FIRST: bool = true;
    fn none() -> Self {
        None
    }
    fn leaf(e: impl FnOnce() -> Expr) -> Self {
        Some(e())
    }
    fn found(&self) -> bool {
        self.is_some()
    }
    fn add(&mut self, other: Self) {
        if self.is_none() {
            *self = other;
        }
    }
    fn map(self, f: impl FnOnce(Expr) -> Expr) -> Self {
        self.map(f)
    }
    fn zip(self, other: impl FnOnce() -> Self, f: impl FnOnce(Expr, Expr) -> Expr) -> Self {
        let a = self?;
        let b = other()?;
        Some(f(a, b))
    }
}

/// A saturating derivation count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Tally(pub u128);

impl Out for Tally {
    const FIRST: bool = false;
    fn none() -> Self {
        Tally(0)
    }
    fn leaf(_: impl FnOnce() -> Expr) -> Self {
        Tally(1)
    }
    fn found(&self) -> bool {
        self.0 > 0
    }
    fn add(&mut self, other: Self) {
        self.0 = self.0.saturating_add(other.0);
    }
    fn map(self, _: impl FnOnce(Expr) -> Expr) -> Self {
        self
    }
    fn zip(self, other: impl FnOnce() -> Self, _: impl FnOnce(Expr, Expr) -> Expr) -> Self {
        if self.0 == 0 {
            return self;
        }
        Tally(self.0.saturating_mul(other().0))
    }
}

fn term(e: Expr) -> Term {
    match e {
        Expr::Term(t) => t,
        _ => unreachable!("search produced a non-term"),
    }
}

fn value(e: Expr) -> Value {
    match e {
        Expr::Value(v) => v,
        _ => unreachable!("search produced a non-value"),
    }
}

fn spine(e: Expr) -> Spine {
    match e {
        Expr::Spine(s) => s,
        _ => unreachable!("search produced a non-spine"),
    }
}

type Canon = (BTreeSet<Hyp>, Succedent);

pub(crate) struct Search<'c> {
    pub ctx: Ctx,
    path: Vec<Canon>,
    pub stats: Stats,
    pub budget: Option<usize>,
    pub exhausted: bool,
    counter: usize,
    taken: BTreeSet<Name>,
    chooser: &'c mut dyn Chooser,
}

impl<'c> Search<'c> {
    pub fn new(ctx: Ctx, budget: Option<usize>, chooser: &'c mut dyn Chooser) -> Self {
        let taken = ctx.iter().map(|(x, _)| String::from(x)).collect();
        Search { ctx, path: Vec::new(), stats: Stats::default(), budget, exhausted: false, counter: 0, taken, chooser }
    }

    fn name(&mut self, base: &str) -> Name {
        loop {
            self.counter += 1;
            let n = alloc::format!("{base}{}", self.counter);
            if !self.taken.contains(&n) {
                return n;
            }
        }
    }

    fn bind<O>(&mut self, x: &str, h: Hyp, f: impl FnOnce(&mut Self) -> O) -> O {
        self.ctx.push(x.into(), h);
        let out = f(self);
        self.ctx.pop();
        out
    }

    /// `Γ; Ω ⊢ U`, inverting deterministically.
    pub fn term<O: Out>(&mut self, omega: &[Pos], u: &Succedent) -> O {
        if self.exhausted {
            return O::none();
        }
        if let Some((head, tail)) = omega.split_first() {
            return match head {
                Pos::Atom(_) => {
                    let z = self.name("z");
                    let a = head.clone();
                    self.bind(&z, Hyp::Susp(a.clone()), |s| s.term::<O>(tail, u))
                        .map(|n| Expr::Term(Term::suspend_p(&z, a, term(n))))
                }
                Pos::Down(a) => {
                    let x = self.name("x");
                    let a = (**a).clone();
                    self.bind(&x, Hyp::Neg(a.clone()), |s| s.term::<O>(tail, u))
                        .map(|n| Expr::Term(Term::let_down(&x, a, term(n))))
                }
                Pos::Zero => O::leaf(|| Expr::Term(Term::Abort)),
                Pos::Or(a, b) => {
                    let mut left = alloc::vec![(**a).clone()];
                    left.extend_from_slice(tail);
                    let mut right = alloc::vec![(**b).clone()];
                    right.extend_from_slice(tail);
                    self.term::<O>(&left, u).zip(
                        || self.term::<O>(&right, u),
                        |l, r| Expr::Term(Term::case(term(l), term(r))),
                    )
                }
                Pos::One => self.term::<O>(tail, u).map(|n| Expr::Term(Term::let_unit(term(n)))),
                Pos::And(a, b) => {
                    let mut o = alloc::vec![(**a).clone(), (**b).clone()];
                    o.extend_from_slice(tail);
                    self.term::<O>(&o, u).map(|n| Expr::Term(Term::split(term(n))))
                }
            };
        }
        match u {
            Succedent::INeg(a) => match a {
                Neg::Atom(_) => self
                    .term::<O>(&[], &Succedent::SuspNeg(a.clone()))
                    .map(|n| Expr::Term(Term::suspend_n(term(n)))),
                Neg::Up(b) => {
                    self.term::<O>(&[], &Succedent::SPos((**b).clone())).map(|n| Expr::Term(Term::ret(term(n))))
                }
                Neg::Imp(b, c) => self
                    .term::<O>(core::slice::from_ref(&**b), &Succedent::INeg((**c).clone()))
                    .map(|n| Expr::Term(Term::lam(term(n)))),
                Neg::Top => O::leaf(|| Expr::Term(Term::UnitN)),
                Neg::And(b, c) => self.term::<O>(&[], &Succedent::INeg((**b).clone())).zip(
                    || self.term::<O>(&[], &Succedent::INeg((**c).clone())),
                    |l, r| Expr::Term(Term::pair(term(l), term(r))),
                ),
            },
            Succedent::SPos(_) | Succedent::SuspNeg(_) => self.stable::<O>(u),
            Succedent::RFoc(_) => O::none(),
        }
    }

    fn canon(&self, u: &Succedent) -> Canon {
        (self.ctx.iter().map(|(_, h)| h.clone()).collect(), u.clone())
    }

    fn stable<O: Out>(&mut self, u: &Succedent) -> O {
        if let Some(b) = self.budget {
            if self.stats.stable_visited >= b {
                self.exhausted = true;
                return O::none();
            }
        }
        self.stats.stable_visited += 1;
        let key = self.canon(u);
        if self.path.contains(&key) {
            self.stats.prunes += 1;
            return O::none();
        }
        enum Choice {
            Right(Pos),
            Left(Name, Neg),
        }
        let mut choices = Vec::new();
        if let Succedent::SPos(a) = u {
            choices.push(Choice::Right(a.clone()));
        }
        for (x, h) in self.ctx.iter() {
            if let Hyp::Neg(a) = h {
                choices.push(Choice::Left(x.into(), a.clone()));
            }
        }
        let order = self.chooser.order(choices.len());
        self.path.push(key);
        let mut acc = O::none();
        for i in order {
            if (O::FIRST && acc.found()) || self.exhausted {
                break;
            }
            let out = match &choices[i] {
                Choice::Right(a) => self.value::<O>(a).map(|v| Expr::Term(Term::RFoc(value(v)))),
                Choice::Left(x, a) => self.spine::<O>(a, u).map(|s| Expr::Term(Term::lfoc(x, spine(s)))),
            };
            acc.add(out);
        }
        self.path.pop();
        acc
    }

    fn pick<T: Clone, O: Out>(&mut self, alts: &[T], mut f: impl FnMut(&mut Self, &T) -> O) -> O {
        let order = self.chooser.order(alts.len());
        let mut acc = O::none();
        for i in order {
            if (O::FIRST && acc.found()) || self.exhausted {
                break;
            }
            acc.add(f(self, &alts[i]));
        }
        acc
    }

    /// `Γ ⊢ [A+]`.
    pub fn value<O: Out>(&mut self, a: &Pos) -> O {
        if self.exhausted {
            return O::none();
        }
        match a {
            Pos::Atom(_) => {
                let zs: Vec<Name> = self
                    .ctx
                    .iter()
                    .filter(|(_, h)| matches!(h, Hyp::Susp(b) if b == a))
                    .map(|(z, _)| z.into())
                    .collect();
                self.pick(&zs, |_, z| O::leaf(|| Expr::Value(Value::var(z))))
            }
            Pos::Down(b) => {
                self.term::<O>(&[], &Succedent::INeg((**b).clone())).map(|n| Expr::Value(Value::thunk(term(n))))
            }
            Pos::Zero => O::none(),
            Pos::Or(b, c) => self.pick(&[true, false], |s, &left| {
                if left {
                    s.value::<O>(b).map(|v| Expr::Value(Value::inl(value(v), (**c).clone())))
                } else {
                    s.value::<O>(c).map(|v| Expr::Value(Value::inr(value(v), (**b).clone())))
                }
            }),
            Pos::One => O::leaf(|| Expr::Value(Value::UnitP)),
            Pos::And(b, c) => self
                .value::<O>(b)
                .zip(|| self.value::<O>(c), |l, r| Expr::Value(Value::pair(value(l), value(r)))),
        }
    }

    /// `Γ; [A-] ⊢ U`.
    pub fn spine<O: Out>(&mut self, a: &Neg, u: &Succedent) -> O {
        if self.exhausted {
            return O::none();
        }
        match a {
            Neg::Atom(_) => {
                if *u == Succedent::SuspNeg(a.clone()) {
                    O::leaf(|| Expr::Spine(Spine::Nil))
                } else {
                    O::none()
                }
            }
            Neg::Up(b) => {
                self.term::<O>(core::slice::from_ref(&**b), u).map(|n| Expr::Spine(Spine::match_(term(n))))
            }
            Neg::Imp(b, c) => self
                .value::<O>(b)
                .zip(|| self.spine::<O>(c, u), |v, s| Expr::Spine(Spine::app(value(v), spine(s)))),
            Neg::Top => O::none(),
            Neg::And(b, c) => self.pick(&[true, false], |s, &first| {
                if first {
                    s.spine::<O>(b, u).map(|t| Expr::Spine(Spine::pi1(spine(t), (**c).clone())))
                } else {
                    s.spine::<O>(c, u).map(|t| Expr::Spine(Spine::pi2(spine(t), (**b).clone())))
                }
            }),
        }
    }
}
