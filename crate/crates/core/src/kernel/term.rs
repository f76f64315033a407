use crate::syntax::{Neg, Pos};
use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Name = String;

/// Right-focus proof terms, `Γ ⊢ V : [A+]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Var(Name),
    Thunk(Box<Term>),
    /// The annotation is the right disjunct.
    Inl(Box<Value>, Pos),
    /// The annotation is the left disjunct.
    Inr(Box<Value>, Pos),
    UnitP,
    PairP(Box<Value>, Box<Value>),
}

/// Inversion and stable proof terms, `Γ; Ω ⊢ N : U`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    RFoc(Value),
    LFoc(Name, Spine),
    SuspendP(Name, Pos, Box<Term>),
    LetDown(Name, Neg, Box<Term>),
    Abort,
    Case(Box<Term>, Box<Term>),
    LetUnit(Box<Term>),
    Split(Box<Term>),
    SuspendN(Box<Term>),
    Ret(Box<Term>),
    Lam(Box<Term>),
    UnitN,
    PairN(Box<Term>, Box<Term>),
}

/// Left-focus proof terms, `Γ; [A-] ⊢ S : U`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Spine {
    Nil,
    Match(Box<Term>),
    App(Value, Box<Spine>),
    /// The annotation is the right conjunct.
    Pi1(Box<Spine>, Neg),
    /// The annotation is the left conjunct.
    Pi2(Box<Spine>, Neg),
}

/// Any of the three syntactic sorts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    Value(Value),
    Term(Term),
    Spine(Spine),
}

impl Value {
    pub fn var(z: &str) -> Self {
        Value::Var(z.into())
    }
    pub fn thunk(n: Term) -> Self {
        Value::Thunk(Box::new(n))
    }
    pub fn inl(v: Value, other: Pos) -> Self {
        Value::Inl(Box::new(v), other)
    }
    pub fn inr(v: Value, other: Pos) -> Self {
        Value::Inr(Box::new(v), other)
    }
    pub fn pair(a: Value, b: Value) -> Self {
        Value::PairP(Box::new(a), Box::new(b))
    }
}

impl Term {
    pub fn lfoc(x: &str, s: Spine) -> Self {
        Term::LFoc(x.into(), s)
    }
    pub fn suspend_p(z: &str, a: Pos, n: Term) -> Self {
        Term::SuspendP(z.into(), a, Box::new(n))
    }
    pub fn let_down(x: &str, a: Neg, n: Term) -> Self {
        Term::LetDown(x.into(), a, Box::new(n))
    }
    pub fn case(a: Term, b: Term) -> Self {
        Term::Case(Box::new(a), Box::new(b))
    }
    pub fn let_unit(n: Term) -> Self {
        Term::LetUnit(Box::new(n))
    }
    pub fn split(n: Term) -> Self {
        Term::Split(Box::new(n))
    }
    pub fn suspend_n(n: Term) -> Self {
        Term::SuspendN(Box::new(n))
    }
    pub fn ret(n: Term) -> Self {
        Term::Ret(Box::new(n))
    }
    pub fn lam(n: Term) -> Self {
        Term::Lam(Box::new(n))
    }
    pub fn pair(a: Term, b: Term) -> Self {
        Term::PairN(Box::new(a), Box::new(b))
    }
}

impl Spine {
    pub fn match_(n: Term) -> Self {
        Spine::Match(Box::new(n))
    }
    pub fn app(v: Value, s: Spine) -> Self {
        Spine::App(v, Box::new(s))
    }
    pub fn pi1(s: Spine, other: Neg) -> Self {
        Spine::Pi1(Box::new(s), other)
    }
    pub fn pi2(s: Spine, other: Neg) -> Self {
        Spine::Pi2(Box::new(s), other)
    }
}

// Sizes count constructors; annotations are not counted.

impl Value {
    pub fn size(&self) -> usize {
        match self {
            Value::Var(_) | Value::UnitP => 1,
            Value::Thunk(n) => 1 + n.size(),
            Value::Inl(v, _) | Value::Inr(v, _) => 1 + v.size(),
            Value::PairP(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl Term {
    pub fn size(&self) -> usize {
        match self {
            Term::RFoc(v) => 1 + v.size(),
            Term::LFoc(_, s) => 1 + s.size(),
            Term::SuspendP(_, _, n)
            | Term::LetDown(_, _, n)
            | Term::LetUnit(n)
            | Term::Split(n)
            | Term::SuspendN(n)
            | Term::Ret(n)
            | Term::Lam(n) => 1 + n.size(),
            Term::Abort | Term::UnitN => 1,
            Term::Case(a, b) | Term::PairN(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl Spine {
    pub fn size(&self) -> usize {
        match self {
            Spine::Nil => 1,
            Spine::Match(n) => 1 + n.size(),
            Spine::App(v, s) => 1 + v.size() + s.size(),
            Spine::Pi1(s, _) | Spine::Pi2(s, _) => 1 + s.size(),
        }
    }
}

impl Expr {
    pub fn size(&self) -> usize {
        match self {
            Expr::Value(v) => v.size(),
            Expr::Term(n) => n.size(),
            Expr::Spine(s) => s.size(),
        }
    }
}

/// Collects free and all variable names.
#[derive(Default)]
pub(crate) struct Names {
    bound: Vec<Name>,
    pub free: BTreeSet<Name>,
    pub all: BTreeSet<Name>,
}

impl Names {
    fn occur(&mut self, x: &str) {
        if !self.bound.iter().any(|b| b == x) {
            self.free.insert(x.into());
        }
        self.all.insert(x.into());
    }

    fn bind(&mut self, x: &str, f: impl FnOnce(&mut Self)) {
        self.all.insert(x.into());
        self.bound.push(x.into());
        f(self);
        self.bound.pop();
    }

    pub fn value(&mut self, v: &Value) {
        match v {
            Value::Var(z) => self.occur(z),
            Value::Thunk(n) => self.term(n),
            Value::Inl(v, _) | Value::Inr(v, _) => self.value(v),
            Value::UnitP => {}
            Value::PairP(a, b) => {
                self.value(a);
                self.value(b);
            }
        }
    }

    pub fn term(&mut self, n: &Term) {
        match n {
            Term::RFoc(v) => self.value(v),
            Term::LFoc(x, s) => {
                self.occur(x);
                self.spine(s);
            }
            Term::SuspendP(z, _, n) | Term::LetDown(z, _, n) => self.bind(z, |me| me.term(n)),
            Term::LetUnit(n) | Term::Split(n) | Term::SuspendN(n) | Term::Ret(n) | Term::Lam(n) => self.term(n),
            Term::Abort | Term::UnitN => {}
            Term::Case(a, b) | Term::PairN(a, b) => {
                self.term(a);
                self.term(b);
            }
        }
    }

    pub fn spine(&mut self, s: &Spine) {
        match s {
            Spine::Nil => {}
            Spine::Match(n) => self.term(n),
            Spine::App(v, s) => {
                self.value(v);
                self.spine(s);
            }
            Spine::Pi1(s, _) | Spine::Pi2(s, _) => self.spine(s),
        }
    }

    pub fn expr(&mut self, e: &Expr) {
        match e {
            Expr::Value(v) => self.value(v),
            Expr::Term(n) => self.term(n),
            Expr::Spine(s) => self.spine(s),
        }
    }
}

pub fn free_vars_value(v: &Value) -> BTreeSet<Name> {
    let mut n = Names::default();
    n.value(v);
    n.free
}

pub fn free_vars_term(t: &Term) -> BTreeSet<Name> {
    let mut n = Names::default();
    n.term(t);
    n.free
}

pub fn free_vars_spine(s: &Spine) -> BTreeSet<Name> {
    let mut n = Names::default();
    n.spine(s);
    n.free
}

pub fn free_vars(e: &Expr) -> BTreeSet<Name> {
    let mut n = Names::default();
    n.expr(e);
    n.free
}

/// Every variable name occurring in `e`, bound or free.
pub fn all_names(e: &Expr) -> BTreeSet<Name> {
    let mut n = Names::default();
    n.expr(e);
    n.all
}

/// An explicit supply of fresh names. Generated names have the form
/// `base'k`; [`Fresh::reserve`] keeps the counter above any such suffix
/// already in use.
#[derive(Clone, Debug, Default)]
pub struct Fresh {
    next: u64,
}

impl Fresh {
    pub fn new() -> Self {
        Fresh { next: 0 }
    }

    pub fn starting_at(next: u64) -> Self {
        Fresh { next }
    }

    pub fn name(&mut self, base: &str) -> Name {
        let stem = match base.find('\'') {
            Some(i) => &base[..i],
            None => base,
        };
        self.next += 1;
        alloc::format!("{stem}'{}", self.next)
    }

    pub fn reserve(&mut self, name: &str) {
        if let Some((_, k)) = name.rsplit_once('\'') {
            if let Ok(k) = k.parse::<u64>() {
                self.next = self.next.max(k);
            }
        }
    }

    pub fn reserve_expr(&mut self, e: &Expr) {
        for n in all_names(e) {
            self.reserve(&n);
        }
    }
}

/// Rename every binder to a canonical name determined by its position.
struct Canon {
    env: Vec<(Name, Name)>,
    depth: usize,
}

impl Canon {
    fn get(&self, x: &str) -> Name {
        match self.env.iter().rev().find(|(a, _)| a == x) {
            Some((_, b)) => b.clone(),
            None => x.into(),
        }
    }

    fn bind<T>(&mut self, x: &str, f: impl FnOnce(&mut Self) -> T) -> (Name, T) {
        self.depth += 1;
        let fresh = alloc::format!("#{}", self.depth);
        self.env.push((x.into(), fresh.clone()));
        let out = f(self);
        self.env.pop();
        self.depth -= 1;
        (fresh, out)
    }

    fn value(&mut self, v: &Value) -> Value {
        match v {
            Value::Var(z) => Value::Var(self.get(z)),
            Value::Thunk(n) => Value::thunk(self.term(n)),
            Value::Inl(v, b) => Value::inl(self.value(v), b.clone()),
            Value::Inr(v, a) => Value::inr(self.value(v), a.clone()),
            Value::UnitP => Value::UnitP,
            Value::PairP(a, b) => Value::pair(self.value(a), self.value(b)),
        }
    }

    fn term(&mut self, n: &Term) -> Term {
        match n {
            Term::RFoc(v) => Term::RFoc(self.value(v)),
            Term::LFoc(x, s) => Term::LFoc(self.get(x), self.spine(s)),
            Term::SuspendP(z, a, n) => {
                let (z, n) = self.bind(z, |me| me.term(n));
                Term::SuspendP(z, a.clone(), Box::new(n))
            }
            Term::LetDown(x, a, n) => {
                let (x, n) = self.bind(x, |me| me.term(n));
                Term::LetDown(x, a.clone(), Box::new(n))
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

    fn spine(&mut self, s: &Spine) -> Spine {
        match s {
            Spine::Nil => Spine::Nil,
            Spine::Match(n) => Spine::match_(self.term(n)),
            Spine::App(v, s) => Spine::app(self.value(v), self.spine(s)),
            Spine::Pi1(s, b) => Spine::pi1(self.spine(s), b.clone()),
            Spine::Pi2(s, a) => Spine::pi2(self.spine(s), a.clone()),
        }
    }
}

/// Equality up to renaming of bound variables.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    let mut ca = Canon { env: Vec::new(), depth: 0 };
    let mut cb = Canon { env: Vec::new(), depth: 0 };
    ca.term(a) == cb.term(b)
}

pub fn alpha_eq_expr(a: &Expr, b: &Expr) -> bool {
    let mut ca = Canon { env: Vec::new(), depth: 0 };
    let mut cb = Canon { env: Vec::new(), depth: 0 };
    match (a, b) {
        (Expr::Value(a), Expr::Value(b)) => ca.value(a) == cb.value(b),
        (Expr::Term(a), Expr::Term(b)) => ca.term(a) == cb.term(b),
        (Expr::Spine(a), Expr::Spine(b)) => ca.spine(a) == cb.spine(b),
        _ => false,
    }
}

/// Pretty-printing in the usual notation of focused proof terms:
/// `λ`, `x.N` for `↓L`, `η⁺z.N`, `η⁻(N)`, `{N}` for `↑R`, `↑L N`, `x·S`.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Var(z) => f.write_str(z),
            Value::Thunk(n) => write!(f, "↓({n})"),
            Value::Inl(v, _) => write!(f, "inl {}", Atomic(v)),
            Value::Inr(v, _) => write!(f, "inr {}", Atomic(v)),
            Value::UnitP => f.write_str("⟨⟩⁺"),
            Value::PairP(a, b) => write!(f, "⟨{a}, {b}⟩⁺"),
        }
    }
}

struct Atomic<'a>(&'a Value);

impl fmt::Display for Atomic<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Value::Inl(..) | Value::Inr(..) => write!(f, "({})", self.0),
            v => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::RFoc(v) => write!(f, "rft {}", Atomic(v)),
            Term::LFoc(x, Spine::Nil) => write!(f, "{x}·nil"),
            Term::LFoc(x, s) => write!(f, "{x}·({s})"),
            Term::SuspendP(z, _, n) => write!(f, "η⁺{z}.{n}"),
            Term::LetDown(x, _, n) => write!(f, "{x}.{n}"),
            Term::Abort => f.write_str("abort"),
            Term::Case(a, b) => write!(f, "[{a}, {b}]"),
            Term::LetUnit(n) => write!(f, "⟨⟩.{n}"),
            Term::Split(n) => write!(f, "×{n}"),
            Term::SuspendN(n) => write!(f, "η⁻({n})"),
            Term::Ret(n) => write!(f, "{{{n}}}"),
            Term::Lam(n) => write!(f, "λ{n}"),
            Term::UnitN => f.write_str("⟨⟩⁻"),
            Term::PairN(a, b) => write!(f, "⟨{a}, {b}⟩⁻"),
        }
    }
}

impl fmt::Display for Spine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spine::Nil => f.write_str("nil"),
            Spine::Match(n) => write!(f, "↑L({n})"),
            Spine::App(v, s) => write!(f, "{v}; {s}"),
            Spine::Pi1(s, _) => write!(f, "π1; {s}"),
            Spine::Pi2(s, _) => write!(f, "π2; {s}"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Value(v) => v.fmt(f),
            Expr::Term(n) => n.fmt(f),
            Expr::Spine(s) => s.fmt(f),
        }
    }
}
