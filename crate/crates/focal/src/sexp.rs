//! S-expression serialization of propositions, proof terms, contexts,
//! judgments and unfocused derivations.

use focal_core::kernel::{Ante, Ctx, Expr, Hyp, Sequent, Spine, Term, Value};
use focal_core::syntax::{Neg, Pos, Succedent, UProp};
use focal_core::unfocused::{Multiset, UDeriv, USequent};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Sym(String),
    List(Vec<Sexp>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SexpError {
    #[error("unexpected end of input")]
    Eof,
    #[error("unbalanced ')' at byte {0}")]
    Unbalanced(usize),
    #[error("trailing input at byte {0}")]
    Trailing(usize),
    #[error("expected {expected}, found {found}")]
    Shape { expected: &'static str, found: String },
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Sym(s) => f.write_str(s),
            Sexp::List(items) => {
                f.write_str("(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn sym(s: &str) -> Sexp {
    Sexp::Sym(s.into())
}

fn list(head: &str, rest: impl IntoIterator<Item = Sexp>) -> Sexp {
    let mut v = vec![sym(head)];
    v.extend(rest);
    Sexp::List(v)
}

impl Sexp {
    /// Parse exactly one s-expression. `;` starts a line comment.
    pub fn parse(src: &str) -> Result<Sexp, SexpError> {
        let toks = tokenize(src)?;
        let mut stack: Vec<Vec<Sexp>> = Vec::new();
        let mut done: Option<(Sexp, usize)> = None;
        for (pos, t) in toks {
            if let Some((_, _)) = done {
                return Err(SexpError::Trailing(pos));
            }
            let item = match t {
                Tok::Open => {
                    stack.push(Vec::new());
                    continue;
                }
                Tok::Close => match stack.pop() {
                    Some(items) => Sexp::List(items),
                    None => return Err(SexpError::Unbalanced(pos)),
                },
                Tok::Sym(s) => Sexp::Sym(s),
            };
            match stack.last_mut() {
                Some(top) => top.push(item),
                None => done = Some((item, pos)),
            }
        }
        match done {
            Some((s, _)) if stack.is_empty() => Ok(s),
            _ => Err(SexpError::Eof),
        }
    }

    fn shape(&self, expected: &'static str) -> SexpError {
        let mut found = self.to_string();
        if found.len() > 60 {
            found.truncate(57);
            found.push_str("...");
        }
        SexpError::Shape { expected, found }
    }

    fn as_sym(&self, expected: &'static str) -> Result<&str, SexpError> {
        match self {
            Sexp::Sym(s) => Ok(s),
            _ => Err(self.shape(expected)),
        }
    }

    /// The head symbol and arguments of a list.
    fn call(&self, expected: &'static str) -> Result<(&str, &[Sexp]), SexpError> {
        match self {
            Sexp::List(items) => match items.split_first() {
                Some((Sexp::Sym(h), rest)) => Ok((h, rest)),
                _ => Err(self.shape(expected)),
            },
            _ => Err(self.shape(expected)),
        }
    }
}

enum Tok {
    Open,
    Close,
    Sym(String),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, SexpError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            '(' => {
                out.push((i, Tok::Open));
                chars.next();
            }
            ')' => {
                out.push((i, Tok::Close));
                chars.next();
            }
            ';' => {
                while matches!(chars.peek(), Some(&(_, c)) if c != '\n') {
                    chars.next();
                }
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                out.push((i, Tok::Sym(s)));
            }
        }
    }
    Ok(out)
}

pub trait ToSexp {
    fn to_sexp(&self) -> Sexp;
}

pub trait FromSexp: Sized {
    fn from_sexp(s: &Sexp) -> Result<Self, SexpError>;

    fn parse_sexp(src: &str) -> Result<Self, SexpError> {
        Self::from_sexp(&Sexp::parse(src)?)
    }
}

fn args<'a, const N: usize>(s: &Sexp, a: &'a [Sexp], expected: &'static str) -> Result<&'a [Sexp; N], SexpError> {
    a.try_into().map_err(|_| s.shape(expected))
}

fn bx<T: FromSexp>(s: &Sexp) -> Result<Box<T>, SexpError> {
    T::from_sexp(s).map(Box::new)
}

impl ToSexp for UProp {
    fn to_sexp(&self) -> Sexp {
        match self {
            UProp::Atom(p) => list("atom", [sym(p)]),
            UProp::Bot => list("bot", []),
            UProp::Top => list("top", []),
            UProp::Or(a, b) => list("or", [a.to_sexp(), b.to_sexp()]),
            UProp::And(a, b) => list("and", [a.to_sexp(), b.to_sexp()]),
            UProp::Imp(a, b) => list("imp", [a.to_sexp(), b.to_sexp()]),
        }
    }
}

impl FromSexp for UProp {
    fn from_sexp(s: &Sexp) -> Result<Self, SexpError> {
        const E: &str = "an unpolarized proposition";
        let (h, a) = s.call(E)?;
        Ok(match h {
            "atom" => UProp::Atom(args::<1>(s, a, E)?[0].as_sym("an atom name")?.into()),
            "bot" => {
                args::<0>(s, a, E)?;
                UProp::Bot
            }
            "top" => {
                args::<0>(s, a, E)?;
                UProp::Top
            }
            "or" | "and" | "imp" => {
                let [x, y] = args::<2>(s, a, E)?;
                let (x, y) = (bx(x)?, bx(y)?);
                match h {
                    "or" => UProp::Or(x, y),
                    "and" => UProp::And(x, y),
                    _ => UProp::Imp(x, y),
                }
            }
            _ => return Err(s.shape(E)),
        })
    }
}

impl ToSexp for Pos {
    fn to_sexp(&self) -> Sexp {
        match self {
            Pos::Atom(p) => list("atom+", [sym(p)]),
            Pos::Down(a) => list("down", [a.to_sexp()]),
            Pos::Zero => list("zero", []),
            Pos::Or(a, b) => list("or+", [a.to_sexp(), b.to_sexp()]),
            Pos::One => list("one", []),
            Pos::And(a, b) => list("and+", [a.to_sexp(), b.to_sexp()]),
        }
    }
}

impl FromSexp for Pos {
    fn from_sexp(s: &Sexp) -> Result<Self, SexpError> {
        const E: &str = "a positive proposition";
        let (h, a) = s.call(E)?;
        Ok(match h {
            "atom+" => Pos::Atom(args::<1>(s, a, E)?[0].as_sym("an atom name")?.into()),
            "down" => Pos::Down(bx(&args::<1>(s, a, E)?[0])?),
            "zero" => {
                args::<0>(s, a, E)?;
                Pos::Zero
            }
            "one" => {
                args::<0>(s, a, E)?;
                Pos::One
            }
            "or+" | "and+" => {
                let [x, y] = args::<2>(s, a, E)?;
                let (x, y) = (bx(x)?, bx(y)?);
                if h == "or+" {
                    Pos::Or(x, y)
                } else {
                    Pos::And(x, y)
                }
            }
            _ => return Err(s.shape(E)),
        })
    }
}

impl ToSexp for Neg {
    fn to_sexp(&self) -> Sexp {
        match self {
            Neg::Atom(p) => list("atom-", [sym(p)]),
            Neg::Up(a) => list("up", [a.to_sexp()]),
            Neg::Imp(a, b) => list("imp-", [a.to_sexp(), b.to_sexp()]),
            Neg::Top => list("top-", []),
            Neg::And(a, b) => list("and-", [a.to_sexp(), b.to_sexp()]),
        }
    }
}

impl FromSexp for Neg {
    fn from_sexp(s: &Sexp) -> Result<Self, SexpError> {
        const E: &str = "a negative proposition";
        let (h, a) = s.call(E)?;
        Ok(match h {
            "atom-" => Neg::Atom(args::<1>(s, a, E)?[0].as_sym("an atom name")?.into()),
            "up" => Neg::Up(bx(&args::<1>(s, a, E)?[0])?),
            "top-" => {
                args::<0>(s, a, E)?;
                Neg::Top
            }
            "imp-" => {
                let [x, y] = args::<2>(s, a, E)?;
                Neg::Imp(bx(x)?, bx(y)?)
            }
            "and-" => {
                let [x, y] = args::<2>(s, a, E)?;
                Neg::And(bx(x)?, bx(y)?)
            }
            _ => return Err(s.shape(E)),
        })
    }
}

impl ToSexp for Value {
    fn to_sexp(&self) -> Sexp {
        match self {
            Value::Var(z) => list("var", [sym(z)]),
            Value::Thunk(n) => list("thunk", [n.to_sexp()]),
            Value::Inl(v, b) => list("inl", [v.to_sexp(), b.to_sexp()]),
            Value::Inr(v, a) => list("inr", [v.to_sexp(), a.to_sexp()]),
            Value::UnitP => list("unit+", []),
            Value::PairP(a, b) => list("pair+", [a.to_sexp(), b.to_sexp()]),
        }
    }
}

impl FromSexp for Value {
    fn from_sexp(s: &Sexp) -> Result<Self, SexpError> {
        const E: &str = "a value";
        let (h, a) = s.call(E)?;
        Ok(match h {
            "var" => Value::Var(args::<1>(s, a, E)?[0].as_sym("a variable")?.into()),
            "thunk" => Value::Thunk(bx(&args::<1>(s, a, E)?[0])?),
            "inl" | "inr" => {
                let [v, b] = args::<2>(s, a, E)?;
                let (v, b) = (bx(v)?, Pos::from_sexp(b)?);
                if h == "inl" {
                    Value::Inl(v, b)
                } else {
                    Value::Inr(v, b)
                }
            }
            "unit+" => {
                args::<0>(s, a, E)?;
                Value::UnitP
            }
            "pair+" => {
                let [x, y] = args::<2>(s, a, E)?;
                Value::PairP(bx(x)?, bx(y)?)
            }
            _ => return Err(s.shape(E)),
        })
    }
}

impl ToSexp for Term {
    fn to_sexp(&self) -> Sexp {
        match self {
            Term::RFoc(v) => list("rfoc", [v.to_sexp()]),
            Term::LFoc(x, sp) => list("lfoc", [sym(x), sp.to_sexp()]),
            Term::SuspendP(z, a, n) => list("eta+", [sym(z), a.to_sexp(), n.to_sexp()]),
            Term::LetDown(x, a, n) => list("letdown", [sym(x), a.to_sexp(), n.to_sexp()]),
            Term::Abort => list("abort", []),
            Term::Case(a, b) => list("case", [a.to_sexp(), b.to_sexp()]),
            Term::LetUnit(n) => list("letunit", [n.to_sexp()]),
            Term::Split(n) => list("split", [n.to_sexp()]),
            Term::SuspendN(n) => list("eta-", [n.to_sexp()]),
            Term::Ret(n) => list("ret", [n.to_sexp()]),
            Term::Lam(n) => list("lam", [n.to_sexp()]),
            Term::UnitN => list("unit-", []),
            Term::PairN(a, b) => list("pair-", [a.to_sexp(), b.to_sexp()]),
        }
    }
}

impl FromSexp for Term {
    fn from_sexp(s: &Sexp) -> Result<Self, SexpError> {
        const E: &str = "a term";
        let (h, a) = s.call(E)?;
        let one = |a: &[Sexp]| -> Result<Box<Term>, SexpError> { bx(&args::<1>(s, a, E)?[0]) };
        let two = |a: &[Sexp]| -> Result<(Box<Term>, Box<Term>), SexpError> {
            let [x, y] = args::<2>(s, a, E)?;
            Ok((bx(x)?, bx(y)?))
        };
        Ok(match h {
            "rfoc" => Term::RFoc(Value::from_sexp(&args::<1>(s, a, E)?[0])?),
            "lfoc" => {
                let [x, sp] = args::<2>(s, a, E)?;
                Term::LFoc(x.as_sym("a variable")?.into(), Spine::from_sexp(sp)?)
            }
            "eta+" => {
                let [z, p, n] = args::<3>(s, a, E)?;
                Term::SuspendP(z.as_sym("a variable")?.into(), Pos::from_sexp(p)?, bx(n)?)
            }
            "letdown" => {
                let [x, p, n] = args::<3>(s, a, E)?;
                Term::LetDown(x.as_sym("a variable")?.into(), Neg::from_sexp(p)?, bx(n)?)
            }
            "abort" => {
                args::<0>(s, a, E)?;
                Term::Abort
            }
            "unit-" => {
                args::<0>(s, a, E)?;
                Term::UnitN
            }
            "case" => {
                let (x, y) = two(a)?;
                Term::Case(x, y)
            }
            "pair-" => {
                let (x, y) = two(a)?;
                Term::PairN(x, y)
            }
            "letunit" => Term::LetUnit(one(a)?),
            "split" => Term::Split(one(a)?),
            "eta-" => Term::SuspendN(one(a)?),
            "ret" => Term::Ret(one(a)?),
            "lam" => Term::Lam(one(a)?),
            _ => return Err(s.shape(E)),
        })
    }
}

impl ToSexp for Spine {
    fn to_sexp(&self) -> Sexp {
        match self {
            Spine::Nil => list("nil", []),
            Spine::Match(n) => list("match", [n.to_sexp()]),
            Spine::App(v, sp) => list("app", [v.to_sexp(), sp.to_sexp()]),
            Spine::Pi1(sp, b) => list("pi1", [sp.to_sexp(), b.to_sexp()]),
            Spine::Pi2(sp, a) => list("pi2", [sp.to_sexp(), a.to_sexp()]),
        }
    }
}

impl FromSexp for Spine {
    fn from_sexp(s: &Sexp) -> Result<Self, SexpError> {
        const E: &str = "a spine";
        let (h, a) = s.call(E)?;
        Ok(match h {
            "nil" => {
                args::<0>(s, a, E)?;
                Spine::Nil
            }
            "match" => Spine::Match(bx(&args::<1>(s, a, E)?[0])?),
            "app" => {
                let [v, sp] = args::<2>(s, a, E)?;
                Spine::App(Value::from_sexp(v)?, bx(sp)?)
            }
            "pi1" | "pi2" => {
                let [sp, b] = args::<2>(s, a, E)?;
                let (sp, b) = (bx(sp)?, Neg::from_sexp(b)?);
                if h == "pi1" {
                    Spine::Pi1(sp, b)
                } else {
                    Spine::Pi2(sp, b)
                }
            }
            _ => return Err(s.shape(E)),
        })
    }
}

impl ToSexp for Expr {
    fn to_sexp(&self) -> Sexp {
        match self {
            Expr::Value(v) => v.to_sexp(),
            Expr::Term(t) => t.to_sexp(),
            Expr::Spine(s) => s.to_sexp(),
        }
    }
}

impl ToSexp for Ctx {
    fn to_sexp(&self) -> Sexp {
        list(
            "ctx",
            self.iter().map(|(x, h)| match h {
                Hyp::Neg(a) => list("hyp", [sym(x), a.to_sexp()]),
                Hyp::Susp(a) => list("susp", [sym(x), a.to_sexp()]),
            }),
        )
    }
}

impl FromSexp for Ctx {
    fn from_sexp(s: &Sexp) -> Result<Self, SexpError> {
        const E: &str = "a context (ctx ...)";
        let (h, a) = s.call(E)?;
        if h != "ctx" {
            return Err(s.shape(E));
        }
        let mut ctx = Ctx::new();
        for item in a {
            const H: &str = "a hypothesis (hyp x A-) or (susp z A+)";
            let (h, b) = item.call(H)?;
            let [x, p] = args::<2>(item, b, H)?;
            let x = x.as_sym("a variable")?.to_string();
            match h {
                "hyp" => ctx.push(x, Hyp::Neg(Neg::from_sexp(p)?)),
                "susp" => ctx.push(x, Hyp::Susp(Pos::from_sexp(p)?)),
                _ => return Err(item.shape(H)),
            }
        }
        Ok(ctx)
    }
}

impl ToSexp for Succedent {
    fn to_sexp(&self) -> Sexp {
        match self {
            Succedent::RFoc(a) => list("focus", [a.to_sexp()]),
            Succedent::SPos(a) => list("pos", [a.to_sexp()]),
            Succedent::INeg(a) => list("neg", [a.to_sexp()]),
            Succedent::SuspNeg(a) => list("susp", [a.to_sexp()]),
        }
    }
}

impl FromSexp for Succedent {
    fn from_sexp(s: &Sexp) -> Result<Self, SexpError> {
        const E: &str = "a succedent (pos A+), (neg A-), (susp A-) or (focus A+)";
        let (h, a) = s.call(E)?;
        let [p] = args::<1>(s, a, E)?;
        Ok(match h {
            "focus" => Succedent::RFoc(Pos::from_sexp(p)?),
            "pos" => Succedent::SPos(Pos::from_sexp(p)?),
            "neg" => Succedent::INeg(Neg::from_sexp(p)?),
            "susp" => Succedent::SuspNeg(Neg::from_sexp(p)?),
            _ => return Err(s.shape(E)),
        })
    }
}

/// A focused judgment together with the expression it is about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgment {
    pub seq: Sequent,
    pub expr: Expr,
}

impl ToSexp for Judgment {
    fn to_sexp(&self) -> Sexp {
        let ctx = self.seq.ctx.to_sexp();
        match (&self.seq.ante, &self.seq.succ, &self.expr) {
            (_, Succedent::RFoc(a), Expr::Value(v)) => list("value", [ctx, v.to_sexp(), a.to_sexp()]),
            (Ante::Focus(a), u, e) => list("spine", [ctx, e.to_sexp(), a.to_sexp(), u.to_sexp()]),
            (Ante::Omega(o), u, e) => {
                list("term", [ctx, list("omega", o.iter().map(ToSexp::to_sexp)), e.to_sexp(), u.to_sexp()])
            }
        }
    }
}

impl FromSexp for Judgment {
    fn from_sexp(s: &Sexp) -> Result<Self, SexpError> {
        const E: &str = "a judgment (value CTX V A+), (term CTX (omega A+ ...) N U) or (spine CTX S A- U)";
        let (h, a) = s.call(E)?;
        Ok(match h {
            "value" => {
                let [c, v, p] = args::<3>(s, a, E)?;
                let (ctx, v, p) = (Ctx::from_sexp(c)?, Value::from_sexp(v)?, Pos::from_sexp(p)?);
                Judgment { seq: Sequent::value(ctx, p), expr: Expr::Value(v) }
            }
            "term" => {
                let [c, o, n, u] = args::<4>(s, a, E)?;
                let omega = omega_from(o)?;
                let seq = Sequent::term(Ctx::from_sexp(c)?, omega, Succedent::from_sexp(u)?);
                Judgment { seq, expr: Expr::Term(Term::from_sexp(n)?) }
            }
            "spine" => {
                let [c, sp, p, u] = args::<4>(s, a, E)?;
                let seq = Sequent::spine(Ctx::from_sexp(c)?, Neg::from_sexp(p)?, Succedent::from_sexp(u)?);
                Judgment { seq, expr: Expr::Spine(Spine::from_sexp(sp)?) }
            }
            _ => return Err(s.shape(E)),
        })
    }
}

pub fn omega_from(s: &Sexp) -> Result<Vec<Pos>, SexpError> {
    const E: &str = "an inversion context (omega A+ ...)";
    let (h, a) = s.call(E)?;
    if h != "omega" {
        return Err(s.shape(E));
    }
    a.iter().map(Pos::from_sexp).collect()
}

impl ToSexp for UDeriv {
    fn to_sexp(&self) -> Sexp {
        match self {
            UDeriv::Init(p) => list("init", [sym(p)]),
            UDeriv::BotL => list("botl", []),
            UDeriv::OrR1(d) => list("orr1", [d.to_sexp()]),
            UDeriv::OrR2(d) => list("orr2", [d.to_sexp()]),
            UDeriv::OrL { principal, left, right } => {
                list("orl", [principal.to_sexp(), left.to_sexp(), right.to_sexp()])
            }
            UDeriv::TopR => list("topr", []),
            UDeriv::AndR(a, b) => list("andr", [a.to_sexp(), b.to_sexp()]),
            UDeriv::AndL1 { principal, premise } => list("andl1", [principal.to_sexp(), premise.to_sexp()]),
            UDeriv::AndL2 { principal, premise } => list("andl2", [principal.to_sexp(), premise.to_sexp()]),
            UDeriv::ImpR(d) => list("impr", [d.to_sexp()]),
            UDeriv::ImpL { principal, arg, body } => list("impl", [principal.to_sexp(), arg.to_sexp(), body.to_sexp()]),
            UDeriv::PsiCons(d) => list("psi-cons", [d.to_sexp()]),
            UDeriv::PsiNil(d) => list("psi-nil", [d.to_sexp()]),
        }
    }
}

impl FromSexp for UDeriv {
    fn from_sexp(s: &Sexp) -> Result<Self, SexpError> {
        const E: &str = "an unfocused derivation";
        let (h, a) = s.call(E)?;
        let one = |a: &[Sexp]| -> Result<Box<UDeriv>, SexpError> { bx(&args::<1>(s, a, E)?[0]) };
        Ok(match h {
            "init" => UDeriv::Init(args::<1>(s, a, E)?[0].as_sym("an atom name")?.into()),
            "botl" => {
                args::<0>(s, a, E)?;
                UDeriv::BotL
            }
            "topr" => {
                args::<0>(s, a, E)?;
                UDeriv::TopR
            }
            "orr1" => UDeriv::OrR1(one(a)?),
            "orr2" => UDeriv::OrR2(one(a)?),
            "impr" => UDeriv::ImpR(one(a)?),
            "psi-cons" => UDeriv::PsiCons(one(a)?),
            "psi-nil" => UDeriv::PsiNil(one(a)?),
            "andr" => {
                let [x, y] = args::<2>(s, a, E)?;
                UDeriv::AndR(bx(x)?, bx(y)?)
            }
            "andl1" | "andl2" => {
                let [p, d] = args::<2>(s, a, E)?;
                let (principal, premise) = (UProp::from_sexp(p)?, bx(d)?);
                if h == "andl1" {
                    UDeriv::AndL1 { principal, premise }
                } else {
                    UDeriv::AndL2 { principal, premise }
                }
            }
            "orl" => {
                let [p, l, r] = args::<3>(s, a, E)?;
                UDeriv::OrL { principal: UProp::from_sexp(p)?, left: bx(l)?, right: bx(r)? }
            }
            "impl" => {
                let [p, x, y] = args::<3>(s, a, E)?;
                UDeriv::ImpL { principal: UProp::from_sexp(p)?, arg: bx(x)?, body: bx(y)? }
            }
            _ => return Err(s.shape(E)),
        })
    }
}

impl ToSexp for USequent {
    fn to_sexp(&self) -> Sexp {
        let gamma = self.gamma.iter().flat_map(|(p, k)| std::iter::repeat_n(p.to_sexp(), k));
        list(
            "seq",
            [list("gamma", gamma), list("psi", self.psi.iter().map(ToSexp::to_sexp)), self.goal.to_sexp()],
        )
    }
}

impl FromSexp for USequent {
    fn from_sexp(s: &Sexp) -> Result<Self, SexpError> {
        const E: &str = "an unfocused sequent (seq (gamma P ...) (psi P ...) Q)";
        let (h, a) = s.call(E)?;
        if h != "seq" {
            return Err(s.shape(E));
        }
        let [g, p, q] = args::<3>(s, a, E)?;
        let items = |x: &Sexp, head: &str| -> Result<Vec<UProp>, SexpError> {
            match x.call(E)? {
                (h, xs) if h == head => xs.iter().map(UProp::from_sexp).collect(),
                _ => Err(x.shape(E)),
            }
        };
        let gamma: Multiset = items(g, "gamma")?.into_iter().collect();
        Ok(USequent { gamma, psi: items(p, "psi")?, goal: UProp::from_sexp(q)? })
    }
}
