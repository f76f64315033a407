//! Unfocused rules as derived rules of the focused calculus. Each combinator
//! is a straight-line composition of cut, identity expansion and primitive
//! rules, kept as a [`Recipe`] tree so its shape can be inspected before it is
//! evaluated to a term.

use crate::cut::{CutError, Cutter};
use crate::identity::Expander;
use crate::kernel::{check_term, Ctx, Expr, Fresh, Hyp, Name, Spine, Term, Value};
use crate::syntax::{is_stable, is_suspension_normal, Neg, Pos, Succedent};
use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    InitSuspNeg,
    InitNeg,
    InitSuspPos,
    InitPos,
    BotUL,
    OrUR1,
    OrUR2,
    OrUL,
    TopPosUR,
    TopPosUL,
    AndPosUR,
    AndPosUL,
    ImpUR,
    ImpUL,
    TopNegUR,
    AndNegUR,
    AndNegUL1,
    AndNegUL2,
    DownUpUR,
    UpDownUL,
}

impl RuleId {
    pub const ALL: [RuleId; 20] = [
        RuleId::InitSuspNeg,
        RuleId::InitNeg,
        RuleId::InitSuspPos,
        RuleId::InitPos,
        RuleId::BotUL,
        RuleId::OrUR1,
        RuleId::OrUR2,
        RuleId::OrUL,
        RuleId::TopPosUR,
        RuleId::TopPosUL,
        RuleId::AndPosUR,
        RuleId::AndPosUL,
        RuleId::ImpUR,
        RuleId::ImpUL,
        RuleId::TopNegUR,
        RuleId::AndNegUR,
        RuleId::AndNegUL1,
        RuleId::AndNegUL2,
        RuleId::DownUpUR,
        RuleId::UpDownUL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::InitSuspNeg => "init⁻ᵤ<>",
            RuleId::InitNeg => "init⁻ᵤ",
            RuleId::InitSuspPos => "init⁺ᵤ<>",
            RuleId::InitPos => "init⁺ᵤ",
            RuleId::BotUL => "⊥uL",
            RuleId::OrUR1 => "∨uR1",
            RuleId::OrUR2 => "∨uR2",
            RuleId::OrUL => "∨uL",
            RuleId::TopPosUR => "⊤⁺uR",
            RuleId::TopPosUL => "⊤⁺uL",
            RuleId::AndPosUR => "∧⁺uR",
            RuleId::AndPosUL => "∧⁺uL",
            RuleId::ImpUR => "⊃uR",
            RuleId::ImpUL => "⊃uL",
            RuleId::TopNegUR => "⊤⁻uR",
            RuleId::AndNegUR => "∧⁻uR",
            RuleId::AndNegUL1 => "∧⁻uL1",
            RuleId::AndNegUL2 => "∧⁻uL2",
            RuleId::DownUpUR => "↓↑uR",
            RuleId::UpDownUL => "↑↓uL",
        }
    }

    /// Whether the rule decomposes a hypothesis, named by `Args::principal`.
    pub fn has_principal(self) -> bool {
        matches!(
            self,
            RuleId::InitSuspNeg
                | RuleId::InitNeg
                | RuleId::InitSuspPos
                | RuleId::InitPos
                | RuleId::BotUL
                | RuleId::OrUL
                | RuleId::TopPosUL
                | RuleId::AndPosUL
                | RuleId::ImpUL
                | RuleId::AndNegUL1
                | RuleId::AndNegUL2
                | RuleId::UpDownUL
        )
    }

    /// Number of premises and the number of binders each one introduces.
    pub fn arity(self) -> &'static [usize] {
        match self {
            RuleId::InitSuspNeg
            | RuleId::InitNeg
            | RuleId::InitSuspPos
            | RuleId::InitPos
            | RuleId::BotUL
            | RuleId::TopPosUR
            | RuleId::TopNegUR => &[],
            RuleId::OrUR1 | RuleId::OrUR2 | RuleId::TopPosUL | RuleId::DownUpUR => &[0],
            RuleId::OrUL => &[1, 1],
            RuleId::AndPosUR | RuleId::AndNegUR => &[0, 0],
            RuleId::AndPosUL => &[2],
            RuleId::ImpUR | RuleId::AndNegUL1 | RuleId::AndNegUL2 | RuleId::UpDownUL => &[1],
            RuleId::ImpUL => &[0, 1],
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A premise: a term under the rule's context extended by `binders`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Premise {
    pub binders: Vec<Name>,
    pub term: Term,
}

impl Premise {
    pub fn new(term: Term) -> Self {
        Premise { binders: Vec::new(), term }
    }

    pub fn bind(binders: &[&str], term: Term) -> Self {
        Premise { binders: binders.iter().map(|b| (*b).into()).collect(), term }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Args {
    pub principal: Option<Name>,
    pub premises: Vec<Premise>,
}

impl Args {
    pub fn none() -> Self {
        Args::default()
    }

    pub fn on(x: &str) -> Self {
        Args { principal: Some(x.into()), premises: Vec::new() }
    }

    pub fn premise(mut self, p: Premise) -> Self {
        self.premises.push(p);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PremiseMismatch(pub String);

impl fmt::Display for PremiseMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Primitive rules, one per proof-term constructor, with their annotations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Prim {
    FocR,
    FocL(Name),
    EtaPos(Name, Pos),
    LetDown(Name, Neg),
    Abort,
    Case,
    LetUnit,
    Split,
    EtaNeg,
    Ret,
    Lam,
    UnitN,
    PairN,
    Var(Name),
    Thunk,
    Inl(Pos),
    Inr(Pos),
    UnitP,
    PairP,
    Nil,
    Match,
    App,
    Pi1(Neg),
    Pi2(Neg),
}

impl Prim {
    pub fn label(&self) -> &'static str {
        match self {
            Prim::FocR => "foc_R",
            Prim::FocL(_) => "foc_L",
            Prim::EtaPos(..) => "η⁺",
            Prim::LetDown(..) => "↓L",
            Prim::Abort => "0L",
            Prim::Case => "∨L",
            Prim::LetUnit => "⊤⁺L",
            Prim::Split => "∧⁺L",
            Prim::EtaNeg => "η⁻",
            Prim::Ret => "↑R",
            Prim::Lam => "⊃R",
            Prim::UnitN => "⊤⁻R",
            Prim::PairN => "∧⁻R",
            Prim::Var(_) => "id⁺",
            Prim::Thunk => "↓R",
            Prim::Inl(_) => "∨R1",
            Prim::Inr(_) => "∨R2",
            Prim::UnitP => "⊤⁺R",
            Prim::PairP => "∧⁺R",
            Prim::Nil => "id⁻",
            Prim::Match => "↑L",
            Prim::App => "⊃L",
            Prim::Pi1(_) => "∧⁻L1",
            Prim::Pi2(_) => "∧⁻L2",
        }
    }
}

/// How a derived rule's conclusion is assembled from its premises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Premise(usize),
    /// Use under a larger context; terms are unchanged.
    Weaken(Box<Recipe>),
    Rsubst { m: Box<Recipe>, x: Name, a: Neg, e: Box<Recipe> },
    Lsubst { e: Box<Recipe>, a: Pos, n: Box<Recipe> },
    ExpandPos { a: Pos, z: Name, body: Box<Recipe> },
    ExpandNeg { a: Neg, body: Box<Recipe> },
    Rule(Prim, Vec<Recipe>),
}

impl Recipe {
    /// The tree of rule labels, e.g. `lsubst(premise, expand⁺(foc_R(∨R1(id⁺))))`.
    pub fn shape(&self) -> String {
        let mut out = String::new();
        self.write_shape(&mut out);
        out
    }

    fn write_shape(&self, out: &mut String) {
        let (label, kids): (&str, Vec<&Recipe>) = match self {
            Recipe::Premise(_) => ("premise", Vec::new()),
            Recipe::Weaken(r) => ("weaken", alloc::vec![&**r]),
            Recipe::Rsubst { m, e, .. } => ("rsubst", alloc::vec![&**m, &**e]),
            Recipe::Lsubst { e, n, .. } => ("lsubst", alloc::vec![&**e, &**n]),
            Recipe::ExpandPos { body, .. } => ("expand⁺", alloc::vec![&**body]),
            Recipe::ExpandNeg { body, .. } => ("expand⁻", alloc::vec![&**body]),
            Recipe::Rule(p, kids) => (p.label(), kids.iter().collect()),
        };
        out.push_str(label);
        if !kids.is_empty() {
            out.push('(');
            for (i, k) in kids.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                k.write_shape(out);
            }
            out.push(')');
        }
    }

    pub fn eval(&self, premises: &[Term], fresh: &mut Fresh) -> Result<Expr, CutError> {
        Ok(match self {
            Recipe::Premise(i) => Expr::Term(premises[*i].clone()),
            Recipe::Weaken(r) => r.eval(premises, fresh)?,
            Recipe::Rsubst { m, x, a, e } => {
                let m = term_of(m.eval(premises, fresh)?)?;
                let e = e.eval(premises, fresh)?;
                Cutter::new(fresh).rsubst(&m, x, a, &e)?
            }
            Recipe::Lsubst { e, a, n } => {
                let n = term_of(n.eval(premises, fresh)?)?;
                match e.eval(premises, fresh)? {
                    Expr::Term(e) => Expr::Term(Cutter::new(fresh).lsubst_term(&e, a, &n)?),
                    Expr::Spine(e) => Expr::Spine(Cutter::new(fresh).lsubst_spine(&e, a, &n)?),
                    Expr::Value(v) => return Err(CutError::Mismatch(alloc::format!("leftist substitution into {v}"))),
                }
            }
            Recipe::ExpandPos { a, z, body } => {
                let body = term_of(body.eval(premises, fresh)?)?;
                Expr::Term(Expander::new(fresh).expand_pos(a, z, &body))
            }
            Recipe::ExpandNeg { a, body } => {
                let body = term_of(body.eval(premises, fresh)?)?;
                Expr::Term(Expander::new(fresh).expand_neg(a, &body))
            }
            Recipe::Rule(p, kids) => {
                let mut kids = kids.iter().map(|k| k.eval(premises, fresh)).collect::<Result<Vec<_>, _>>()?.into_iter();
                let mut next = || kids.next().ok_or_else(|| CutError::Mismatch(alloc::format!("{} is missing a premise", p.label())));
                match p {
                    Prim::FocR => Expr::Term(Term::RFoc(value_of(next()?)?)),
                    Prim::FocL(x) => Expr::Term(Term::lfoc(x, spine_of(next()?)?)),
                    Prim::EtaPos(z, a) => Expr::Term(Term::suspend_p(z, a.clone(), term_of(next()?)?)),
                    Prim::LetDown(x, a) => Expr::Term(Term::let_down(x, a.clone(), term_of(next()?)?)),
                    Prim::Abort => Expr::Term(Term::Abort),
                    Prim::Case => {
                        let a = term_of(next()?)?;
                        Expr::Term(Term::case(a, term_of(next()?)?))
                    }
                    Prim::LetUnit => Expr::Term(Term::let_unit(term_of(next()?)?)),
                    Prim::Split => Expr::Term(Term::split(term_of(next()?)?)),
                    Prim::EtaNeg => Expr::Term(Term::suspend_n(term_of(next()?)?)),
                    Prim::Ret => Expr::Term(Term::ret(term_of(next()?)?)),
                    Prim::Lam => Expr::Term(Term::lam(term_of(next()?)?)),
                    Prim::UnitN => Expr::Term(Term::UnitN),
                    Prim::PairN => {
                        let a = term_of(next()?)?;
                        Expr::Term(Term::pair(a, term_of(next()?)?))
                    }
                    Prim::Var(z) => Expr::Value(Value::var(z)),
                    Prim::Thunk => Expr::Value(Value::thunk(term_of(next()?)?)),
                    Prim::Inl(b) => Expr::Value(Value::inl(value_of(next()?)?, b.clone())),
                    Prim::Inr(a) => Expr::Value(Value::inr(value_of(next()?)?, a.clone())),
                    Prim::UnitP => Expr::Value(Value::UnitP),
                    Prim::PairP => {
                        let a = value_of(next()?)?;
                        Expr::Value(Value::pair(a, value_of(next()?)?))
                    }
                    Prim::Nil => Expr::Spine(Spine::Nil),
                    Prim::Match => Expr::Spine(Spine::match_(term_of(next()?)?)),
                    Prim::App => {
                        let v = value_of(next()?)?;
                        Expr::Spine(Spine::app(v, spine_of(next()?)?))
                    }
                    Prim::Pi1(b) => Expr::Spine(Spine::pi1(spine_of(next()?)?, b.clone())),
                    Prim::Pi2(a) => Expr::Spine(Spine::pi2(spine_of(next()?)?, a.clone())),
                }
            }
        })
    }
}

fn term_of(e: Expr) -> Result<Term, CutError> {
    match e {
        Expr::Term(t) => Ok(t),
        other => Err(CutError::Mismatch(alloc::format!("expected a term, got {other}"))),
    }
}

fn value_of(e: Expr) -> Result<Value, CutError> {
    match e {
        Expr::Value(v) => Ok(v),
        other => Err(CutError::Mismatch(alloc::format!("expected a value, got {other}"))),
    }
}

fn spine_of(e: Expr) -> Result<Spine, CutError> {
    match e {
        Expr::Spine(s) => Ok(s),
        other => Err(CutError::Mismatch(alloc::format!("expected a spine, got {other}"))),
    }
}

fn rule(p: Prim, kids: Vec<Recipe>) -> Recipe {
    Recipe::Rule(p, kids)
}

fn leaf(p: Prim) -> Recipe {
    Recipe::Rule(p, Vec::new())
}

fn one(p: Prim, kid: Recipe) -> Recipe {
    Recipe::Rule(p, alloc::vec![kid])
}

fn premise(i: usize) -> Recipe {
    Recipe::Premise(i)
}

fn rsubst(m: Recipe, x: &str, a: &Neg, e: Recipe) -> Recipe {
    Recipe::Rsubst { m: Box::new(m), x: x.into(), a: a.clone(), e: Box::new(e) }
}

fn lsubst(e: Recipe, a: &Pos, n: Recipe) -> Recipe {
    Recipe::Lsubst { e: Box::new(e), a: a.clone(), n: Box::new(n) }
}

fn expand_pos(a: &Pos, z: &str, body: Recipe) -> Recipe {
    Recipe::ExpandPos { a: a.clone(), z: z.into(), body: Box::new(body) }
}

fn expand_neg(a: &Neg, body: Recipe) -> Recipe {
    Recipe::ExpandNeg { a: a.clone(), body: Box::new(body) }
}

fn var(z: &str) -> Recipe {
    leaf(Prim::Var(z.into()))
}

fn focr(v: Recipe) -> Recipe {
    one(Prim::FocR, v)
}

fn focl(x: &str, s: Recipe) -> Recipe {
    one(Prim::FocL(x.into()), s)
}

/// `↓(ret(rft z))`: the value for `[↓↑A]` built from a suspended `z : <A>`.
fn thunk_ret(z: &str) -> Recipe {
    one(Prim::Thunk, one(Prim::Ret, focr(var(z))))
}

/// `↑L(y. y·nil)` on `[↑↓A]`, suspending `A` in the succedent.
fn match_id(y: &str, a: &Neg) -> Recipe {
    one(Prim::Match, one(Prim::LetDown(y.into(), a.clone()), focl(y, leaf(Prim::Nil))))
}

fn up(a: &Pos) -> Neg {
    Neg::up(a.clone())
}

fn down(a: &Neg) -> Pos {
    Pos::down(a.clone())
}

/// `λ η^{A+}(z. η^{B-}(x·(↓(ret(rft z)); ↑L(y. y·nil))))`, the identity on
/// `↓↑A ⊃ ↑↓B` read back at `A ⊃ B`.
fn imp_identity(x: &str, a: &Pos, b: &Neg, fresh: &mut Fresh) -> Recipe {
    let z = fresh.name("z");
    let y = fresh.name("y");
    let body = focl(x, rule(Prim::App, alloc::vec![thunk_ret(&z), match_id(&y, b)]));
    one(Prim::Lam, expand_pos(a, &z, expand_neg(b, body)))
}

fn or_identity(a: &Pos, b: &Pos, fresh: &mut Fresh) -> Recipe {
    let z1 = fresh.name("z");
    let z2 = fresh.name("z");
    let ua = down(&up(a));
    let ub = down(&up(b));
    rule(
        Prim::Case,
        alloc::vec![
            expand_pos(a, &z1, focr(one(Prim::Inl(ub), thunk_ret(&z1)))),
            expand_pos(b, &z2, focr(one(Prim::Inr(ua), thunk_ret(&z2)))),
        ],
    )
}

fn and_identity(a: &Pos, b: &Pos, fresh: &mut Fresh) -> Recipe {
    let z1 = fresh.name("z");
    let z2 = fresh.name("z");
    let pair = rule(Prim::PairP, alloc::vec![thunk_ret(&z1), thunk_ret(&z2)]);
    one(Prim::Split, expand_pos(a, &z1, expand_pos(b, &z2, focr(pair))))
}

fn mismatch<T>(rule: RuleId, what: impl fmt::Display) -> Result<T, PremiseMismatch> {
    Err(PremiseMismatch(alloc::format!("{rule}: {what}")))
}

struct Setting<'a> {
    rule: RuleId,
    ctx: &'a Ctx,
    goal: &'a Succedent,
    args: &'a Args,
}

impl Setting<'_> {
    fn principal(&self) -> Result<(&Name, &Hyp), PremiseMismatch> {
        let Some(x) = &self.args.principal else {
            return mismatch(self.rule, "missing principal hypothesis");
        };
        match self.ctx.lookup(x) {
            Some(h) => Ok((x, h)),
            None => mismatch(self.rule, alloc::format!("principal {x} is not in the context")),
        }
    }

    fn principal_neg(&self) -> Result<(&Name, &Neg), PremiseMismatch> {
        match self.principal()? {
            (x, Hyp::Neg(a)) => Ok((x, a)),
            (x, h) => mismatch(self.rule, alloc::format!("principal {x} : {h} is a suspension")),
        }
    }

    /// The proposition under the principal's `↑`.
    fn principal_up(&self) -> Result<(&Name, &Pos), PremiseMismatch> {
        match self.principal_neg()? {
            (x, Neg::Up(a)) => Ok((x, a)),
            (x, a) => mismatch(self.rule, alloc::format!("principal {x} : {a} is not a shifted positive")),
        }
    }

    fn goal_pos(&self) -> Result<&Pos, PremiseMismatch> {
        match self.goal {
            Succedent::SPos(a) => Ok(a),
            u => mismatch(self.rule, alloc::format!("goal {u} is not a stable positive")),
        }
    }

    fn goal_down(&self) -> Result<&Neg, PremiseMismatch> {
        match self.goal_pos()? {
            Pos::Down(a) => Ok(a),
            a => mismatch(self.rule, alloc::format!("goal {a} is not a shifted negative")),
        }
    }

    fn binder(&self, i: usize, j: usize) -> &str {
        &self.args.premises[i].binders[j]
    }
}

/// The expected context extensions and succedent of each premise.
type Expected = Vec<(Vec<Hyp>, Succedent)>;

fn plan(s: &Setting<'_>, fresh: &mut Fresh) -> Result<(Recipe, Expected), PremiseMismatch> {
    let u = s.goal.clone();
    let rule_id = s.rule;
    Ok(match rule_id {
        RuleId::InitSuspNeg => {
            let (x, a) = s.principal_neg()?;
            if !a.is_atom() || *s.goal != Succedent::SuspNeg(a.clone()) {
                return mismatch(rule_id, alloc::format!("needs x : p- and goal <p->, got {a} and {u}"));
            }
            (focl(x, leaf(Prim::Nil)), Vec::new())
        }
        RuleId::InitNeg => {
            let (x, a) = s.principal_neg()?;
            if !a.is_atom() || s.goal_down()? != a {
                return mismatch(rule_id, alloc::format!("needs x : p- and goal ↓p-, got {a} and {u}"));
            }
            (focr(one(Prim::Thunk, one(Prim::EtaNeg, focl(x, leaf(Prim::Nil))))), Vec::new())
        }
        RuleId::InitSuspPos => {
            let (z, h) = s.principal()?;
            match h {
                Hyp::Susp(a @ Pos::Atom(_)) if s.goal_pos()? == a => (focr(var(z)), Vec::new()),
                _ => return mismatch(rule_id, alloc::format!("needs z : <p+> and goal p+, got {h} and {u}")),
            }
        }
        RuleId::InitPos => {
            let (x, a) = s.principal_up()?;
            if !a.is_atom() || s.goal_pos()? != a {
                return mismatch(rule_id, alloc::format!("needs x : ↑p+ and goal p+, got {a} and {u}"));
            }
            let z = fresh.name("z");
            let body = one(Prim::EtaPos(z.clone(), a.clone()), focr(var(&z)));
            (focl(x, one(Prim::Match, body)), Vec::new())
        }
        RuleId::BotUL => {
            let (x, a) = s.principal_up()?;
            if *a != Pos::Zero {
                return mismatch(rule_id, alloc::format!("principal {x} : ↑{a} is not ↑0"));
            }
            (focl(x, one(Prim::Match, leaf(Prim::Abort))), Vec::new())
        }
        RuleId::OrUR1 | RuleId::OrUR2 => {
            let Pos::Or(a, b) = s.goal_pos()? else {
                return mismatch(rule_id, alloc::format!("goal {u} is not a disjunction"));
            };
            let z = fresh.name("z");
            let (chosen, inj) = match rule_id {
                RuleId::OrUR1 => (&**a, Prim::Inl((**b).clone())),
                _ => (&**b, Prim::Inr((**a).clone())),
            };
            let recipe = lsubst(premise(0), chosen, expand_pos(chosen, &z, focr(one(inj, var(&z)))));
            (recipe, alloc::vec![(Vec::new(), Succedent::SPos(chosen.clone()))])
        }
        RuleId::OrUL => {
            let (x, c) = s.principal_up()?;
            let Pos::Or(a, b) = c else {
                return mismatch(rule_id, alloc::format!("principal {x} : ↑{c} is not a shifted disjunction"));
            };
            let (x1, x2) = (s.binder(0, 0), s.binder(1, 0));
            let ua = up(a);
            let ub = up(b);
            let target = Pos::or(down(&ua), down(&ub));
            let cases = rule(
                Prim::Case,
                alloc::vec![
                    one(Prim::LetDown(x1.into(), ua.clone()), premise(0)),
                    one(Prim::LetDown(x2.into(), ub.clone()), premise(1)),
                ],
            );
            let recipe = focl(x, one(Prim::Match, lsubst(or_identity(a, b, fresh), &target, cases)));
            (recipe, alloc::vec![(alloc::vec![Hyp::Neg(ua)], u.clone()), (alloc::vec![Hyp::Neg(ub)], u)])
        }
        RuleId::TopPosUR => {
            if *s.goal_pos()? != Pos::One {
                return mismatch(rule_id, alloc::format!("goal {u} is not 1"));
            }
            (focr(leaf(Prim::UnitP)), Vec::new())
        }
        RuleId::TopPosUL => {
            let (x, a) = s.principal_up()?;
            if *a != Pos::One {
                return mismatch(rule_id, alloc::format!("principal {x} : ↑{a} is not ↑1"));
            }
            (focl(x, one(Prim::Match, one(Prim::LetUnit, premise(0)))), alloc::vec![(Vec::new(), u)])
        }
        RuleId::AndPosUR => {
            let Pos::And(a, b) = s.goal_pos()? else {
                return mismatch(rule_id, alloc::format!("goal {u} is not a positive conjunction"));
            };
            let x1 = fresh.name("x");
            let z1 = fresh.name("z");
            let z2 = fresh.name("z");
            let pair = focr(rule(Prim::PairP, alloc::vec![var(&z1), var(&z2)]));
            let inner = focl(&x1, one(Prim::Match, expand_pos(a, &z1, pair)));
            let recipe = rsubst(
                one(Prim::Ret, premise(0)),
                &x1,
                &up(a),
                lsubst(Recipe::Weaken(Box::new(premise(1))), b, expand_pos(b, &z2, inner)),
            );
            let exp = alloc::vec![(Vec::new(), Succedent::SPos((**a).clone())), (Vec::new(), Succedent::SPos((**b).clone()))];
            (recipe, exp)
        }
        RuleId::AndPosUL => {
            let (x, c) = s.principal_up()?;
            let Pos::And(a, b) = c else {
                return mismatch(rule_id, alloc::format!("principal {x} : ↑{c} is not a shifted conjunction"));
            };
            let (x1, x2) = (s.binder(0, 0), s.binder(0, 1));
            let ua = up(a);
            let ub = up(b);
            let target = Pos::and(down(&ua), down(&ub));
            let body = one(
                Prim::Split,
                one(Prim::LetDown(x1.into(), ua.clone()), one(Prim::LetDown(x2.into(), ub.clone()), premise(0))),
            );
            let recipe = focl(x, one(Prim::Match, lsubst(and_identity(a, b, fresh), &target, body)));
            (recipe, alloc::vec![(alloc::vec![Hyp::Neg(ua), Hyp::Neg(ub)], u)])
        }
        RuleId::ImpUR => {
            let Neg::Imp(a, b) = s.goal_down()? else {
                return mismatch(rule_id, alloc::format!("goal {u} is not a shifted implication"));
            };
            let x1 = s.binder(0, 0);
            let x = fresh.name("x");
            let ua = up(a);
            let shifted = Neg::imp(down(&ua), Neg::up(down(b)));
            let lam = one(Prim::Lam, one(Prim::LetDown(x1.into(), ua.clone()), one(Prim::Ret, premise(0))));
            let recipe = focr(one(Prim::Thunk, rsubst(lam, &x, &shifted, imp_identity(&x, a, b, fresh))));
            (recipe, alloc::vec![(alloc::vec![Hyp::Neg(ua)], Succedent::SPos(down(b)))])
        }
        RuleId::ImpUL => {
            let (x, c) = s.principal_neg()?;
            let Neg::Imp(a, b) = c else {
                return mismatch(rule_id, alloc::format!("principal {x} : {c} is not an implication"));
            };
            let x2 = s.binder(1, 0);
            let z = fresh.name("z");
            let apply = focr(one(Prim::Thunk, expand_neg(b, focl(x, rule(Prim::App, alloc::vec![var(&z), leaf(Prim::Nil)])))));
            let arg = lsubst(premise(0), a, expand_pos(a, &z, apply));
            let recipe = lsubst(arg, &down(b), one(Prim::LetDown(x2.into(), (**b).clone()), premise(1)));
            let exp = alloc::vec![
                (Vec::new(), Succedent::SPos((**a).clone())),
                (alloc::vec![Hyp::Neg((**b).clone())], u),
            ];
            (recipe, exp)
        }
        RuleId::TopNegUR => {
            if *s.goal_down()? != Neg::Top {
                return mismatch(rule_id, alloc::format!("goal {u} is not ↓T"));
            }
            (focr(one(Prim::Thunk, leaf(Prim::UnitN))), Vec::new())
        }
        RuleId::AndNegUR => {
            let Neg::And(a, b) = s.goal_down()? else {
                return mismatch(rule_id, alloc::format!("goal {u} is not a shifted negative conjunction"));
            };
            let x = fresh.name("x");
            let y1 = fresh.name("y");
            let y2 = fresh.name("y");
            let uda = Neg::up(down(a));
            let udb = Neg::up(down(b));
            let shifted = Neg::and(uda.clone(), udb.clone());
            let pair = rule(Prim::PairN, alloc::vec![one(Prim::Ret, premise(0)), one(Prim::Ret, premise(1))]);
            let ident = rule(
                Prim::PairN,
                alloc::vec![
                    expand_neg(a, focl(&x, one(Prim::Pi1(udb), match_id(&y1, a)))),
                    expand_neg(b, focl(&x, one(Prim::Pi2(uda), match_id(&y2, b)))),
                ],
            );
            let recipe = focr(one(Prim::Thunk, rsubst(pair, &x, &shifted, ident)));
            let exp = alloc::vec![(Vec::new(), Succedent::SPos(down(a))), (Vec::new(), Succedent::SPos(down(b)))];
            (recipe, exp)
        }
        RuleId::AndNegUL1 | RuleId::AndNegUL2 => {
            let (x, c) = s.principal_neg()?;
            let Neg::And(a, b) = c else {
                return mismatch(rule_id, alloc::format!("principal {x} : {c} is not a negative conjunction"));
            };
            let x1 = s.binder(0, 0);
            let (chosen, proj) = match rule_id {
                RuleId::AndNegUL1 => (&**a, Prim::Pi1((**b).clone())),
                _ => (&**b, Prim::Pi2((**a).clone())),
            };
            let m = expand_neg(chosen, focl(x, one(proj, leaf(Prim::Nil))));
            (rsubst(m, x1, chosen, premise(0)), alloc::vec![(alloc::vec![Hyp::Neg(chosen.clone())], u)])
        }
        RuleId::DownUpUR => {
            let Neg::Up(a) = s.goal_down()? else {
                return mismatch(rule_id, alloc::format!("goal {u} is not ↓↑A"));
            };
            (focr(one(Prim::Thunk, one(Prim::Ret, premise(0)))), alloc::vec![(Vec::new(), Succedent::SPos((**a).clone()))])
        }
        RuleId::UpDownUL => {
            let (x, c) = s.principal_up()?;
            let Pos::Down(a) = c else {
                return mismatch(rule_id, alloc::format!("principal {x} : ↑{c} is not ↑↓A"));
            };
            let x1 = s.binder(0, 0);
            let recipe = focl(x, one(Prim::Match, one(Prim::LetDown(x1.into(), (**a).clone()), premise(0))));
            (recipe, alloc::vec![(alloc::vec![Hyp::Neg((**a).clone())], u)])
        }
    })
}

fn reserve_all(ctx: &Ctx, args: &Args, fresh: &mut Fresh) {
    for (x, _) in ctx.iter() {
        fresh.reserve(x);
    }
    for p in &args.premises {
        for b in &p.binders {
            fresh.reserve(b);
        }
        fresh.reserve_expr(&Expr::Term(p.term.clone()));
    }
}

fn validate_shape(rule: RuleId, ctx: &Ctx, goal: &Succedent, args: &Args) -> Result<(), PremiseMismatch> {
    if !is_stable(goal) {
        return mismatch(rule, alloc::format!("goal {goal} is not stable"));
    }
    if !is_suspension_normal(ctx, goal) {
        return mismatch(rule, "sequent is not suspension-normal");
    }
    let arity = rule.arity();
    if args.premises.len() != arity.len() {
        return mismatch(rule, alloc::format!("expected {} premises, got {}", arity.len(), args.premises.len()));
    }
    for (i, (p, n)) in args.premises.iter().zip(arity).enumerate() {
        if p.binders.len() != *n {
            return mismatch(rule, alloc::format!("premise {} binds {} names, expected {n}", i + 1, p.binders.len()));
        }
    }
    if rule.has_principal() != args.principal.is_some() {
        return mismatch(rule, "principal hypothesis given where none is expected, or missing");
    }
    Ok(())
}

/// The recipe of `rule` at `Γ ⊢ U` and the sequents its premises must
/// check at, without checking them.
pub fn recipe(
    rule: RuleId,
    ctx: &Ctx,
    goal: &Succedent,
    args: &Args,
    fresh: &mut Fresh,
) -> Result<(Recipe, Vec<(Ctx, Succedent)>), PremiseMismatch> {
    validate_shape(rule, ctx, goal, args)?;
    reserve_all(ctx, args, fresh);
    let (r, expected) = plan(&Setting { rule, ctx, goal, args }, fresh)?;
    let seqs = expected
        .into_iter()
        .zip(&args.premises)
        .map(|((hyps, u), p)| {
            let mut c = ctx.clone();
            for (b, h) in p.binders.iter().zip(hyps) {
                c.push(b.clone(), h);
            }
            (c, u)
        })
        .collect();
    Ok((r, seqs))
}

/// Apply a derived unfocused rule: check the premises at the sequents the
/// rule expects and evaluate its recipe to a term for `Γ ⊢ U`.
pub fn adm(rule: RuleId, ctx: &Ctx, goal: &Succedent, args: &Args, fresh: &mut Fresh) -> Result<Term, PremiseMismatch> {
    let (r, seqs) = recipe(rule, ctx, goal, args, fresh)?;
    for (i, ((c, u), p)) in seqs.iter().zip(&args.premises).enumerate() {
        if let Err(e) = check_term(c, &[], &p.term, u) {
            return mismatch(rule, alloc::format!("premise {} does not check at {c} ⊢ {u}: {e}", i + 1));
        }
    }
    let premises: Vec<Term> = args.premises.iter().map(|p| p.term.clone()).collect();
    match r.eval(&premises, fresh) {
        Ok(Expr::Term(t)) => Ok(t),
        Ok(other) => mismatch(rule, alloc::format!("recipe produced {other}")),
        Err(e) => mismatch(rule, e),
    }
}

/// Peeling `↓↑` off a positive goal: apply `↓↑uR` once per layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosWrap {
    pub depth: usize,
}

impl PosWrap {
    pub fn apply(&self, n: Term) -> Term {
        (0..self.depth).fold(n, |n, _| Term::RFoc(Value::thunk(Term::ret(n))))
    }
}

pub fn shift_removal_pos(a: &Pos) -> (Pos, PosWrap) {
    let mut a = a;
    let mut depth = 0;
    while let Pos::Down(n) = a {
        let Neg::Up(inner) = &**n else { break };
        a = inner;
        depth += 1;
    }
    (a.clone(), PosWrap { depth })
}

/// Peeling `↑↓` off a hypothesis: each layer is an `↑↓uL` on the
/// previous layer's name, binding the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegWrap {
    /// `(hypothesis, bound name, type of the bound name)`, outermost first.
    pub layers: Vec<(Name, Name, Neg)>,
}

impl NegWrap {
    /// The name under which the unshifted hypothesis is available.
    pub fn inner<'a>(&'a self, outer: &'a str) -> &'a str {
        self.layers.last().map_or(outer, |(_, b, _)| b.as_str())
    }

    pub fn apply(&self, n: Term) -> Term {
        self.layers
            .iter()
            .rev()
            .fold(n, |n, (x, b, a)| Term::lfoc(x, Spine::match_(Term::let_down(b, a.clone(), n))))
    }
}

pub fn shift_removal_neg(a: &Neg, x: &str, fresh: &mut Fresh) -> (Neg, NegWrap) {
    let mut a = a;
    let mut layers = Vec::new();
    let mut name: Name = x.into();
    while let Neg::Up(p) = a {
        let Pos::Down(inner) = &**p else { break };
        let b = fresh.name("x");
        layers.push((name, b.clone(), (**inner).clone()));
        name = b;
        a = inner;
    }
    (a.clone(), NegWrap { layers })
}

fn is_double_shift_pos(a: &Pos) -> bool {
    matches!(a, Pos::Down(n) if matches!(**n, Neg::Up(_)))
}

fn is_double_shift_neg(a: &Neg) -> bool {
    matches!(a, Neg::Up(p) if matches!(**p, Pos::Down(_)))
}

pub fn has_double_shift(a: &Succedent) -> bool {
    match a {
        Succedent::RFoc(a) | Succedent::SPos(a) => is_double_shift_pos(a),
        Succedent::INeg(a) | Succedent::SuspNeg(a) => is_double_shift_neg(a),
    }
}
