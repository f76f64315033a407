//! Acceptance suite. Prints one line per criterion and exits non-zero when
//! any criterion fails or runs over its time limit.

use focal::gen::{all_polarized, all_uprops, Gen, ATOMS};
use focal_core::admissible::{adm, recipe, Args, Premise, RuleId};
use focal_core::cut::Cutter;
use focal_core::identity::{expand_neg, expand_pos, id_neg, id_pos};
use focal_core::kernel::{
    alpha_eq, check, check_spine, check_term, free_vars, Ctx, Expr, Fresh, Hyp, Sequent, Spine, Term,
    Value,
};
use focal_core::prover::{count_derivations, kripke_refute, prove, provable, Outcome};
use focal_core::syntax::{parse_neg, parse_pos, parse_uprop, polarize, Neg, Pos, Strategy, Succedent, UProp};
use focal_core::translate::{defocalize, erased_sequent, focalize, unfocused_cut, unfocused_identity};
use focal_core::unfocused::{check_uderiv, Multiset, USequent};
use std::time::{Duration, Instant};

type Outcome1 = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome1,
}

fn main() {
    let criteria = [
        Criterion { name: "reference terms and mutants", limit: Duration::from_secs(1), run: reference_terms },
        Criterion { name: "unique derivations", limit: Duration::from_secs(1), run: uniqueness },
        Criterion { name: "several derivations with shifts", limit: Duration::from_secs(5), run: multiplicity },
        Criterion { name: "cut subject reduction", limit: Duration::from_secs(60), run: cut_suite },
        Criterion { name: "identity expansion", limit: Duration::from_secs(30), run: identity_suite },
        Criterion { name: "unfocused rules admissible", limit: Duration::from_secs(60), run: admissibility_suite },
        Criterion { name: "focalization round trip", limit: Duration::from_secs(120), run: round_trip },
        Criterion { name: "provability invariance", limit: Duration::from_secs(300), run: invariance },
        Criterion { name: "unfocused cut and identity", limit: Duration::from_secs(30), run: corollaries },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let run = c.run;
        let start = Instant::now();
        let out = std::thread::Builder::new()
            .stack_size(focal::BIG_STACK)
            .spawn(run)
            .expect("spawn criterion thread")
            .join()
            .unwrap_or_else(|e| Err(format!("panicked: {}", panic_message(&e))));
        let secs = start.elapsed();
        let (ok, detail) = match out {
            Ok(d) if secs <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {} {}: {} ({detail}) [{:.2}s of {}s]",
            i + 1,
            c.name,
            if ok { "PASS" } else { "FAIL" },
            secs.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = e.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = e.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown payload".into()
    }
}

fn neg(text: &str) -> Neg {
    parse_neg(text).unwrap()
}

fn pos(text: &str) -> Pos {
    parse_pos(text).unwrap()
}

fn v(z: &str) -> Value {
    Value::var(z)
}

const FIRST: &str = "dn(p- & q-) -> dn(r- & s-) -> (p- & r-)";
const SECOND: &str = "(p+ * q+) -> (r+ * s+) -> up(p+ * r+)";
const THIRD: &str = "dn(p+ -> s+ -> r-) -> dn(q+ * s+ -> r-) -> s+ -> (p+ + q+) -> r-";
const FOURTH: &str = "p+ -> dn(p+ -> up(q+ + r+)) -> dn(q+ -> up r+) -> up r+";
const SHIFTED: &str = "dn(up p+ & up q+) -> up dn(dn(up r+ & up s+) -> up dn(up p+ & up r+))";

/// Four hand-written proofs and the types they are stated at.
fn references() -> Vec<(Neg, Term)> {
    let first = Term::lam(Term::let_down(
        "x1",
        neg("p- & q-"),
        Term::lam(Term::let_down(
            "x2",
            neg("r- & s-"),
            Term::pair(
                Term::suspend_n(Term::lfoc("x1", Spine::pi1(Spine::Nil, neg("q-")))),
                Term::suspend_n(Term::lfoc("x2", Spine::pi1(Spine::Nil, neg("s-")))),
            ),
        )),
    ));
    let second = Term::lam(Term::split(Term::suspend_p(
        "z1",
        pos("p+"),
        Term::suspend_p(
            "z2",
            pos("q+"),
            Term::lam(Term::split(Term::suspend_p(
                "z3",
                pos("r+"),
                Term::suspend_p("z4", pos("s+"), Term::ret(Term::RFoc(Value::pair(v("z1"), v("z3"))))),
            ))),
        ),
    )));
    let third = Term::lam(Term::let_down(
        "f",
        neg("p+ -> s+ -> r-"),
        Term::lam(Term::let_down(
            "g",
            neg("q+ * s+ -> r-"),
            Term::lam(Term::suspend_p(
                "z",
                pos("s+"),
                Term::lam(Term::case(
                    Term::suspend_p(
                        "z1",
                        pos("p+"),
                        Term::suspend_n(Term::lfoc("f", Spine::app(v("z1"), Spine::app(v("z"), Spine::Nil)))),
                    ),
                    Term::suspend_p(
                        "z2",
                        pos("q+"),
                        Term::suspend_n(Term::lfoc("g", Spine::app(Value::pair(v("z2"), v("z")), Spine::Nil))),
                    ),
                )),
            )),
        )),
    ));
    let fourth = Term::lam(Term::suspend_p(
        "z",
        pos("p+"),
        Term::lam(Term::let_down(
            "f",
            neg("p+ -> up(q+ + r+)"),
            Term::lam(Term::let_down(
                "g",
                neg("q+ -> up r+"),
                Term::ret(Term::lfoc(
                    "f",
                    Spine::app(
                        v("z"),
                        Spine::match_(Term::case(
                            Term::suspend_p(
                                "z1",
                                pos("q+"),
                                Term::lfoc(
                                    "g",
                                    Spine::app(
                                        v("z1"),
                                        Spine::match_(Term::suspend_p("z3", pos("r+"), Term::RFoc(v("z3")))),
                                    ),
                                ),
                            ),
                            Term::suspend_p("z2", pos("r+"), Term::RFoc(v("z2"))),
                        )),
                    ),
                )),
            )),
        )),
    ));
    vec![(neg(FIRST), first), (neg(SECOND), second), (neg(THIRD), third), (neg(FOURTH), fourth)]
}

// Single-node mutations: change a constructor, a name, an annotation or the
// order of children at one node, or delete a node in favour of a child.

struct Mutator {
    names: Vec<String>,
    pos_alts: Vec<Pos>,
    neg_alts: Vec<Neg>,
}

fn boxed<T>(t: T) -> Box<T> {
    Box::new(t)
}

impl Mutator {
    fn new(t: &Term) -> Self {
        let names = focal_core::kernel::all_names(&Expr::Term(t.clone())).into_iter().collect();
        let atoms = ["p", "q", "r", "s"];
        let mut pos_alts: Vec<Pos> = atoms.iter().map(|a| Pos::atom(a)).collect();
        pos_alts.extend([Pos::One, Pos::Zero, Pos::down(Neg::atom("p"))]);
        let mut neg_alts: Vec<Neg> = atoms.iter().map(|a| Neg::atom(a)).collect();
        neg_alts.extend([Neg::Top, Neg::up(Pos::atom("p"))]);
        Mutator { names, pos_alts, neg_alts }
    }

    fn other_names(&self, x: &str) -> Vec<String> {
        self.names.iter().filter(|n| *n != x).cloned().collect()
    }

    fn other_pos(&self, a: &Pos) -> Vec<Pos> {
        self.pos_alts.iter().filter(|b| *b != a).cloned().collect()
    }

    fn other_neg(&self, a: &Neg) -> Vec<Neg> {
        self.neg_alts.iter().filter(|b| *b != a).cloned().collect()
    }

    fn value(&self, val: &Value) -> Vec<Value> {
        let mut out = Vec::new();
        match val {
            Value::Var(z) => {
                out.extend(self.other_names(z).into_iter().map(Value::Var));
                out.push(Value::UnitP);
            }
            Value::Thunk(n) => {
                out.push(Value::UnitP);
                out.extend(self.term(n).into_iter().map(Value::thunk));
            }
            Value::Inl(w, b) | Value::Inr(w, b) => {
                let left = matches!(val, Value::Inl(..));
                let rebuild = |w: Value, b: Pos, left: bool| if left { Value::inl(w, b) } else { Value::inr(w, b) };
                out.push(rebuild((**w).clone(), b.clone(), !left));
                out.push((**w).clone());
                out.push(Value::UnitP);
                out.extend(self.other_pos(b).into_iter().map(|c| rebuild((**w).clone(), c, left)));
                out.extend(self.value(w).into_iter().map(|w| rebuild(w, b.clone(), left)));
            }
            Value::UnitP => out.extend(self.names.iter().map(|n| Value::var(n))),
            Value::PairP(a, b) => {
                out.push(Value::PairP(b.clone(), a.clone()));
                out.push((**a).clone());
                out.push((**b).clone());
                out.push(Value::UnitP);
                out.extend(self.value(a).into_iter().map(|a| Value::PairP(boxed(a), b.clone())));
                out.extend(self.value(b).into_iter().map(|b| Value::PairP(a.clone(), boxed(b))));
            }
        }
        out
    }

    fn unary(kind: usize, n: Term) -> Term {
        match kind {
            0 => Term::let_unit(n),
            1 => Term::split(n),
            2 => Term::suspend_n(n),
            3 => Term::ret(n),
            _ => Term::lam(n),
        }
    }

    fn term(&self, t: &Term) -> Vec<Term> {
        let mut out = Vec::new();
        let leaves = [Term::Abort, Term::UnitN];
        out.extend(leaves.iter().filter(|l| *l != t).cloned());
        match t {
            Term::RFoc(val) => out.extend(self.value(val).into_iter().map(Term::RFoc)),
            Term::LFoc(x, s) => {
                out.extend(self.other_names(x).into_iter().map(|y| Term::LFoc(y, s.clone())));
                out.extend(self.spine(s).into_iter().map(|s| Term::LFoc(x.clone(), s)));
            }
            Term::SuspendP(z, a, n) => {
                out.push((**n).clone());
                out.extend(self.other_names(z).into_iter().map(|y| Term::SuspendP(y, a.clone(), n.clone())));
                out.extend(self.other_pos(a).into_iter().map(|b| Term::SuspendP(z.clone(), b, n.clone())));
                out.extend(self.term(n).into_iter().map(|n| Term::SuspendP(z.clone(), a.clone(), boxed(n))));
            }
            Term::LetDown(x, a, n) => {
                out.push((**n).clone());
                out.extend(self.other_names(x).into_iter().map(|y| Term::LetDown(y, a.clone(), n.clone())));
                out.extend(self.other_neg(a).into_iter().map(|b| Term::LetDown(x.clone(), b, n.clone())));
                out.extend(self.term(n).into_iter().map(|n| Term::LetDown(x.clone(), a.clone(), boxed(n))));
            }
            Term::Abort | Term::UnitN => {}
            Term::Case(a, b) | Term::PairN(a, b) => {
                let case = matches!(t, Term::Case(..));
                let rebuild = |a: Box<Term>, b: Box<Term>, case: bool| if case { Term::Case(a, b) } else { Term::PairN(a, b) };
                out.push(rebuild(a.clone(), b.clone(), !case));
                out.push(rebuild(b.clone(), a.clone(), case));
                out.push((**a).clone());
                out.push((**b).clone());
                out.extend(self.term(a).into_iter().map(|a| rebuild(boxed(a), b.clone(), case)));
                out.extend(self.term(b).into_iter().map(|b| rebuild(a.clone(), boxed(b), case)));
            }
            Term::LetUnit(n) | Term::Split(n) | Term::SuspendN(n) | Term::Ret(n) | Term::Lam(n) => {
                let kind = match t {
                    Term::LetUnit(_) => 0,
                    Term::Split(_) => 1,
                    Term::SuspendN(_) => 2,
                    Term::Ret(_) => 3,
                    _ => 4,
                };
                out.extend((0..5).filter(|k| *k != kind).map(|k| Self::unary(k, (**n).clone())));
                out.push((**n).clone());
                out.extend(self.term(n).into_iter().map(|n| Self::unary(kind, n)));
            }
        }
        out
    }

    fn spine(&self, s: &Spine) -> Vec<Spine> {
        let mut out = Vec::new();
        match s {
            Spine::Nil => out.push(Spine::match_(Term::Abort)),
            Spine::Match(n) => {
                out.push(Spine::Nil);
                out.extend(self.term(n).into_iter().map(Spine::match_));
            }
            Spine::App(val, rest) => {
                out.push(Spine::Nil);
                out.push((**rest).clone());
                out.extend(self.value(val).into_iter().map(|w| Spine::App(w, rest.clone())));
                out.extend(self.spine(rest).into_iter().map(|r| Spine::App(val.clone(), boxed(r))));
            }
            Spine::Pi1(rest, b) | Spine::Pi2(rest, b) => {
                let first = matches!(s, Spine::Pi1(..));
                let rebuild = |r: Spine, b: Neg, first: bool| if first { Spine::pi1(r, b) } else { Spine::pi2(r, b) };
                out.push(Spine::Nil);
                out.push(rebuild((**rest).clone(), b.clone(), !first));
                out.push((**rest).clone());
                out.extend(self.other_neg(b).into_iter().map(|c| rebuild((**rest).clone(), c, first)));
                out.extend(self.spine(rest).into_iter().map(|r| rebuild(r, b.clone(), first)));
            }
        }
        out
    }
}

fn reference_terms() -> Outcome1 {
    let (mut mutants, mut renamings) = (0, 0);
    for (i, (a, t)) in references().into_iter().enumerate() {
        let u = Succedent::INeg(a);
        check_term(&Ctx::new(), &[], &t, &u).map_err(|e| format!("term {} does not check: {e}", i + 1))?;
        for m in Mutator::new(&t).term(&t) {
            // Renaming an unused binder gives the same term.
            if alpha_eq(&m, &t) {
                renamings += 1;
                continue;
            }
            mutants += 1;
            ensure!(check_term(&Ctx::new(), &[], &m, &u).is_err(), "term {}: mutant {m} still checks", i + 1);
        }
    }
    Ok(format!("4 terms check, {mutants} mutants rejected, {renamings} α-equivalent renamings skipped"))
}

fn uniqueness() -> Outcome1 {
    let refs = references();
    for (text, (_, want)) in [FIRST, SECOND].into_iter().zip(&refs) {
        let u = Succedent::INeg(neg(text));
        let c = count_derivations(&Ctx::new(), &u, None).map_err(|e| e.to_string())?;
        ensure!(c.count == 1 && c.exact, "{text}: {c:?}");
        let t = prove(&Ctx::new(), &u).map_err(|e| e.to_string())?.proved().ok_or(format!("{text} not proved"))?;
        ensure!(alpha_eq(&t, want), "{text}: found {t}");
    }
    Ok("exactly one derivation each, equal to the reference terms".into())
}

fn multiplicity() -> Outcome1 {
    let u = Succedent::INeg(neg(SHIFTED));
    let c = count_derivations(&Ctx::new(), &u, Some(1_000_000)).map_err(|e| e.to_string())?;
    ensure!(c.count >= 6, "only {} derivations ({c:?})", c.count);
    Ok(format!("{} derivations{}", c.count, if c.exact { "" } else { " found, count is a lower bound" }))
}

// Cut instances. Every instance has premises of total size at most 25.

const CUT_INSTANCES: usize = 1000;
const MAX_CUT_SIZE: usize = 25;
const CUT_ATTEMPTS: usize = 400_000;

struct CutStats {
    calls: usize,
    max_depth: usize,
}

fn audited<T>(
    ctx: &Ctx,
    stats: &mut CutStats,
    f: impl FnOnce(&mut Cutter<'_>) -> Result<T, focal_core::cut::CutError>,
) -> Result<T, String> {
    let mut fresh = Fresh::new();
    for (x, _) in ctx.iter() {
        fresh.reserve(x);
    }
    let mut c = Cutter::audited(&mut fresh);
    let out = f(&mut c).map_err(|e| e.to_string())?;
    let audit = c.audit().unwrap();
    ensure!(audit.violations.is_empty(), "metric did not decrease: {:?}", audit.violations[0]);
    stats.calls += audit.calls;
    stats.max_depth = stats.max_depth.max(audit.max_depth);
    Ok(out)
}

/// One attempt at an instance of `part`; `Ok(None)` when the generator
/// found nothing usable.
fn cut_attempt(g: &mut Gen, part: u8, stats: &mut CutStats) -> Result<Option<()>, String> {
    let ctx = g.ctx(2, 5);
    match part {
        1 => {
            let a = g.pos(6);
            let Some(v) = g.value(&ctx, &a) else { return Ok(None) };
            let omega = if g.omega(3).is_empty() { Vec::new() } else { vec![g.pos(3)] };
            let u = g.goal(5);
            let mut full = vec![a.clone()];
            full.extend(omega.iter().cloned());
            let Some(n) = g.term(&ctx, &full, &u) else { return Ok(None) };
            if v.size() + n.size() > MAX_CUT_SIZE {
                return Ok(None);
            }
            let out = audited(&ctx, stats, |c| c.cut_pos(&v, &a, &n))?;
            check_term(&ctx, &omega, &out, &u).map_err(|e| format!("{v} • {n} gave {out}: {e}"))?;
        }
        2 => {
            let a = g.neg(6);
            let Some(m) = g.term(&ctx, &[], &Succedent::INeg(a.clone())) else { return Ok(None) };
            let u = g.stable_goal(5);
            let Some(s) = g.spine(&ctx, &a, &u) else { return Ok(None) };
            if m.size() + s.size() > MAX_CUT_SIZE {
                return Ok(None);
            }
            let out = audited(&ctx, stats, |c| c.cut_neg(&m, &a, &s))?;
            check_term(&ctx, &[], &out, &u).map_err(|e| format!("{m} • {s} gave {out}: {e}"))?;
        }
        3 => {
            let a = g.neg(5);
            let Some(m) = g.term(&ctx, &[], &Succedent::INeg(a.clone())) else { return Ok(None) };
            let inner = ctx.clone().with("x", Hyp::Neg(a.clone()));
            let (seq, e) = match g.rng_index(3) {
                0 => {
                    let b = g.pos(5);
                    let Some(e) = g.value(&inner, &b) else { return Ok(None) };
                    (Sequent::value(ctx.clone(), b), Expr::Value(e))
                }
                1 => {
                    let omega = g.omega(3);
                    let u = g.goal(5);
                    let Some(e) = g.term(&inner, &omega, &u) else { return Ok(None) };
                    (Sequent::term(ctx.clone(), omega, u), Expr::Term(e))
                }
                _ => {
                    let b = g.neg(5);
                    let u = g.stable_goal(4);
                    let Some(e) = g.spine(&inner, &b, &u) else { return Ok(None) };
                    (Sequent::spine(ctx.clone(), b, u), Expr::Spine(e))
                }
            };
            if !free_vars(&e).contains("x") || m.size() + expr_size(&e) > MAX_CUT_SIZE {
                return Ok(None);
            }
            let out = audited(&ctx, stats, |c| c.rsubst(&m, "x", &a, &e))?;
            check(&seq, &out).map_err(|err| format!("[{m}/x]{e:?} gave {out:?}: {err}"))?;
        }
        _ => {
            let a = g.pos(5);
            let target = Succedent::SPos(a.clone());
            let u = g.stable_goal(5);
            let Some(n) = g.term(&ctx, std::slice::from_ref(&a), &u) else { return Ok(None) };
            if g.rng_index(2) == 0 {
                let omega = g.omega(3);
                let Some(e) = g.term(&ctx, &omega, &target) else { return Ok(None) };
                if e.size() + n.size() > MAX_CUT_SIZE {
                    return Ok(None);
                }
                let out = audited(&ctx, stats, |c| c.lsubst_term(&e, &a, &n))?;
                check_term(&ctx, &omega, &out, &u).map_err(|err| format!("[{e}]{n} gave {out}: {err}"))?;
            } else {
                let b = g.neg(5);
                let Some(e) = g.spine(&ctx, &b, &target) else { return Ok(None) };
                if e.size() + n.size() > MAX_CUT_SIZE {
                    return Ok(None);
                }
                let out = audited(&ctx, stats, |c| c.lsubst_spine(&e, &a, &n))?;
                check_spine(&ctx, &out, &b, &u).map_err(|err| format!("[{e}]{n} gave {out}: {err}"))?;
            }
        }
    }
    Ok(Some(()))
}

fn expr_size(e: &Expr) -> usize {
    match e {
        Expr::Value(v) => v.size(),
        Expr::Term(t) => t.size(),
        Expr::Spine(s) => s.size(),
    }
}

trait Index {
    fn rng_index(&mut self, n: usize) -> usize;
}

impl Index for Gen {
    fn rng_index(&mut self, n: usize) -> usize {
        use rand::Rng;
        self.rng.gen_range(0..n)
    }
}

fn cut_suite() -> Outcome1 {
    let mut stats = CutStats { calls: 0, max_depth: 0 };
    for part in 1..=4u8 {
        let mut g = Gen::new(0xC07 + part as u64);
        let mut found = 0;
        let mut attempts = 0;
        while found < CUT_INSTANCES {
            ensure!(attempts < CUT_ATTEMPTS, "part {part}: only {found} instances in {attempts} attempts");
            attempts += 1;
            if cut_attempt(&mut g, part, &mut stats).map_err(|e| format!("part {part}: {e}"))?.is_some() {
                found += 1;
            }
        }
    }
    Ok(format!(
        "4 x {CUT_INSTANCES} instances, {} audited calls, recursion depth up to {}",
        stats.calls, stats.max_depth
    ))
}

fn identity_suite() -> Outcome1 {
    let (ps, ns) = all_polarized(6, &ATOMS);
    let mut f = Fresh::new();
    for a in &ps {
        let t = id_pos(a, &mut f);
        check_term(&Ctx::new(), std::slice::from_ref(a), &t, &Succedent::SPos(a.clone()))
            .map_err(|e| format!("id at {a}: {e}"))?;
    }
    for a in &ns {
        let ctx = Ctx::new().with("x", Hyp::Neg(a.clone()));
        let t = id_neg(a, "x", &mut f);
        check_term(&ctx, &[], &t, &Succedent::INeg(a.clone())).map_err(|e| format!("id at {a}: {e}"))?;
    }
    // Premises that mention a suspended compound proposition.
    let mut explicit = 0;
    for text in ["p+ + q+", "(p+ + q+) * 1", "dn p- + (q+ + 0)"] {
        let a = pos(text);
        let n = Term::RFoc(v("z"));
        let ctx = Ctx::new().with("z", Hyp::Susp(a.clone()));
        let u = Succedent::SPos(a.clone());
        check_term(&ctx, &[], &n, &u).map_err(|e| format!("premise at {text}: {e}"))?;
        let out = expand_pos(&a, "z", &n, &mut f);
        check_term(&Ctx::new(), std::slice::from_ref(&a), &out, &u).map_err(|e| format!("{text}: {e}"))?;
        explicit += 1;
    }
    for text in ["up(p+ + q+)", "(p+ + q+) -> up(q+ + (p+ + q+))"] {
        let a = neg(text);
        let n = Term::lfoc("x", Spine::Nil);
        let ctx = Ctx::new().with("x", Hyp::Neg(a.clone()));
        check_term(&ctx, &[], &n, &Succedent::SuspNeg(a.clone())).map_err(|e| format!("premise at {text}: {e}"))?;
        let out = expand_neg(&a, &n, &mut f);
        check_term(&ctx, &[], &out, &Succedent::INeg(a.clone())).map_err(|e| format!("{text}: {e}"))?;
        explicit += 1;
    }
    Ok(format!("{} positive and {} negative propositions, {explicit} suspended cases", ps.len(), ns.len()))
}

const RULE_INSTANCES: usize = 200;
const RULE_ATTEMPTS: usize = 200_000;

fn admissibility_suite() -> Outcome1 {
    let mut g = Gen::new(0xAD);
    for rule in RuleId::ALL {
        let mut found = 0;
        let mut attempts = 0;
        while found < RULE_INSTANCES {
            ensure!(attempts < RULE_ATTEMPTS, "{}: only {found} instances", rule.name());
            attempts += 1;
            let Some((ctx, goal, args)) = g.rule_instance(rule, 5) else { continue };
            let t = adm(rule, &ctx, &goal, &args, &mut Fresh::new()).map_err(|e| format!("{}: {e}", rule.name()))?;
            check_term(&ctx, &[], &t, &goal).map_err(|e| format!("{} at {ctx} ⊢ {goal}: {e}", rule.name()))?;
            found += 1;
        }
    }
    let ctx = Ctx::new().with("a", Hyp::Susp(Pos::atom("p"))).with("b", Hyp::Susp(Pos::atom("q")));
    let goal = Succedent::SPos(Pos::and(Pos::atom("p"), Pos::atom("q")));
    let args = Args::none()
        .premise(Premise::new(Term::RFoc(v("a"))))
        .premise(Premise::new(Term::RFoc(v("b"))));
    let (r, _) = recipe(RuleId::AndPosUR, &ctx, &goal, &args, &mut Fresh::new()).map_err(|e| e.to_string())?;
    let want = "rsubst(↑R(premise), lsubst(weaken(premise), expand⁺(foc_L(↑L(expand⁺(foc_R(∧⁺R(id⁺, id⁺))))))))";
    ensure!(r.shape() == want, "∧⁺uR recipe is {}", r.shape());
    let t = adm(RuleId::AndPosUR, &ctx, &goal, &args, &mut Fresh::new()).map_err(|e| e.to_string())?;
    ensure!(alpha_eq(&t, &Term::RFoc(Value::pair(v("a"), v("b")))), "∧⁺uR gave {t}");
    Ok(format!("20 rules x {RULE_INSTANCES} instances, pinned ∧⁺uR shape matches"))
}

fn round_trip() -> Outcome1 {
    let props = all_uprops(6, &ATOMS);
    let (mut proved, mut focalized) = (0, 0);
    for p in &props {
        for s in Strategy::ALL {
            let u = Succedent::INeg(polarize(p, s));
            let Some(t) = prove(&Ctx::new(), &u).map_err(|e| e.to_string())?.proved() else { continue };
            proved += 1;
            let seq = Sequent::term(Ctx::new(), Vec::new(), u);
            let d = defocalize(&seq, &Expr::Term(t.clone())).map_err(|e| format!("defocalize {t}: {e}"))?;
            let es = erased_sequent(&seq).map_err(|e| e.to_string())?;
            check_uderiv(&es, &d).map_err(|e| format!("defocalized {t}: {e}"))?;
            let d = d.unwrap_nil();
            for target in Strategy::ALL {
                let goal = Succedent::SPos(Pos::down(polarize(p, target)));
                let n = focalize(&d, &Ctx::new(), &goal, &mut Fresh::new())
                    .map_err(|e| format!("focalize {p} under {target}: {e}"))?;
                check_term(&Ctx::new(), &[], &n, &goal).map_err(|e| format!("focalized {p} under {target}: {e}"))?;
                focalized += 1;
            }
        }
    }
    Ok(format!("{} propositions, {proved} proofs defocalized, {focalized} focalized terms check", props.len()))
}

/// Well-known formulas and whether they are intuitionistically valid.
const CLASSICS: [(&str, bool); 20] = [
    ("((p -> q) -> p) -> p", false),
    ("((p \\/ (p -> false)) -> false) -> false", true),
    ("((p \\/ q) -> false) -> (p -> false) /\\ (q -> false)", true),
    ("((p /\\ q) -> false) -> (p -> false) \\/ (q -> false)", false),
    ("p \\/ (p -> false)", false),
    ("((p -> false) -> false) -> p", false),
    ("p -> (p -> false) -> false", true),
    ("(p -> q) -> (q -> false) -> p -> false", true),
    ("((q -> false) -> p -> false) -> p -> q", false),
    ("(p -> q) \\/ (q -> p)", false),
    ("((((p -> false) -> false) -> p) -> false) -> false", true),
    ("p /\\ q -> q /\\ p", true),
    ("p \\/ q -> q \\/ p", true),
    ("p -> q -> p", true),
    ("(p -> p -> q) -> p -> q", true),
    ("false -> p", true),
    ("(p /\\ (p -> false)) -> false", true),
    ("(p -> false) \\/ q -> p -> q", true),
    ("(p -> q) -> (p -> false) \\/ q", false),
    ("((p -> false) -> p) -> p", false),
];

fn invariance() -> Outcome1 {
    let props = all_uprops(7, &ATOMS);
    let (mut valid, mut refuted) = (0, 0);
    for p in &props {
        let got: Vec<bool> = Strategy::ALL.iter().map(|s| provable(p, *s)).collect();
        ensure!(got.iter().all(|b| *b == got[0]), "{p}: strategies disagree {got:?}");
        if got[0] {
            valid += 1;
        }
        if kripke_refute(p, 3).is_some() {
            ensure!(!got[0], "{p} is provable but has a countermodel");
            refuted += 1;
        }
    }
    for (text, want) in CLASSICS {
        let p = parse_uprop(text).map_err(|e| format!("{text}: {e}"))?;
        let countermodel = kripke_refute(&p, if want { 4 } else { 3 });
        ensure!(countermodel.is_some() != want, "oracle disagrees with the expectation for {text}");
        for s in Strategy::ALL {
            ensure!(provable(&p, s) == want, "{text} under {s}: expected {want}");
        }
    }
    Ok(format!(
        "{} propositions agree ({valid} provable, {refuted} refuted within 3 worlds), {} classics match",
        props.len(),
        CLASSICS.len()
    ))
}

const COROLLARY_INSTANCES: usize = 200;

/// An unfocused derivation of `Γ ⊢ P`, through the prover.
fn derivation(gamma: &[UProp], p: &UProp) -> Option<focal_core::UDeriv> {
    let mut ctx = Ctx::new();
    for (i, q) in gamma.iter().enumerate() {
        ctx.push(format!("h{i}"), Hyp::Neg(polarize(q, Strategy::AllNeg)));
    }
    let u = Succedent::SPos(Pos::down(polarize(p, Strategy::AllNeg)));
    let mut prover = focal_core::prover::Prover::new().with_budget(20_000);
    let Ok(Outcome::Proved(t)) = prover.prove(&ctx, &u) else { return None };
    let d = defocalize(&Sequent::term(ctx, Vec::new(), u), &Expr::Term(t)).ok()?;
    Some(d.unwrap_nil())
}

fn corollaries() -> Outcome1 {
    let mut g = Gen::new(0xC0);
    let (mut cuts, mut attempts) = (0, 0);
    while cuts < COROLLARY_INSTANCES {
        ensure!(attempts < 200_000, "only {cuts} cut instances");
        attempts += 1;
        let mut gamma: Vec<UProp> = (0..g.rng_index(3)).map(|_| g.uprop(4)).collect();
        gamma.sort();
        gamma.dedup();
        let p = g.uprop(5);
        let q = g.uprop(5);
        if gamma.contains(&p) {
            continue;
        }
        let Some(d1) = derivation(&gamma, &p) else { continue };
        let mut with_p = gamma.clone();
        with_p.push(p.clone());
        let Some(d2) = derivation(&with_p, &q) else { continue };
        let ms: Multiset = gamma.iter().cloned().collect();
        let d = unfocused_cut(&ms, &p, &q, &d1, &d2).map_err(|e| format!("cut of {p} into {q}: {e}"))?;
        check_uderiv(&USequent::plain(ms, q.clone()), &d).map_err(|e| format!("cut of {p} into {q}: {e}"))?;
        cuts += 1;
    }
    for _ in 0..COROLLARY_INSTANCES {
        let p = g.uprop(8);
        let d = unfocused_identity(&p).map_err(|e| format!("identity at {p}: {e}"))?;
        let s = USequent::plain(std::iter::once(p.clone()).collect(), p.clone());
        check_uderiv(&s, &d).map_err(|e| format!("identity at {p}: {e}"))?;
    }
    Ok(format!("{COROLLARY_INSTANCES} cuts and {COROLLARY_INSTANCES} identities check"))
}
