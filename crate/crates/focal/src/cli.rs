//! The `focal` command line.

use crate::gen::RngChooser;
use crate::sexp::{FromSexp, Judgment, Sexp, SexpError, ToSexp};
use clap::{Parser, Subcommand, ValueEnum};
use focal_core::identity::{expand_neg, expand_pos, id_neg, id_pos};
use focal_core::kernel::{check, Ante, Ctx, Expr, Fresh, Hyp, Sequent};
use focal_core::prover::{kripke_refute, Outcome, Prover, Stats};
use focal_core::syntax::{
    erase_neg, erase_pos, parse_pprop, parse_uprop, polarize, PProp, Strategy, Succedent,
};
use focal_core::translate::{defocalize, erased_sequent, focalize};
use focal_core::unfocused::{check_uderiv, UDeriv, USequent};
use focal_core::{cut, Term};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Neg,
    Pos,
    Fullshift,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Neg => Strategy::AllNeg,
            StrategyArg::Pos => Strategy::AllPos,
            StrategyArg::Fullshift => Strategy::FullShift,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Sexp,
    JsonLines,
}

#[derive(Debug, Parser)]
#[command(name = "focal", version, about = "Focused proof terms for polarized intuitionistic logic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Polarization strategy for unpolarized input.
    #[arg(long, global = true, value_enum, default_value = "neg")]
    pub strategy: StrategyArg,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Stable sequents the prover may visit.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Seed for the prover's choice order; the default order is fixed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a proposition and print it back.
    Parse {
        text: String,
        #[arg(long)]
        polarized: bool,
    },
    /// Erase a polarized proposition.
    Erase { text: String },
    /// Polarize an unpolarized proposition.
    Polarize { text: String },
    /// Check a focused judgment read from FILE.
    Check { file: String },
    /// Check an unfocused derivation, `(check-u SEQ D)`, read from FILE.
    CheckU { file: String },
    /// Eliminate a cut: `(cut-pos J J)`, `(cut-neg J J)`, `(rsubst J x J)` or `(lsubst J J)`.
    Cut { file: String },
    /// Expand: `(expand+ z J)`, `(expand- J)`, `(id+ A)` or `(id- A)`.
    Expand { file: String },
    /// Focalize `(focalize CTX U D)`.
    Focalize { file: String },
    /// De-focalize a focused judgment.
    Defocalize { file: String },
    /// Search for a focused proof.
    Prove {
        text: String,
        #[arg(long)]
        polarized: bool,
    },
    /// Count focused derivations.
    Count {
        text: String,
        #[arg(long)]
        polarized: bool,
    },
    /// Search for a Kripke countermodel.
    Refute {
        text: String,
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
    },
}

/// What a run printed and its exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    kind: &'static str,
    message: String,
    code: i32,
}

fn usage(kind: &'static str, message: impl std::fmt::Display) -> Failure {
    Failure { kind, message: message.to_string(), code: 2 }
}

fn negative(kind: &'static str, message: impl std::fmt::Display) -> Failure {
    Failure { kind, message: message.to_string(), code: 1 }
}

impl From<SexpError> for Failure {
    fn from(e: SexpError) -> Self {
        usage("parse", e)
    }
}

type Res<T> = Result<T, Failure>;

struct Out<'a> {
    format: Format,
    buf: &'a mut String,
}

impl Out<'_> {
    /// Print `text`, `sexp` or a json record according to the format.
    fn emit(&mut self, text: impl FnOnce() -> String, sexp: impl FnOnce() -> Sexp, record: impl FnOnce() -> Json) {
        let line = match self.format {
            Format::Text => text(),
            Format::Sexp => sexp().to_string(),
            Format::JsonLines => record().to_string(),
        };
        let _ = writeln!(self.buf, "{line}");
    }
}

pub fn run<I, T>(args: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Report { code, stdout: text, stderr: String::new() }
            } else {
                Report { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut stdout = String::new();
    let result = execute(&cli, &mut Out { format: cli.format, buf: &mut stdout });
    match result {
        Ok(code) => Report { code, stdout, stderr: String::new() },
        Err(f) => Report { code: f.code, stdout, stderr: format!("focal: error[{}]: {}\n", f.kind, f.message) },
    }
}

fn read_input(file: &str) -> Res<String> {
    let mut s = String::new();
    if file == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage("io", e))?;
    } else {
        s = std::fs::read_to_string(file).map_err(|e| usage("io", format!("{file}: {e}")))?;
    }
    Ok(s)
}

fn read_sexp(file: &str) -> Res<Sexp> {
    Ok(Sexp::parse(&read_input(file)?)?)
}

fn form<'a>(s: &'a Sexp, heads: &[&'static str]) -> Res<(&'a str, &'a [Sexp])> {
    let expected = heads.join(", ");
    match s {
        Sexp::List(items) => match items.split_first() {
            Some((Sexp::Sym(h), rest)) if heads.contains(&h.as_str()) => Ok((h.as_str(), rest)),
            _ => Err(usage("parse", format!("expected one of ({expected} ...)"))),
        },
        Sexp::Sym(_) => Err(usage("parse", format!("expected one of ({expected} ...)"))),
    }
}

fn arity<'a, const N: usize>(head: &str, rest: &'a [Sexp]) -> Res<&'a [Sexp; N]> {
    rest.try_into().map_err(|_| usage("parse", format!("({head} ...) takes {N} arguments, got {}", rest.len())))
}

/// Check a judgment, failing with exit code 1.
fn checked(j: &Judgment, what: &str) -> Res<()> {
    check(&j.seq, &j.expr).map_err(|e| negative("check", format!("{what} does not check at {}: {e}", j.seq)))
}

fn judgment_out(out: &mut Out<'_>, j: &Judgment) {
    out.emit(
        || format!("{}\n{}", j.seq, j.expr),
        || j.to_sexp(),
        || json!({"status": "ok", "sequent": j.seq.to_string(), "expr": j.expr.to_string(), "sexp": j.to_sexp().to_string()}),
    );
}

fn prove_target(text: &str, polarized: bool, s: Strategy) -> Res<Succedent> {
    if polarized {
        return match parse_pprop(text).map_err(|e| usage("parse", e))? {
            PProp::Neg(a) => Ok(Succedent::INeg(a)),
            PProp::Pos(a) => Ok(Succedent::SPos(a)),
        };
    }
    let p = parse_uprop(text).map_err(|e| usage("parse", e))?;
    Ok(Succedent::INeg(polarize(&p, s)))
}

fn stats_json(st: Stats) -> Json {
    json!({"stable_sequents": st.stable_visited, "prunes": st.prunes})
}

fn execute(cli: &Cli, out: &mut Out<'_>) -> Res<i32> {
    let strategy: Strategy = cli.strategy.into();
    match &cli.command {
        Command::Parse { text, polarized } => {
            if *polarized {
                let a = parse_pprop(text).map_err(|e| usage("parse", e))?;
                let sx = match &a {
                    PProp::Pos(p) => p.to_sexp(),
                    PProp::Neg(n) => n.to_sexp(),
                };
                let sort = if matches!(a, PProp::Pos(_)) { "positive" } else { "negative" };
                out.emit(|| a.to_string(), || sx.clone(), || json!({"sort": sort, "text": a.to_string(), "sexp": sx.to_string()}));
            } else {
                let p = parse_uprop(text).map_err(|e| usage("parse", e))?;
                out.emit(|| p.to_string(), || p.to_sexp(), || json!({"text": p.to_string(), "sexp": p.to_sexp().to_string()}));
            }
            Ok(0)
        }
        Command::Erase { text } => {
            let a = parse_pprop(text).map_err(|e| usage("parse", e))?;
            let p = match &a {
                PProp::Pos(a) => erase_pos(a),
                PProp::Neg(a) => erase_neg(a),
            };
            out.emit(|| p.to_string(), || p.to_sexp(), || json!({"text": p.to_string()}));
            Ok(0)
        }
        Command::Polarize { text } => {
            let p = parse_uprop(text).map_err(|e| usage("parse", e))?;
            let a = polarize(&p, strategy);
            out.emit(|| a.to_string(), || a.to_sexp(), || json!({"strategy": strategy.to_string(), "text": a.to_string()}));
            Ok(0)
        }
        Command::Check { file } => {
            let j = Judgment::from_sexp(&read_sexp(file)?)?;
            checked(&j, "the expression")?;
            out.emit(|| format!("ok: {}", j.seq), || Sexp::Sym("ok".into()), || json!({"status": "ok", "sequent": j.seq.to_string()}));
            Ok(0)
        }
        Command::CheckU { file } => {
            let s = read_sexp(file)?;
            let (h, rest) = form(&s, &["check-u"])?;
            let [q, d] = arity::<2>(h, rest)?;
            let (q, d) = (USequent::from_sexp(q)?, UDeriv::from_sexp(d)?);
            check_uderiv(&q, &d).map_err(|e| negative("check", e))?;
            out.emit(|| format!("ok: {q}"), || Sexp::Sym("ok".into()), || json!({"status": "ok", "sequent": q.to_string()}));
            Ok(0)
        }
        Command::Cut { file } => {
            let j = cut_command(&read_sexp(file)?)?;
            checked(&j, "the cut result")?;
            judgment_out(out, &j);
            Ok(0)
        }
        Command::Expand { file } => {
            let j = expand_command(&read_sexp(file)?)?;
            checked(&j, "the expansion")?;
            judgment_out(out, &j);
            Ok(0)
        }
        Command::Focalize { file } => {
            let s = read_sexp(file)?;
            let (h, rest) = form(&s, &["focalize"])?;
            let [c, u, d] = arity::<3>(h, rest)?;
            let (ctx, u, d) = (Ctx::from_sexp(c)?, Succedent::from_sexp(u)?, UDeriv::from_sexp(d)?);
            let t = focalize(&d, &ctx, &u, &mut Fresh::new()).map_err(|e| negative("focalize", e))?;
            let j = Judgment { seq: Sequent::term(ctx, Vec::new(), u), expr: Expr::Term(t) };
            checked(&j, "the focalized term")?;
            judgment_out(out, &j);
            Ok(0)
        }
        Command::Defocalize { file } => {
            let j = Judgment::from_sexp(&read_sexp(file)?)?;
            let d = defocalize(&j.seq, &j.expr).map_err(|e| negative("defocalize", e))?;
            let q = erased_sequent(&j.seq).map_err(|e| negative("defocalize", e))?;
            check_uderiv(&q, &d).map_err(|e| negative("check", e))?;
            let sx = Sexp::List(vec![Sexp::Sym("check-u".into()), q.to_sexp(), d.to_sexp()]);
            out.emit(|| format!("{q}\n{}", d.to_sexp()), || sx.clone(), || json!({"status": "ok", "sequent": q.to_string(), "sexp": sx.to_string()}));
            Ok(0)
        }
        Command::Prove { text, polarized } => {
            let u = prove_target(text, *polarized, strategy)?;
            let mut rng = cli.seed.map(ChaCha8Rng::seed_from_u64);
            let mut chooser = rng.as_mut().map(RngChooser);
            let mut p = Prover::new();
            p.budget = cli.budget;
            if let Some(c) = chooser.as_mut() {
                p = p.with_chooser(c);
            }
            let res = p.prove(&Ctx::new(), &u).map_err(|e| negative("prove", e))?;
            let st = p.stats();
            let goal = u.to_string();
            match res {
                Outcome::Proved(t) => {
                    out.emit(
                        || t.to_string(),
                        || t.to_sexp(),
                        || json!({"status": "proved", "goal": goal, "term": t.to_string(), "sexp": t.to_sexp().to_string(), "stats": stats_json(st)}),
                    );
                    Ok(0)
                }
                other => {
                    let status = if other == Outcome::Exhausted { "exhausted" } else { "not-provable" };
                    out.emit(|| status.into(), || Sexp::Sym(status.into()), || json!({"status": status, "goal": goal, "stats": stats_json(st)}));
                    Ok(1)
                }
            }
        }
        Command::Count { text, polarized } => {
            let u = prove_target(text, *polarized, strategy)?;
            let mut p = Prover::new();
            p.budget = cli.budget;
            let c = p.count(&Ctx::new(), &u).map_err(|e| negative("count", e))?;
            let st = p.stats();
            let kind = if c.exact { "exact" } else { "lower-bound" };
            out.emit(
                || format!("{} ({kind})", c.count),
                || Sexp::List(vec![Sexp::Sym("count".into()), Sexp::Sym(c.count.to_string()), Sexp::Sym(kind.into())]),
                || json!({"status": "counted", "goal": u.to_string(), "count": c.count.to_string(), "exact": c.exact, "stats": stats_json(st)}),
            );
            Ok(0)
        }
        Command::Refute { text, max_worlds } => {
            if *max_worlds > 5 {
                return Err(usage("usage", "--max-worlds is at most 5"));
            }
            let p = parse_uprop(text).map_err(|e| usage("parse", e))?;
            match kripke_refute(&p, *max_worlds) {
                Some(m) => {
                    let worlds: Vec<Json> = (0..m.worlds())
                        .map(|w| {
                            let above: Vec<usize> = (0..m.worlds()).filter(|&v| m.up[w] & (1 << v) != 0).collect();
                            let atoms: Vec<&String> = m.valuation.iter().filter(|(_, &s)| s & (1 << w) != 0).map(|(a, _)| a).collect();
                            json!({"world": w, "above": above, "forces": atoms})
                        })
                        .collect();
                    out.emit(
                        || format!("refuted\n{}", m.to_string().trim_end()),
                        || Sexp::List(vec![Sexp::Sym("refuted".into()), Sexp::Sym(m.worlds().to_string())]),
                        || json!({"status": "refuted", "worlds": worlds}),
                    );
                    Ok(1)
                }
                None => {
                    let msg = format!("no countermodel with at most {max_worlds} worlds");
                    out.emit(|| msg.clone(), || Sexp::Sym("none".into()), || json!({"status": "none", "max_worlds": max_worlds}));
                    Ok(0)
                }
            }
        }
    }
}

fn same_ctx(a: &Ctx, b: &Ctx) -> Res<()> {
    if a == b {
        Ok(())
    } else {
        Err(usage("shape", format!("premises use different contexts {a} and {b}")))
    }
}

fn term_of(j: &Judgment, what: &str) -> Res<Term> {
    match &j.expr {
        Expr::Term(t) => Ok(t.clone()),
        _ => Err(usage("shape", format!("{what} must be a term judgment"))),
    }
}

fn cut_command(s: &Sexp) -> Res<Judgment> {
    let (h, rest) = form(s, &["cut-pos", "cut-neg", "rsubst", "lsubst"])?;
    let shape = |m: &str| usage("shape", format!("({h} ...): {m}"));
    let fail = |e: cut::CutError| negative("cut", e);
    let mut fresh = Fresh::new();
    Ok(match h {
        "cut-pos" => {
            let [a, b] = arity::<2>(h, rest)?;
            let (j1, j2) = (Judgment::from_sexp(a)?, Judgment::from_sexp(b)?);
            checked(&j1, "the first premise")?;
            checked(&j2, "the second premise")?;
            let (Expr::Value(v), Succedent::RFoc(ty)) = (&j1.expr, &j1.seq.succ) else {
                return Err(shape("the first premise must be a value judgment"));
            };
            let n = term_of(&j2, "the second premise")?;
            let Ante::Omega(omega) = &j2.seq.ante else { return Err(shape("the second premise needs an inversion context")) };
            if omega.first() != Some(ty) {
                return Err(shape("the second premise's inversion context must start with the cut proposition"));
            }
            same_ctx(&j1.seq.ctx, &j2.seq.ctx)?;
            let t = cut::cut_pos(&j2.seq.ctx, &j2.seq.succ, v, ty, &n, &mut fresh).map_err(fail)?;
            Judgment { seq: Sequent::term(j2.seq.ctx.clone(), omega[1..].to_vec(), j2.seq.succ.clone()), expr: Expr::Term(t) }
        }
        "cut-neg" => {
            let [a, b] = arity::<2>(h, rest)?;
            let (j1, j2) = (Judgment::from_sexp(a)?, Judgment::from_sexp(b)?);
            checked(&j1, "the first premise")?;
            checked(&j2, "the second premise")?;
            let m = term_of(&j1, "the first premise")?;
            let Succedent::INeg(ty) = &j1.seq.succ else { return Err(shape("the first premise must prove a negative")) };
            let (Expr::Spine(sp), Ante::Focus(f)) = (&j2.expr, &j2.seq.ante) else {
                return Err(shape("the second premise must be a spine judgment"));
            };
            if f != ty {
                return Err(shape("the spine must focus on the cut proposition"));
            }
            same_ctx(&j1.seq.ctx, &j2.seq.ctx)?;
            let t = cut::cut_neg(&j2.seq.ctx, &j2.seq.succ, &m, ty, sp, &mut fresh).map_err(fail)?;
            Judgment { seq: Sequent::term(j2.seq.ctx.clone(), Vec::new(), j2.seq.succ.clone()), expr: Expr::Term(t) }
        }
        "rsubst" => {
            let [a, x, b] = arity::<3>(h, rest)?;
            let (j1, j2) = (Judgment::from_sexp(a)?, Judgment::from_sexp(b)?);
            let Sexp::Sym(x) = x else { return Err(shape("the second argument must be a variable")) };
            checked(&j1, "the first premise")?;
            checked(&j2, "the second premise")?;
            let m = term_of(&j1, "the first premise")?;
            let Succedent::INeg(ty) = &j1.seq.succ else { return Err(shape("the first premise must prove a negative")) };
            if j2.seq.ctx.lookup(x) != Some(&Hyp::Neg(ty.clone())) {
                return Err(shape("the second premise's context must bind the variable at the cut proposition"));
            }
            let rest_ctx: Ctx = j2.seq.ctx.iter().filter(|(y, _)| y != x).map(|(y, h)| (y.to_string(), h.clone())).collect();
            same_ctx(&j1.seq.ctx, &rest_ctx)?;
            let e = cut::rsubst(&rest_ctx, &j2.seq.succ, &m, x, ty, &j2.expr, &mut fresh).map_err(fail)?;
            Judgment { seq: Sequent { ctx: rest_ctx, ante: j2.seq.ante.clone(), succ: j2.seq.succ.clone() }, expr: e }
        }
        _ => {
            let [a, b] = arity::<2>(h, rest)?;
            let (j1, j2) = (Judgment::from_sexp(a)?, Judgment::from_sexp(b)?);
            checked(&j1, "the first premise")?;
            checked(&j2, "the second premise")?;
            let Succedent::SPos(ty) = &j1.seq.succ else { return Err(shape("the first premise must prove a stable positive")) };
            let n = term_of(&j2, "the second premise")?;
            if j2.seq.ante != Ante::Omega(vec![ty.clone()]) {
                return Err(shape("the second premise's inversion context must be exactly the cut proposition"));
            }
            same_ctx(&j1.seq.ctx, &j2.seq.ctx)?;
            let e = cut::lsubst(&j1.seq.ctx, &j2.seq.succ, &j1.expr, ty, &n, &mut fresh).map_err(fail)?;
            Judgment { seq: Sequent { ctx: j1.seq.ctx.clone(), ante: j1.seq.ante.clone(), succ: j2.seq.succ.clone() }, expr: e }
        }
    })
}

fn expand_command(s: &Sexp) -> Res<Judgment> {
    let (h, rest) = form(s, &["expand+", "expand-", "id+", "id-"])?;
    let shape = |m: &str| usage("shape", format!("({h} ...): {m}"));
    let mut fresh = Fresh::new();
    Ok(match h {
        "expand+" => {
            let [z, j] = arity::<2>(h, rest)?;
            let Sexp::Sym(z) = z else { return Err(shape("the first argument must be a variable")) };
            let j = Judgment::from_sexp(j)?;
            checked(&j, "the premise")?;
            let n = term_of(&j, "the premise")?;
            let Some(Hyp::Susp(a)) = j.seq.ctx.lookup(z).cloned() else {
                return Err(shape("the premise's context must bind the variable to a suspension"));
            };
            let Ante::Omega(omega) = &j.seq.ante else { unreachable!("term judgments have an inversion context") };
            let ctx: Ctx = j.seq.ctx.iter().filter(|(y, _)| y != z).map(|(y, h)| (y.to_string(), h.clone())).collect();
            let mut o = vec![a.clone()];
            o.extend(omega.iter().cloned());
            let t = expand_pos(&a, z, &n, &mut fresh);
            Judgment { seq: Sequent::term(ctx, o, j.seq.succ.clone()), expr: Expr::Term(t) }
        }
        "expand-" => {
            let [j] = arity::<1>(h, rest)?;
            let j = Judgment::from_sexp(j)?;
            checked(&j, "the premise")?;
            let n = term_of(&j, "the premise")?;
            let Succedent::SuspNeg(a) = &j.seq.succ else { return Err(shape("the premise must prove a suspension")) };
            if j.seq.ante != Ante::Omega(Vec::new()) {
                return Err(shape("the premise must have an empty inversion context"));
            }
            let t = expand_neg(a, &n, &mut fresh);
            Judgment { seq: Sequent::term(j.seq.ctx.clone(), Vec::new(), Succedent::INeg(a.clone())), expr: Expr::Term(t) }
        }
        "id+" => {
            let [a] = arity::<1>(h, rest)?;
            let a = focal_core::Pos::from_sexp(a)?;
            let t = id_pos(&a, &mut fresh);
            Judgment { seq: Sequent::term(Ctx::new(), vec![a.clone()], Succedent::SPos(a)), expr: Expr::Term(t) }
        }
        _ => {
            let [a] = arity::<1>(h, rest)?;
            let a = focal_core::Neg::from_sexp(a)?;
            let t = id_neg(&a, "x", &mut fresh);
            let ctx = Ctx::new().with("x", Hyp::Neg(a.clone()));
            Judgment { seq: Sequent::term(ctx, Vec::new(), Succedent::INeg(a)), expr: Expr::Term(t) }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Report {
        run(std::iter::once("focal").chain(args.iter().copied()))
    }

    #[test]
    fn erase_and_polarize() {
        let r = run_args(&["erase", "dn(p- & q-) -> dn(r- & s-) -> (p- & r-)"]);
        assert_eq!((r.code, r.stdout.as_str()), (0, "(p /\\ q) -> (r /\\ s) -> (p /\\ r)\n"));
        let r = run_args(&["polarize", "--strategy", "pos", "(p /\\ q) -> (r /\\ s) -> (p /\\ r)"]);
        assert_eq!(r.stdout, "(p+ * q+) -> (r+ * s+) -> up(p+ * r+)\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["prove", "p -> p"]).code, 0);
        assert_eq!(run_args(&["prove", "((p -> q) -> p) -> p"]).code, 1);
        let r = run_args(&["prove", "p ->"]);
        assert_eq!(r.code, 2);
        assert!(r.stderr.starts_with("focal: error[parse]:"), "{}", r.stderr);
        assert_eq!(run_args(&["frobnicate"]).code, 2);
        assert_eq!(run_args(&["refute", "--max-worlds", "6", "p"]).code, 2);
    }

    #[test]
    fn json_lines_report_statistics() {
        let r = run_args(&["prove", "--format", "json-lines", "p /\\ q -> q /\\ p"]);
        let v: Json = serde_json::from_str(r.stdout.trim()).unwrap();
        assert_eq!(v["status"], "proved");
        assert!(v["stats"]["stable_sequents"].as_u64().unwrap() >= 1);
    }
}
