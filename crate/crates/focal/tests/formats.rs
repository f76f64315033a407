use focal::gen::Gen;
use focal::sexp::{FromSexp, Judgment, Sexp, ToSexp};
use focal::{cli, run_with_stack};
use focal_core::kernel::{check, Ctx, Expr, Sequent, Term};
use focal_core::syntax::{erase_neg, parse_uprop, polarize, Neg, Pos, Strategy, Succedent, UProp};
use focal_core::translate::{defocalize, erased_sequent};
use focal_core::unfocused::{UDeriv, USequent};
use proptest::prelude::*;

fn round_trip<T: ToSexp + FromSexp + PartialEq + std::fmt::Debug>(x: &T) -> Result<(), TestCaseError> {
    let text = x.to_sexp().to_string();
    prop_assert_eq!(Sexp::parse(&text).unwrap(), x.to_sexp());
    prop_assert_eq!(&T::parse_sexp(&text).unwrap(), x);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn propositions_round_trip(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        round_trip(&g.uprop(12))?;
        round_trip(&g.pos(12))?;
        round_trip(&g.neg(12))?;
        round_trip(&g.ctx(3, 6))?;
        round_trip(&g.goal(6))?;
    }

    #[test]
    fn proofs_round_trip(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let ctx = g.ctx(2, 5);
        let u = g.goal(6);
        if let Some(t) = g.term(&ctx, &[], &u) {
            round_trip(&t)?;
            let seq = Sequent::term(ctx, Vec::new(), u);
            let j = Judgment { seq: seq.clone(), expr: Expr::Term(t) };
            let back = Judgment::parse_sexp(&j.to_sexp().to_string()).unwrap();
            prop_assert!(check(&back.seq, &back.expr).is_ok());
            prop_assert_eq!(back, j.clone());
            let d = defocalize(&seq, &j.expr).unwrap();
            round_trip(&d)?;
            round_trip(&erased_sequent(&seq).unwrap())?;
        }
        let a = g.neg(5);
        let u = g.stable_goal(5);
        if let Some(s) = g.spine(&Ctx::new().with("h", focal_core::Hyp::Neg(a.clone())), &a, &u) {
            round_trip(&s)?;
        }
    }

    #[test]
    fn polarize_command_agrees_with_the_library(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let p = g.uprop(9);
        for (flag, s) in [("neg", Strategy::AllNeg), ("pos", Strategy::AllPos), ("fullshift", Strategy::FullShift)] {
            let r = cli::run(["focal", "--strategy", flag, "--format", "sexp", "polarize", &p.to_string()]);
            prop_assert_eq!(r.code, 0);
            let a = Neg::parse_sexp(&r.stdout).unwrap();
            prop_assert_eq!(&a, &polarize(&p, s));
            prop_assert_eq!(erase_neg(&a), p.clone());
        }
    }
}

#[test]
fn malformed_sexps_are_rejected() {
    for bad in ["", "(", ")", "(atom p) (atom q)", "(atom)", "(and (atom p))", "(frob)"] {
        assert!(UProp::parse_sexp(bad).is_err(), "{bad:?}");
    }
    assert!(Pos::parse_sexp("(atom- p)").is_err());
    assert!(USequent::parse_sexp("(seq (gamma) (psi))").is_err());
    assert!(UDeriv::parse_sexp("; a comment\n(topr)").is_ok());
}

const DEEP: usize = 10_000;

#[test]
fn deep_inputs() {
    run_with_stack(|| {
        let text = vec!["p"; DEEP / 2].join(" -> ");
        let p = parse_uprop(&text).unwrap();
        assert_eq!(p.size(), DEEP - 1);
        let back = UProp::parse_sexp(&p.to_sexp().to_string()).unwrap();
        assert_eq!(back, p);
        let r = cli::run(["focal", "prove", &text]);
        assert_eq!(r.code, 0, "{}", r.stderr);

        let mut ty = Neg::Top;
        let mut t = Term::UnitN;
        for _ in 0..DEEP / 2 {
            ty = Neg::imp(Pos::One, ty);
            t = Term::lam(Term::let_unit(t));
        }
        assert_eq!(t.size(), DEEP + 1);
        let seq = Sequent::term(Ctx::new(), Vec::new(), Succedent::INeg(ty));
        assert!(check(&seq, &Expr::Term(t.clone())).is_ok());
        let sx = Judgment { seq, expr: Expr::Term(t) }.to_sexp().to_string();
        let j = Judgment::parse_sexp(&sx).unwrap();
        assert!(check(&j.seq, &j.expr).is_ok());
        let d = defocalize(&j.seq, &j.expr).unwrap();
        assert!(d.size() > DEEP / 2);
    });
}
