//! Exhaustive enumeration and seeded random generation of propositions,
//! sequents and well-typed instances.

use focal_core::admissible::{recipe, Args, Premise, RuleId};
use focal_core::kernel::{Ctx, Fresh, Hyp, Spine, Term, Value};
use focal_core::prover::{Chooser, Outcome, Prover};
use focal_core::syntax::{Neg, Pos, Succedent, UProp};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ATOMS: [&str; 2] = ["p", "q"];

/// Every unpolarized proposition of size at most `max` over `atoms`.
pub fn all_uprops(max: usize, atoms: &[&str]) -> Vec<UProp> {
    let mut by_size: Vec<Vec<UProp>> = vec![Vec::new(); max + 1];
    for n in 1..=max {
        let mut here = Vec::new();
        if n == 1 {
            here.extend(atoms.iter().map(|a| UProp::atom(a)));
            here.push(UProp::Bot);
            here.push(UProp::Top);
        }
        for l in 1..n.saturating_sub(1) {
            let r = n - 1 - l;
            for a in &by_size[l] {
                for b in &by_size[r] {
                    here.push(UProp::or(a.clone(), b.clone()));
                    here.push(UProp::and(a.clone(), b.clone()));
                    here.push(UProp::imp(a.clone(), b.clone()));
                }
            }
        }
        by_size[n] = here;
    }
    by_size.into_iter().flatten().collect()
}

/// Every positive and every negative proposition of size at most `max`,
/// with each atom available in both polarities.
pub fn all_polarized(max: usize, atoms: &[&str]) -> (Vec<Pos>, Vec<Neg>) {
    let mut pos: Vec<Vec<Pos>> = vec![Vec::new(); max + 1];
    let mut neg: Vec<Vec<Neg>> = vec![Vec::new(); max + 1];
    for n in 1..=max {
        let (mut ps, mut ns) = (Vec::new(), Vec::new());
        if n == 1 {
            ps.extend(atoms.iter().map(|a| Pos::atom(a)));
            ps.push(Pos::Zero);
            ps.push(Pos::One);
            ns.extend(atoms.iter().map(|a| Neg::atom(a)));
            ns.push(Neg::Top);
        } else {
            ps.extend(neg[n - 1].iter().map(|a| Pos::down(a.clone())));
            ns.extend(pos[n - 1].iter().map(|a| Neg::up(a.clone())));
            for l in 1..n - 1 {
                let r = n - 1 - l;
                for a in &pos[l] {
                    for b in &pos[r] {
                        ps.push(Pos::or(a.clone(), b.clone()));
                        ps.push(Pos::and(a.clone(), b.clone()));
                    }
                    for b in &neg[r] {
                        ns.push(Neg::imp(a.clone(), b.clone()));
                    }
                }
                for a in &neg[l] {
                    for b in &neg[r] {
                        ns.push(Neg::and(a.clone(), b.clone()));
                    }
                }
            }
        }
        pos[n] = ps;
        neg[n] = ns;
    }
    (pos.into_iter().flatten().collect(), neg.into_iter().flatten().collect())
}

/// Shuffles every choice point.
pub struct RngChooser<'a>(pub &'a mut ChaCha8Rng);

impl Chooser for RngChooser<'_> {
    fn order(&mut self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(self.0);
        v
    }
}

/// Stable sequents visited per random proof attempt.
pub const PROOF_BUDGET: usize = 400;

pub struct Gen {
    pub rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn atom(&mut self) -> &'static str {
        ATOMS[self.rng.gen_range(0..ATOMS.len())]
    }

    /// A proposition of size at most `max`.
    pub fn uprop(&mut self, max: usize) -> UProp {
        if max < 3 || self.rng.gen_bool(0.3) {
            return match self.rng.gen_range(0..6) {
                0 => UProp::Bot,
                1 => UProp::Top,
                _ => UProp::atom(self.atom()),
            };
        }
        let l = self.rng.gen_range(1..max - 1);
        let (a, b) = (self.uprop(l), self.uprop(max - 1 - l));
        match self.rng.gen_range(0..3) {
            0 => UProp::or(a, b),
            1 => UProp::and(a, b),
            _ => UProp::imp(a, b),
        }
    }

    pub fn pos(&mut self, max: usize) -> Pos {
        if max < 2 || self.rng.gen_bool(0.3) {
            return match self.rng.gen_range(0..6) {
                0 => Pos::Zero,
                1 => Pos::One,
                _ => Pos::atom(self.atom()),
            };
        }
        if max < 3 || self.rng.gen_bool(0.3) {
            return Pos::down(self.neg(max - 1));
        }
        let l = self.rng.gen_range(1..max - 1);
        let (a, b) = (self.pos(l), self.pos(max - 1 - l));
        if self.rng.gen_bool(0.5) {
            Pos::or(a, b)
        } else {
            Pos::and(a, b)
        }
    }

    pub fn neg(&mut self, max: usize) -> Neg {
        if max < 2 || self.rng.gen_bool(0.3) {
            return if self.rng.gen_bool(0.2) { Neg::Top } else { Neg::atom(self.atom()) };
        }
        if max < 3 || self.rng.gen_bool(0.3) {
            return Neg::up(self.pos(max - 1));
        }
        let l = self.rng.gen_range(1..max - 1);
        if self.rng.gen_bool(0.6) {
            Neg::imp(self.pos(l), self.neg(max - 1 - l))
        } else {
            Neg::and(self.neg(l), self.neg(max - 1 - l))
        }
    }

    /// A stable, suspension-normal succedent.
    pub fn stable_goal(&mut self, max: usize) -> Succedent {
        if self.rng.gen_bool(0.25) {
            Succedent::SuspNeg(Neg::atom(self.atom()))
        } else {
            Succedent::SPos(self.pos(max))
        }
    }

    /// A suspension-normal context of up to `n` hypotheses.
    pub fn ctx(&mut self, n: usize, max: usize) -> Ctx {
        let mut ctx = Ctx::new();
        for i in 0..self.rng.gen_range(0..=n) {
            if self.rng.gen_bool(0.3) {
                ctx.push(format!("c{i}"), Hyp::Susp(Pos::atom(self.atom())));
            } else {
                ctx.push(format!("h{i}"), Hyp::Neg(self.neg(max)));
            }
        }
        ctx
    }

    /// A stable succedent or a right inversion one.
    pub fn goal(&mut self, max: usize) -> Succedent {
        if self.rng.gen_bool(0.5) {
            Succedent::INeg(self.neg(max))
        } else {
            self.stable_goal(max)
        }
    }

    /// An inversion context of up to two propositions.
    pub fn omega(&mut self, max: usize) -> Vec<Pos> {
        (0..self.rng.gen_range(0..=2)).map(|_| self.pos(max)).collect()
    }

    fn prover<'a>(chooser: &'a mut RngChooser<'_>) -> Prover<'a> {
        Prover::new().with_budget(PROOF_BUDGET).with_chooser(chooser)
    }

    /// A randomly chosen proof, when one is found within the budget.
    pub fn term(&mut self, ctx: &Ctx, omega: &[Pos], u: &Succedent) -> Option<Term> {
        let mut ch = RngChooser(&mut self.rng);
        Self::prover(&mut ch).prove_term(ctx, omega, u).ok().and_then(Outcome::proved)
    }

    pub fn value(&mut self, ctx: &Ctx, a: &Pos) -> Option<Value> {
        let mut ch = RngChooser(&mut self.rng);
        Self::prover(&mut ch).prove_value(ctx, a).ok().and_then(Outcome::proved)
    }

    pub fn spine(&mut self, ctx: &Ctx, a: &Neg, u: &Succedent) -> Option<Spine> {
        let mut ch = RngChooser(&mut self.rng);
        Self::prover(&mut ch).prove_spine(ctx, a, u).ok().and_then(Outcome::proved)
    }

    /// A random conclusion for `rule`: context, goal and principal.
    pub fn rule_conclusion(&mut self, rule: RuleId, max: usize) -> (Ctx, Succedent, Option<String>) {
        let mut ctx = self.ctx(2, max);
        let p = self.atom();
        let principal = |ctx: &mut Ctx, h: Hyp| {
            ctx.push("x".into(), h);
            Some("x".to_string())
        };
        let sub = max.saturating_sub(1).max(1);
        let (goal, x) = match rule {
            RuleId::InitSuspNeg => (Succedent::SuspNeg(Neg::atom(p)), principal(&mut ctx, Hyp::Neg(Neg::atom(p)))),
            RuleId::InitNeg => {
                (Succedent::SPos(Pos::down(Neg::atom(p))), principal(&mut ctx, Hyp::Neg(Neg::atom(p))))
            }
            RuleId::InitSuspPos => (Succedent::SPos(Pos::atom(p)), principal(&mut ctx, Hyp::Susp(Pos::atom(p)))),
            RuleId::InitPos => (Succedent::SPos(Pos::atom(p)), principal(&mut ctx, Hyp::Neg(Neg::up(Pos::atom(p))))),
            RuleId::BotUL => {
                let g = self.stable_goal(max);
                (g, principal(&mut ctx, Hyp::Neg(Neg::up(Pos::Zero))))
            }
            RuleId::OrUR1 | RuleId::OrUR2 => (Succedent::SPos(Pos::or(self.pos(sub), self.pos(sub))), None),
            RuleId::OrUL => {
                let h = Neg::up(Pos::or(self.pos(sub), self.pos(sub)));
                let g = self.stable_goal(max);
                (g, principal(&mut ctx, Hyp::Neg(h)))
            }
            RuleId::TopPosUR => (Succedent::SPos(Pos::One), None),
            RuleId::TopPosUL => {
                let g = self.stable_goal(max);
                (g, principal(&mut ctx, Hyp::Neg(Neg::up(Pos::One))))
            }
            RuleId::AndPosUR => (Succedent::SPos(Pos::and(self.pos(sub), self.pos(sub))), None),
            RuleId::AndPosUL => {
                let h = Neg::up(Pos::and(self.pos(sub), self.pos(sub)));
                let g = self.stable_goal(max);
                (g, principal(&mut ctx, Hyp::Neg(h)))
            }
            RuleId::ImpUR => (Succedent::SPos(Pos::down(Neg::imp(self.pos(sub), self.neg(sub)))), None),
            RuleId::ImpUL => {
                let h = Neg::imp(self.pos(sub), self.neg(sub));
                let g = self.stable_goal(max);
                (g, principal(&mut ctx, Hyp::Neg(h)))
            }
            RuleId::TopNegUR => (Succedent::SPos(Pos::down(Neg::Top)), None),
            RuleId::AndNegUR => (Succedent::SPos(Pos::down(Neg::and(self.neg(sub), self.neg(sub)))), None),
            RuleId::AndNegUL1 | RuleId::AndNegUL2 => {
                let h = Neg::and(self.neg(sub), self.neg(sub));
                let g = self.stable_goal(max);
                (g, principal(&mut ctx, Hyp::Neg(h)))
            }
            RuleId::DownUpUR => (Succedent::SPos(Pos::down(Neg::up(self.pos(sub)))), None),
            RuleId::UpDownUL => {
                let h = Neg::up(Pos::down(self.neg(sub)));
                let g = self.stable_goal(max);
                (g, principal(&mut ctx, Hyp::Neg(h)))
            }
        };
        (ctx, goal, x)
    }

    /// Premises for `rule` found by random search, one attempt.
    pub fn rule_instance(&mut self, rule: RuleId, max: usize) -> Option<(Ctx, Succedent, Args)> {
        let (ctx, goal, x) = self.rule_conclusion(rule, max);
        let mut args = match &x {
            Some(x) => Args::on(x),
            None => Args::none(),
        };
        for (i, &k) in rule.arity().iter().enumerate() {
            let names: Vec<String> = (0..k).map(|j| format!("b{i}_{j}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            args = args.premise(Premise::bind(&refs, Term::UnitN));
        }
        let (_, seqs) = recipe(rule, &ctx, &goal, &args, &mut Fresh::new()).ok()?;
        for (p, (c, u)) in args.premises.iter_mut().zip(seqs) {
            p.term = self.term(&c, &[], &u)?;
        }
        Some((ctx, goal, args))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_sizes() {
        let all = all_uprops(5, &ATOMS);
        assert_eq!(all.iter().filter(|p| p.size() == 1).count(), 4);
        assert_eq!(all.iter().filter(|p| p.size() == 3).count(), 48);
        assert_eq!(all.iter().filter(|p| p.size() == 5).count(), 1152);
        assert!(all.iter().all(|p| p.size() <= 5));
        let (pos, neg) = all_polarized(3, &ATOMS);
        assert_eq!(pos.iter().filter(|a| a.size() == 2).count(), 3);
        assert_eq!(neg.iter().filter(|a| a.size() == 2).count(), 4);
        assert!(pos.iter().all(|a| a.size() <= 3) && neg.iter().all(|a| a.size() <= 3));
    }

    #[test]
    fn random_props_respect_bounds() {
        let mut g = Gen::new(7);
        for _ in 0..200 {
            assert!(g.uprop(7).size() <= 7);
            assert!(g.pos(6).size() <= 6);
            assert!(g.neg(6).size() <= 6);
        }
    }

    #[test]
    fn generation_is_seeded() {
        let a: Vec<UProp> = (0..5).map({
            let mut g = Gen::new(3);
            move |_| g.uprop(7)
        }).collect();
        let mut g = Gen::new(3);
        let b: Vec<UProp> = (0..5).map(|_| g.uprop(7)).collect();
        assert_eq!(a, b);
    }
}
