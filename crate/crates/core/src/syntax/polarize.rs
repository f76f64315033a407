use super::prop::{Neg, Pos, UProp};
use core::fmt;
use core::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A polarization strategy: a right inverse of erasure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    /// Negative atoms and connectives wherever possible.
    AllNeg,
    /// Positive atoms and connectives wherever possible.
    AllPos,
    /// Positive atoms, negative connectives, and a double shift at every
    /// boundary so that focused proofs track unfocused ones.
    FullShift,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::AllNeg, Strategy::AllPos, Strategy::FullShift];

    pub fn atom_polarity(self, _name: &str) -> Polarity {
        match self {
            Strategy::AllNeg => Polarity::Negative,
            Strategy::AllPos | Strategy::FullShift => Polarity::Positive,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::AllNeg => "neg",
            Strategy::AllPos => "pos",
            Strategy::FullShift => "fullshift",
        })
    }
}

impl FromStr for Strategy {
    type Err = &'static str;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "neg" => Ok(Strategy::AllNeg),
            "pos" => Ok(Strategy::AllPos),
            "fullshift" => Ok(Strategy::FullShift),
            _ => Err("expected one of neg, pos, fullshift"),
        }
    }
}

/// Polarize `p` as a negative proposition.
pub fn polarize(p: &UProp, s: Strategy) -> Neg {
    match s {
        Strategy::AllNeg => neg_all_neg(p),
        Strategy::AllPos => neg_all_pos(p),
        Strategy::FullShift => neg_full(p),
    }
}

/// Polarize `p` as a positive proposition: one leading shift over [`polarize`].
pub fn polarize_pos(p: &UProp, s: Strategy) -> Pos {
    Pos::down(polarize(p, s))
}

fn neg_all_neg(p: &UProp) -> Neg {
    match p {
        UProp::Atom(a) => Neg::atom(a),
        UProp::Top => Neg::Top,
        UProp::And(a, b) => Neg::and(neg_all_neg(a), neg_all_neg(b)),
        UProp::Imp(a, b) => Neg::imp(pos_all_neg(a), neg_all_neg(b)),
        UProp::Bot | UProp::Or(..) => Neg::up(pos_all_neg(p)),
    }
}

fn pos_all_neg(p: &UProp) -> Pos {
    match p {
        UProp::Bot => Pos::Zero,
        UProp::Or(a, b) => Pos::or(pos_all_neg(a), pos_all_neg(b)),
        _ => Pos::down(neg_all_neg(p)),
    }
}

fn neg_all_pos(p: &UProp) -> Neg {
    match p {
        UProp::Imp(a, b) => Neg::imp(pos_all_pos(a), neg_all_pos(b)),
        _ => Neg::up(pos_all_pos(p)),
    }
}

fn pos_all_pos(p: &UProp) -> Pos {
    match p {
        UProp::Atom(a) => Pos::atom(a),
        UProp::Bot => Pos::Zero,
        UProp::Top => Pos::One,
        UProp::Or(a, b) => Pos::or(pos_all_pos(a), pos_all_pos(b)),
        UProp::And(a, b) => Pos::and(pos_all_pos(a), pos_all_pos(b)),
        UProp::Imp(..) => Pos::down(neg_all_pos(p)),
    }
}

fn neg_full(p: &UProp) -> Neg {
    match p {
        UProp::Atom(a) => Neg::up(Pos::atom(a)),
        UProp::Top => Neg::Top,
        UProp::And(a, b) => Neg::and(neg_full(a), neg_full(b)),
        UProp::Imp(a, b) => Neg::imp(Pos::down(neg_full(a)), Neg::up(Pos::down(neg_full(b)))),
        UProp::Bot => Neg::up(Pos::Zero),
        UProp::Or(a, b) => Neg::up(Pos::or(Pos::down(neg_full(a)), Pos::down(neg_full(b)))),
    }
}
