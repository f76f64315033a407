//! Propositions, concrete syntax, erasure and polarization.

mod polarize;
mod prop;
pub mod text;

pub use polarize::{polarize, polarize_pos, Polarity, Strategy};
pub use prop::{is_atom_name, Neg, Pos, UProp};
pub use text::{parse_neg, parse_pos, parse_pprop, parse_uprop, print_pprop, print_uprop, PProp, ParseError};

use crate::kernel::{Ctx, Hyp};
use crate::unfocused::Multiset;
use core::fmt;

/// The right-hand side of a focused sequent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Succedent {
    /// `[A+]`, right focus.
    RFoc(Pos),
    /// `A+`, stable.
    SPos(Pos),
    /// `A-`, right inversion.
    INeg(Neg),
    /// `<A->`, a suspended negative proposition.
    SuspNeg(Neg),
}

impl fmt::Display for Succedent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Succedent::RFoc(a) => write!(f, "[{a}]"),
            Succedent::SPos(a) => write!(f, "{a}"),
            Succedent::INeg(a) => write!(f, "{a}"),
            Succedent::SuspNeg(a) => write!(f, "<{a}>"),
        }
    }
}

/// A suspension in the context or succedent is not atomic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotSuspensionNormal(pub alloc::string::String);

impl fmt::Display for NotSuspensionNormal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "suspension <{}> is not atomic", self.0)
    }
}

pub fn erase_pos(a: &Pos) -> UProp {
    match a {
        Pos::Atom(p) => UProp::Atom(p.clone()),
        Pos::Down(a) => erase_neg(a),
        Pos::Zero => UProp::Bot,
        Pos::Or(a, b) => UProp::or(erase_pos(a), erase_pos(b)),
        Pos::One => UProp::Top,
        Pos::And(a, b) => UProp::and(erase_pos(a), erase_pos(b)),
    }
}

pub fn erase_neg(a: &Neg) -> UProp {
    match a {
        Neg::Atom(p) => UProp::Atom(p.clone()),
        Neg::Up(a) => erase_pos(a),
        Neg::Imp(a, b) => UProp::imp(erase_pos(a), erase_neg(b)),
        Neg::Top => UProp::Top,
        Neg::And(a, b) => UProp::and(erase_neg(a), erase_neg(b)),
    }
}

pub fn erase_hyp(h: &Hyp) -> Result<UProp, NotSuspensionNormal> {
    match h {
        Hyp::Neg(a) => Ok(erase_neg(a)),
        Hyp::Susp(a @ Pos::Atom(_)) => Ok(erase_pos(a)),
        Hyp::Susp(a) => Err(NotSuspensionNormal(alloc::format!("{a}"))),
    }
}

pub fn erase_ctx(ctx: &Ctx) -> Result<Multiset, NotSuspensionNormal> {
    let mut out = Multiset::new();
    for (_, h) in ctx.iter() {
        out.insert(erase_hyp(h)?);
    }
    Ok(out)
}

pub fn erase_succ(u: &Succedent) -> Result<UProp, NotSuspensionNormal> {
    match u {
        Succedent::RFoc(a) | Succedent::SPos(a) => Ok(erase_pos(a)),
        Succedent::INeg(a) => Ok(erase_neg(a)),
        Succedent::SuspNeg(a @ Neg::Atom(_)) => Ok(erase_neg(a)),
        Succedent::SuspNeg(a) => Err(NotSuspensionNormal(alloc::format!("{a}"))),
    }
}

pub fn is_stable(u: &Succedent) -> bool {
    matches!(u, Succedent::SPos(_) | Succedent::SuspNeg(_))
}

pub fn succ_is_suspension_normal(u: &Succedent) -> bool {
    !matches!(u, Succedent::SuspNeg(a) if !a.is_atom())
}

pub fn is_suspension_normal(ctx: &Ctx, u: &Succedent) -> bool {
    ctx.is_suspension_normal() && succ_is_suspension_normal(u)
}
