//! Polarized intuitionistic propositional logic: a checker for focused proof
//! terms, cut admissibility as hereditary substitution, identity as
//! η-expansion, translations to and from an unfocused sequent calculus, and a
//! terminating focused prover.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod admissible;
pub mod cut;
pub mod identity;
pub mod kernel;
pub mod prover;
pub mod syntax;
pub mod translate;
pub mod unfocused;

pub use kernel::{Ctx, Expr, Fresh, Hyp, Spine, Term, Value};
pub use syntax::{Neg, Pos, Strategy, Succedent, UProp};
pub use unfocused::{Multiset, UDeriv, USequent};
