//! Focused proof terms, contexts, substitution and type checking.

mod check;
mod context;
mod subst;
mod term;

pub use check::{check, check_spine, check_term, check_value, Ante, CheckError, CheckErrorKind, Sequent};
pub use context::{Ctx, Hyp};
pub use subst::{rename_term, subst_neg, subst_neg_spine, subst_pos, subst_pos_term, subst_pos_value};
pub(crate) use subst::freshen;
pub use term::{
    all_names, alpha_eq, alpha_eq_expr, free_vars, free_vars_spine, free_vars_term, free_vars_value, Expr, Fresh,
    Name, Spine, Term, Value,
};
