//! Multi-sorted first-order abstract syntax and the basic operations on it.

mod check;
mod subst;
mod syntax;
mod transform;

pub use check::{check_theory, Diagnostic, DiagnosticKind};
pub use subst::SubstError;
pub use syntax::{
    Formula, FuncSym, InductiveDatatype, NamedFormula, PredSym, Signature, Sort, Term, Theory,
    Variable,
};
pub use transform::{alpha_eq, desugar, universal_closure};
