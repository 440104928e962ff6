//! Multi-sorted first-order logic, reflective conservative extensions, and
//! finite-model checking of the extension machinery.
//!
//! The crate is organised in three layers:
//!
//! - [`logic`]: abstract syntax, well-formedness, substitution and the
//!   normalisation into the connective core used by the reflective layer.
//! - [`reflection`]: the signature extension, its defining axioms, the
//!   syntax-tree encoding of formulas, and the reflective induction axioms.
//! - [`semantics`]: Tarski evaluation over finite models, plus depth-bounded
//!   realisations of the reflective interpretation used to sanity-check the
//!   whole construction exhaustively at small scale.

pub mod gen;
pub mod logic;
pub mod reflection;
pub mod semantics;

pub use logic::{
    check_theory, Diagnostic, Formula, FuncSym, InductiveDatatype, NamedFormula, PredSym,
    Signature, Sort, Term, Theory, Variable,
};
