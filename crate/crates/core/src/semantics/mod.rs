//! Finite-model evaluation and depth-bounded realisations of the
//! reflective interpretation.

mod bounded;
mod checks;
mod model;
pub mod models;

use thiserror::Error;

pub use bounded::{bounded_reflective_model, BoundedReflectiveModel, EnvChain};
pub use checks::{
    check_induction_instances, check_reflective_axioms, check_substitution_lemma,
    check_truth_predicate, CheckReport, Violation,
};
pub use model::{eval_term, holds, Assignment, FiniteModel, FuncTable, PredTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("no assignment for variable {0}")]
    MissingAssignment(String),
    #[error("carrier for sort `{0}` is missing or empty")]
    MissingCarrier(String),
    #[error("interpretation table for `{0}` is missing or not total")]
    BadTable(String),
    #[error("element {element} out of range for sort `{sort}`")]
    ElementOutOfRange { sort: String, element: usize },
    #[error("axiom `{0}` does not hold in the model")]
    AxiomViolated(String),
    #[error("bounded universe for `{0}` exceeds the cap of {1} elements")]
    UniverseOverflow(String, usize),
    #[error("depth must be at least 1")]
    BadDepth,
    #[error("encoding of `{0}` does not fit the bounded universes")]
    EncodingTooDeep(String),
    #[error("term `{0}` must be ground")]
    NotGround(String),
    #[error("model builder does not know the symbol `{0}`")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Reflection(#[from] crate::reflection::ReflectionError),
    #[error(transparent)]
    Subst(#[from] crate::logic::SubstError),
}
