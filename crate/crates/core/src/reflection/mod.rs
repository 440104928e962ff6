//! The reflective conservative extension: signature, defining axioms,
//! syntax-tree encoding of formulas, and reflective structural induction.

mod axioms;
mod extension;
mod godel;
mod induction;
mod signature;

use thiserror::Error;

use crate::logic::Diagnostic;

pub use axioms::{reflective_axioms, variable_term_axioms};
pub use extension::{
    reflective_extension, reflective_inductive_extension, ReflectionConfig, ReflectiveTheory,
};
pub use godel::{godel_decode, godel_encode, truth_conjecture, Encoded};
pub use induction::{datatype_axioms, induction_axiom};
pub use signature::{reflective_signature, ReflectionMap, RESERVED_PREFIX};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflectionError {
    #[error("symbol `{0}` collides with the reserved `{p}` namespace", p = RESERVED_PREFIX)]
    ReservedPrefix(String),
    #[error("generated names collide on `{0}`")]
    NameCollision(String),
    #[error("theory is not well-formed: {0:?}")]
    InvalidTheory(Vec<Diagnostic>),
    #[error("formula is not in the core fragment (desugar it first)")]
    NotCore,
    #[error("unknown symbol `{0}` (not part of the base signature)")]
    UnknownSymbol(String),
    #[error("term is not an encoding: {0}")]
    NotAnEncoding(String),
    #[error("not a datatype: {0}")]
    NotADatatype(String),
    #[error("theory declares no datatypes")]
    NoDatatypes,
    #[error(transparent)]
    Subst(#[from] crate::logic::SubstError),
}
