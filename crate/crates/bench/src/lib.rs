//! Benchmark suite generation.
//!
//! Three families: reflective versions of the base axioms, reflective
//! versions of simple consequences, and induction problems in native and
//! reflective form. Reconstructed conjectures are gated behind a bounded
//! standard-model validation sweep before they can be emitted.

pub mod builtins;
pub mod standard;
pub mod suites;

use std::fmt;

use thiserror::Error;

use reflect_core::logic::{Formula, Theory};

pub use builtins::{builtin_names, builtin_theory, merge_theories, refl1_base};
pub use standard::StandardModel;
pub use suites::{emit_case, emit_suite, gen_ind, gen_refl0, gen_refl1, validate_case, SuiteFiles};

/// Which family a case belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Refl0,
    Refl1,
    IndNative,
    IndReflective,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Refl0 => f.write_str("refl0"),
            Family::Refl1 => f.write_str("refl1"),
            Family::IndNative => f.write_str("ind-native"),
            Family::IndReflective => f.write_str("ind-reflective"),
        }
    }
}

/// Whether the formula text is fixed by its published name or reconstructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    PaperNamed,
    Reconstructed,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::PaperNamed => f.write_str("paper-named"),
            Provenance::Reconstructed => f.write_str("reconstructed"),
        }
    }
}

/// One named problem: a theory whose single conjecture carries the case id,
/// plus the base-level formula behind it for validation.
#[derive(Debug, Clone)]
pub struct BenchmarkCase {
    pub id: String,
    pub stem: String,
    pub family: Family,
    pub theory: Theory,
    pub source_formula: Formula,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("case `{case}` needs vocabulary the base theory lacks: {symbol}")]
    MissingVocabulary { case: String, symbol: String },
    #[error("case `{case}` failed validation at {witness}")]
    ValidationFailed { case: String, witness: String },
    #[error("theories disagree on the declaration of `{0}`")]
    MergeConflict(String),
    #[error("unknown built-in theory `{0}`")]
    UnknownBuiltin(String),
    #[error("standard evaluator does not interpret `{0}`")]
    UnknownStandardSymbol(String),
    #[error("unbound variable {0} in standard evaluation")]
    UnboundVariable(String),
    #[error(transparent)]
    Frontend(#[from] reflect_frontend::FrontendError),
    #[error(transparent)]
    Reflection(#[from] reflect_core::reflection::ReflectionError),
}
