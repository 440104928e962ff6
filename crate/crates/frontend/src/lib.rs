//! Text formats and serializers: the native parenthesized theory and model
//! formats, monomorphization of parametric datatypes, deterministic SMT-LIB 2
//! and TPTP TFF emission, and the grammar checkers the test suites run
//! against emitted files.

pub mod emit;
pub mod lint;
pub mod mangle;
pub mod mono;
pub mod native;
mod sexp;

use thiserror::Error;

pub use emit::{emit_problem, emit_smtlib, emit_tptp, ProblemFile, TargetFormat};
pub use mangle::{build_mangle_table, MangleTable};
pub use mono::monomorphize;
pub use native::{parse_formula_str, parse_model, parse_theory, render_theory, ModelSpec};
pub use sexp::{parse_sexps, Sexp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontendError {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("theory is not well-formed:\n{}", render_diags(.0))]
    Theory(Vec<reflect_core::Diagnostic>),
    #[error("reserved prefix in `{0}`")]
    ReservedPrefix(String),
    #[error("unresolved datatype parameter `{0}`")]
    UnresolvedParameter(String),
    #[error("identifier mangling collides on `{0}`")]
    MangleCollision(String),
    #[error("unknown conjecture `{0}`")]
    UnknownConjecture(String),
    #[error("{0} cannot express native datatype declarations")]
    UnsupportedDatatypes(String),
}

fn render_diags(diags: &[reflect_core::Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| format!("  {d}"))
        .collect::<Vec<_>>()
        .join("\n")
}
