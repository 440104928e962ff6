//! Drives external solvers over generated problem files with timeouts,
//! parses their verdicts, and renders tabular reports.

mod config;
mod report;
mod run;

use thiserror::Error;

pub use config::{parse_solver_configs, SolverConfig, VerdictGrammar};
pub use report::render_report;
pub use run::{run_solver, run_suite, FormatSkip, Outcome, SolverVerdict, SuiteFile, SuiteResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("solver config: {0}")]
    Config(String),
    #[error(transparent)]
    Frontend(#[from] reflect_frontend::FrontendError),
}
