//! Child-process execution with timeout enforcement and a bounded worker
//! pool.

use std::collections::VecDeque;
use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use reflect_frontend::TargetFormat;

use crate::config::{SolverConfig, VerdictGrammar};

/// Poll interval while waiting on a child.
const POLL: Duration = Duration::from_millis(10);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Proved,
    CounterSat,
    Unknown,
    Timeout,
    Error(String),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Proved => f.write_str("proved"),
            Outcome::CounterSat => f.write_str("countersat"),
            Outcome::Unknown => f.write_str("unknown"),
            Outcome::Timeout => f.write_str("timeout"),
            Outcome::Error(msg) => write!(f, "error: {msg}"),
        }
    }
}

/// One solver's adjudication of one case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverVerdict {
    pub case_id: String,
    pub solver: String,
    pub outcome: Outcome,
    pub wall_ms: u64,
}

/// A (case, solver) pair skipped because the formats disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatSkip {
    pub case_id: String,
    pub solver: String,
}

/// A problem file on disk, as discovered from a suite directory.
#[derive(Debug, Clone)]
pub struct SuiteFile {
    pub case_id: String,
    pub path: PathBuf,
    pub format: TargetFormat,
}

/// Launch one solver on one file, kill it at the timeout, and parse the
/// verdict from stdout. Failures map to `Outcome::Error`, never panics.
pub fn run_solver(cfg: &SolverConfig, file: &Path, timeout_s: u64) -> SolverVerdict {
    let verdict = |outcome, wall_ms| SolverVerdict {
        case_id: file
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        solver: cfg.name.clone(),
        outcome,
        wall_ms,
    };

    let argv = cfg.command_line(&file.to_string_lossy(), timeout_s);
    let Some((program, args)) = argv.split_first() else {
        return verdict(Outcome::Error("empty command".into()), 0);
    };
    let start = Instant::now();
    let child = Command::new(program)
        .args(args)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn();
    let mut child = match child {
        Ok(c) => c,
        Err(e) => return verdict(Outcome::Error(format!("spawn failed: {e}")), 0),
    };

    // Drain pipes on their own threads so a chatty solver cannot block on a
    // full pipe while we poll.
    let mut stdout_pipe = child.stdout.take().expect("stdout piped");
    let stdout_thread = std::thread::spawn(move || {
        let mut buf = String::new();
        let _ = stdout_pipe.read_to_string(&mut buf);
        buf
    });
    let mut stderr_pipe = child.stderr.take().expect("stderr piped");
    let stderr_thread = std::thread::spawn(move || {
        let mut buf = String::new();
        let _ = stderr_pipe.read_to_string(&mut buf);
        buf
    });

    let deadline = start + Duration::from_secs(timeout_s);
    let status = loop {
        match child.try_wait() {
            Ok(Some(status)) => break Some(status),
            Ok(None) => {
                if Instant::now() >= deadline {
                    let _ = child.kill();
                    let _ = child.wait();
                    break None;
                }
                std::thread::sleep(POLL);
            }
            Err(e) => {
                let _ = child.kill();
                let _ = child.wait();
                return verdict(
                    Outcome::Error(format!("wait failed: {e}")),
                    start.elapsed().as_millis() as u64,
                );
            }
        }
    };
    let wall_ms = start.elapsed().as_millis() as u64;
    let stdout = stdout_thread.join().unwrap_or_default();
    let stderr = stderr_thread.join().unwrap_or_default();

    let Some(status) = status else {
        return verdict(Outcome::Timeout, wall_ms);
    };
    match parse_verdict(cfg.verdict, &stdout) {
        Some(outcome) => verdict(outcome, wall_ms),
        None if status.success() => verdict(Outcome::Unknown, wall_ms),
        None => verdict(
            Outcome::Error(format!(
                "exit {status}: {}",
                stderr.lines().next().unwrap_or("no output")
            )),
            wall_ms,
        ),
    }
}

fn parse_verdict(grammar: VerdictGrammar, stdout: &str) -> Option<Outcome> {
    match grammar {
        VerdictGrammar::Smt => stdout.lines().find_map(|line| match line.trim() {
            "unsat" => Some(Outcome::Proved),
            "sat" => Some(Outcome::CounterSat),
            "unknown" => Some(Outcome::Unknown),
            _ => None,
        }),
        VerdictGrammar::Szs => stdout.lines().find_map(|line| {
            let rest = line.split("SZS status ").nth(1)?;
            let status = rest.split_whitespace().next()?;
            match status {
                "Theorem" | "Unsatisfiable" => Some(Outcome::Proved),
                "CounterSatisfiable" | "Satisfiable" => Some(Outcome::CounterSat),
                _ => Some(Outcome::Unknown),
            }
        }),
    }
}

/// Everything a suite run produces: verdicts for runnable pairs, recorded
/// skips for the rest. Both are sorted by (case, solver).
#[derive(Debug, Clone, Default)]
pub struct SuiteResult {
    pub verdicts: Vec<SolverVerdict>,
    pub skips: Vec<FormatSkip>,
}

/// Run every runnable (case, solver) pair on a bounded worker pool.
/// Pairs whose formats disagree are recorded as skips; per-pair failures
/// become `Outcome::Error` verdicts and never abort the suite.
pub fn run_suite(
    cases: &[SuiteFile],
    solvers: &[SolverConfig],
    timeout_s: u64,
    workers: usize,
) -> SuiteResult {
    let mut skips = Vec::new();
    let mut jobs: VecDeque<(SuiteFile, SolverConfig)> = VecDeque::new();
    for case in cases {
        for solver in solvers {
            if case.format == solver.format {
                jobs.push_back((case.clone(), solver.clone()));
            } else {
                skips.push(FormatSkip {
                    case_id: case.case_id.clone(),
                    solver: solver.name.clone(),
                });
            }
        }
    }

    let queue = Arc::new(Mutex::new(jobs));
    let results = Arc::new(Mutex::new(Vec::new()));
    let workers = workers.max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            let queue = Arc::clone(&queue);
            let results = Arc::clone(&results);
            scope.spawn(move || loop {
                let job = queue.lock().expect("queue lock").pop_front();
                let Some((case, solver)) = job else { break };
                let mut verdict = run_solver(&solver, &case.path, timeout_s);
                verdict.case_id = case.case_id.clone();
                results.lock().expect("results lock").push(verdict);
            });
        }
    });

    let mut verdicts = Arc::try_unwrap(results)
        .expect("workers joined")
        .into_inner()
        .expect("results lock");
    verdicts.sort_by(|a, b| (&a.case_id, &a.solver).cmp(&(&b.case_id, &b.solver)));
    skips.sort_by(|a, b| (&a.case_id, &a.solver).cmp(&(&b.case_id, &b.solver)));
    SuiteResult { verdicts, skips }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smt_verdicts() {
        assert_eq!(
            parse_verdict(VerdictGrammar::Smt, "unsat\n"),
            Some(Outcome::Proved)
        );
        assert_eq!(
            parse_verdict(VerdictGrammar::Smt, "sat\n"),
            Some(Outcome::CounterSat)
        );
        assert_eq!(parse_verdict(VerdictGrammar::Smt, "weird\n"), None);
    }

    #[test]
    fn szs_verdicts() {
        assert_eq!(
            parse_verdict(VerdictGrammar::Szs, "% SZS status Theorem for x\n"),
            Some(Outcome::Proved)
        );
        assert_eq!(
            parse_verdict(VerdictGrammar::Szs, "% SZS status CounterSatisfiable\n"),
            Some(Outcome::CounterSat)
        );
        assert_eq!(
            parse_verdict(VerdictGrammar::Szs, "% SZS status GaveUp\n"),
            Some(Outcome::Unknown)
        );
        assert_eq!(parse_verdict(VerdictGrammar::Szs, "hello\n"), None);
    }
}
