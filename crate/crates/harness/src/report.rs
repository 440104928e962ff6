//! CSV and markdown rendering of suite results.

use std::collections::BTreeSet;

use crate::run::{Outcome, SuiteResult};

/// Render `results.csv` and `results.md`.
///
/// The CSV has one row per verdict; the markdown table has one row per
/// case and one column per solver, with a check mark for proved, a dash
/// for any other verdict, and a blank cell for a format skip.
pub fn render_report(result: &SuiteResult) -> (String, String) {
    let mut csv = String::from("case,solver,outcome,ms\n");
    for v in &result.verdicts {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            csv_field(&v.case_id),
            csv_field(&v.solver),
            csv_field(&v.outcome.to_string()),
            v.wall_ms
        ));
    }

    let cases: BTreeSet<&str> = result
        .verdicts
        .iter()
        .map(|v| v.case_id.as_str())
        .chain(result.skips.iter().map(|s| s.case_id.as_str()))
        .collect();
    let solvers: BTreeSet<&str> = result
        .verdicts
        .iter()
        .map(|v| v.solver.as_str())
        .chain(result.skips.iter().map(|s| s.solver.as_str()))
        .collect();

    let mut md = String::new();
    md.push_str("| benchmark |");
    for s in &solvers {
        md.push_str(&format!(" {s} |"));
    }
    md.push('\n');
    md.push_str("|---|");
    for _ in &solvers {
        md.push_str("---|");
    }
    md.push('\n');
    for case in &cases {
        md.push_str(&format!("| {case} |"));
        for solver in &solvers {
            let cell = match result
                .verdicts
                .iter()
                .find(|v| v.case_id == *case && v.solver == *solver)
            {
                Some(v) if v.outcome == Outcome::Proved => "\u{2713}",
                Some(_) => "\u{2013}",
                None => " ",
            };
            md.push_str(&format!(" {cell} |"));
        }
        md.push('\n');
    }
    (csv, md)
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::run::{FormatSkip, SolverVerdict};

    #[test]
    fn single_proved_verdict_renders_a_check() {
        let result = SuiteResult {
            verdicts: vec![SolverVerdict {
                case_id: "c1".into(),
                solver: "z3".into(),
                outcome: Outcome::Proved,
                wall_ms: 12,
            }],
            skips: vec![],
        };
        let (csv, md) = render_report(&result);
        assert!(csv.contains("c1,z3,proved,12"));
        assert!(md.contains("| c1 | \u{2713} |"));
    }

    #[test]
    fn empty_results_render_headers_only() {
        let (csv, md) = render_report(&SuiteResult::default());
        assert_eq!(csv, "case,solver,outcome,ms\n");
        assert_eq!(md, "| benchmark |\n|---|\n");
    }

    #[test]
    fn skips_render_blank_cells() {
        let result = SuiteResult {
            verdicts: vec![SolverVerdict {
                case_id: "c1".into(),
                solver: "z3".into(),
                outcome: Outcome::Timeout,
                wall_ms: 1000,
            }],
            skips: vec![FormatSkip {
                case_id: "c1".into(),
                solver: "vampire".into(),
            }],
        };
        // Solver columns are sorted: vampire (skipped, blank) before z3.
        let (_, md) = render_report(&result);
        assert!(md.contains("| c1 |   | \u{2013} |"), "{md}");
    }
}
