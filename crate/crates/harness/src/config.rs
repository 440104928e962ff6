//! Solver configuration: the native parenthesized config format.
//!
//! ```text
//! (solver (name z3) (cmd "z3 -T:{timeout} {file}") (format smtlib2) (verdict smt))
//! ```

use reflect_frontend::{parse_sexps, Sexp, TargetFormat};

use crate::HarnessError;

/// How to read a solver's stdout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictGrammar {
    /// `sat` / `unsat` / `unknown` status lines.
    Smt,
    /// `SZS status <Status>` lines.
    Szs,
}

/// One configured solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub name: String,
    /// Command template with `{file}` (exactly once) and `{timeout}`.
    pub cmd_template: String,
    pub format: TargetFormat,
    pub verdict: VerdictGrammar,
}

impl SolverConfig {
    /// Split the template into argv, honoring single/double quotes, and
    /// substitute the placeholders.
    pub fn command_line(&self, file: &str, timeout_s: u64) -> Vec<String> {
        split_command(&self.cmd_template)
            .into_iter()
            .map(|tok| {
                tok.replace("{file}", file)
                    .replace("{timeout}", &timeout_s.to_string())
            })
            .collect()
    }
}

pub(crate) fn split_command(template: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quote: Option<char> = None;
    let mut pending = false;
    for c in template.chars() {
        match quote {
            Some(q) => {
                if c == q {
                    quote = None;
                } else {
                    cur.push(c);
                }
            }
            None => match c {
                '\'' | '"' => {
                    quote = Some(c);
                    pending = true;
                }
                c if c.is_whitespace() => {
                    if !cur.is_empty() || pending {
                        out.push(std::mem::take(&mut cur));
                        pending = false;
                    }
                }
                c => cur.push(c),
            },
        }
    }
    if !cur.is_empty() || pending {
        out.push(cur);
    }
    out
}

/// Parse a solver configuration file: a sequence of `(solver ..)` forms.
pub fn parse_solver_configs(text: &str) -> Result<Vec<SolverConfig>, HarnessError> {
    let forms = parse_sexps(text)?;
    let mut out = Vec::new();
    for form in &forms {
        let items = form
            .list()
            .filter(|items| items.first().and_then(Sexp::atom) == Some("solver"))
            .ok_or_else(|| HarnessError::Config("expected (solver ..) forms".into()))?;
        let mut name = None;
        let mut cmd = None;
        let mut format = None;
        let mut verdict = None;
        for field in &items[1..] {
            let entry = field
                .list()
                .ok_or_else(|| HarnessError::Config("expected (key value) fields".into()))?;
            let [key, value] = entry else {
                return Err(HarnessError::Config("expected (key value) fields".into()));
            };
            let key = key
                .atom()
                .ok_or_else(|| HarnessError::Config("field key must be a symbol".into()))?;
            let value = match value {
                Sexp::Atom(a, _) => a.clone(),
                Sexp::Str(s, _) => s.clone(),
                Sexp::List(..) => {
                    return Err(HarnessError::Config(format!("field `{key}` must be atomic")))
                }
            };
            match key {
                "name" => name = Some(value),
                "cmd" => cmd = Some(value),
                "format" => {
                    format = Some(value.parse::<TargetFormat>().map_err(HarnessError::Config)?)
                }
                "verdict" => {
                    verdict = Some(match value.as_str() {
                        "smt" => VerdictGrammar::Smt,
                        "szs" => VerdictGrammar::Szs,
                        other => {
                            return Err(HarnessError::Config(format!(
                                "unknown verdict grammar `{other}`"
                            )))
                        }
                    })
                }
                other => {
                    return Err(HarnessError::Config(format!("unknown field `{other}`")));
                }
            }
        }
        let cmd = cmd.ok_or_else(|| HarnessError::Config("missing cmd".into()))?;
        if cmd.matches("{file}").count() != 1 {
            return Err(HarnessError::Config(
                "cmd must contain {file} exactly once".into(),
            ));
        }
        out.push(SolverConfig {
            name: name.ok_or_else(|| HarnessError::Config("missing name".into()))?,
            cmd_template: cmd,
            format: format.ok_or_else(|| HarnessError::Config("missing format".into()))?,
            verdict: verdict.ok_or_else(|| HarnessError::Config("missing verdict".into()))?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_config() {
        let text = r#"
(solver (name z3) (cmd "z3 -T:{timeout} {file}") (format smtlib2) (verdict smt))
(solver (name vampire) (cmd "vampire --mode casc -t {timeout} {file}") (format tptp) (verdict szs))
"#;
        let configs = parse_solver_configs(text).unwrap();
        assert_eq!(configs.len(), 2);
        assert_eq!(configs[0].name, "z3");
        assert_eq!(configs[0].format, TargetFormat::Smtlib2);
        assert_eq!(configs[1].verdict, VerdictGrammar::Szs);
        assert_eq!(
            configs[0].command_line("a.smt2", 10),
            vec!["z3", "-T:10", "a.smt2"]
        );
    }

    #[test]
    fn file_placeholder_must_appear_exactly_once() {
        let text = r#"(solver (name x) (cmd "x") (format tptp) (verdict szs))"#;
        assert!(parse_solver_configs(text).is_err());
        let text = r#"(solver (name x) (cmd "x {file} {file}") (format tptp) (verdict szs))"#;
        assert!(parse_solver_configs(text).is_err());
    }

    #[test]
    fn quoted_arguments_stay_whole() {
        assert_eq!(
            split_command(r#"sh -c "echo unsat # {file}""#),
            vec!["sh", "-c", "echo unsat # {file}"]
        );
    }
}
