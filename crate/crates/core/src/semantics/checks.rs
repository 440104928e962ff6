//! Exhaustive bounded checks: every defining axiom instance over the
//! bounded universes, the truth-predicate agreement, the substitution
//! lemma, and reflective induction instances.

use std::collections::BTreeMap;
use std::fmt;

use crate::logic::{Formula, InductiveDatatype, Term, Variable};
use crate::reflection::{godel_encode, induction_axiom};

use super::bounded::BoundedReflectiveModel;
use super::model::{eval_term, holds, Assignment};
use super::SemanticsError;

/// A single failed instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub claim: String,
    pub witness: String,
}

/// Outcome of a bounded sweep: instances evaluated and the failures found.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, ok: bool, claim: &str, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation {
                claim: claim.to_string(),
                witness: witness(),
            });
        }
    }

    fn finish(mut self) -> Self {
        self.violations
            .sort_by(|a, b| (&a.claim, &a.witness).cmp(&(&b.claim, &b.witness)));
        self
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.violations
            .sort_by(|a, b| (&a.claim, &a.witness).cmp(&(&b.claim, &b.witness)));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("claim,witness\n");
        for v in &self.violations {
            out.push_str(&format!(
                "{},{}\n",
                csv_field(&v.claim),
                csv_field(&v.witness)
            ));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "checked {} instances, {} violation(s)",
            self.checked,
            self.violations.len()
        )?;
        for v in &self.violations {
            writeln!(f, "  {}: {}", v.claim, v.witness)?;
        }
        Ok(())
    }
}

/// Evaluate every defining-axiom instance whose quantified reflective-sort
/// positions range over the bounded universes; base-sort variables range
/// over the full carrier. With an uncorrupted model the report is clean.
pub fn check_reflective_axioms(
    rm: &BoundedReflectiveModel,
) -> Result<CheckReport, SemanticsError> {
    let mut report = CheckReport::default();
    let sorts = rm.base().theory.signature.sorts.clone();
    let forms = rm.form_universe()?.to_vec();

    for e in rm.env_universe() {
        // sat(e, false^) <-> false
        report.record(
            !rm.sat_verdict(e, &Formula::Bottom),
            "ax_false",
            || format!("e={e}"),
        );

        for phi in &forms {
            match phi {
                Formula::Not(inner) => report.record(
                    rm.sat_verdict(e, phi) == !rm.sat_verdict(e, inner),
                    "ax_not",
                    || format!("e={e}, phi={inner}"),
                ),
                Formula::Or(l, r) => report.record(
                    rm.sat_verdict(e, phi) == (rm.sat_verdict(e, l) || rm.sat_verdict(e, r)),
                    "ax_or",
                    || format!("e={e}, phi={l}, psi={r}"),
                ),
                Formula::Forall(v, body) => {
                    let n = rm.base().carrier(&v.sort.name);
                    let rhs = (0..n).all(|x| rm.sat_verdict(&e.push(v.clone(), x), body));
                    report.record(
                        rm.sat_verdict(e, phi) == rhs,
                        &format!("ax_all_{}", v.sort.name),
                        || format!("e={e}, v={v}, phi={body}"),
                    );
                }
                Formula::Equals(l, r) => report.record(
                    rm.sat_verdict(e, phi)
                        == (rm.eval_term_in(e, l) == rm.eval_term_in(e, r)),
                    &format!("ax_eq_{}", l.sort().name),
                    || format!("e={e}, x={l}, y={r}"),
                ),
                Formula::Atom(p, args) => {
                    let vals: Vec<usize> =
                        args.iter().map(|t| rm.eval_term_in(e, t)).collect();
                    report.record(
                        rm.sat_verdict(e, phi) == rm.base().pred_table(&p.name).get(&vals),
                        &format!("ax_pred_{}", p.name),
                        || format!("e={e}, atom={phi}"),
                    );
                }
                Formula::Bottom => {}
                _ => unreachable!("form universe is core"),
            }
        }

        // Evaluation axioms over the term universes.
        for sort in &sorts {
            for t in rm.term_universe(sort)? {
                match t {
                    Term::Var(v) => report.record(
                        rm.eval_term_in(e, t) == rm.evalv_rw(e, v),
                        &format!("ax_eval_var_{}", sort.name),
                        || format!("e={e}, v={v}"),
                    ),
                    Term::App(f, args) => {
                        let vals: Vec<usize> =
                            args.iter().map(|arg| rm.eval_term_in(e, arg)).collect();
                        report.record(
                            rm.eval_term_in(e, t) == rm.base().func_table(&f.name).get(&vals),
                            &format!("ax_eval_f_{}", f.name),
                            || format!("e={e}, t={t}"),
                        );
                    }
                }
            }
        }

        // Variable-lookup axioms.
        for sort in &sorts {
            let carrier = rm.base().carrier(&sort.name);
            for v in rm.var_universe(sort) {
                for x in 0..carrier {
                    let pushed = e.push(v.clone(), x);
                    report.record(
                        rm.evalv_rw(&pushed, v) == x,
                        &format!("ax_eval_v0_{}", sort.name),
                        || format!("e={e}, v={v}, x={x}"),
                    );
                    for v2 in rm.var_universe(sort) {
                        if v2 == v {
                            continue;
                        }
                        let pushed = e.push(v2.clone(), x);
                        report.record(
                            rm.evalv_rw(&pushed, v) == rm.evalv_rw(e, v),
                            &format!("ax_eval_v1_{}", sort.name),
                            || format!("e={e}, v={v}, v'={v2}, x={x}"),
                        );
                    }
                }
                for other in &sorts {
                    if other == sort {
                        continue;
                    }
                    for w in rm.var_universe(other) {
                        for x in 0..rm.base().carrier(&other.name) {
                            let pushed = e.push(w.clone(), x);
                            report.record(
                                rm.evalv_rw(&pushed, v) == rm.evalv_rw(e, v),
                                &format!("ax_eval_v2_{}_{}", sort.name, other.name),
                                || format!("e={e}, v={v}, w={w}, x={x}"),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(report.finish())
}

/// For each closed core formula, base-model truth must coincide with the
/// satisfaction verdict on its encoding at the empty environment.
pub fn check_truth_predicate(
    rm: &BoundedReflectiveModel,
    phis: &[Formula],
) -> Result<CheckReport, SemanticsError> {
    let mut report = CheckReport::default();
    for phi in phis {
        if !rm.fits(phi) {
            return Err(SemanticsError::EncodingTooDeep(phi.to_string()));
        }
        let direct = holds(rm.base(), &Assignment::new(), phi)?;
        let encoded = godel_encode(phi, rm.map())?;
        let reflected = rm.truth_verdict(&encoded)?;
        report.record(direct == reflected, "truth_predicate", || {
            format!("phi={phi}, direct={direct}, reflected={reflected}")
        });
    }
    Ok(report.finish())
}

/// Bounded substitution lemma: pushing the value of a ground term onto any
/// environment and evaluating the open formula agrees with evaluating the
/// substituted formula.
pub fn check_substitution_lemma(
    rm: &BoundedReflectiveModel,
    triples: &[(Formula, Variable, Term)],
) -> Result<CheckReport, SemanticsError> {
    let mut report = CheckReport::default();
    for (phi, x, t) in triples {
        if !t.free_vars().is_empty() {
            return Err(SemanticsError::NotGround(t.to_string()));
        }
        let substituted = phi.substitute(x, t).map_err(|_| {
            SemanticsError::EncodingTooDeep(format!("substitution of {t} for {x} in {phi}"))
        })?;
        for f in [phi, &substituted] {
            if !rm.fits(f) {
                return Err(SemanticsError::EncodingTooDeep(f.to_string()));
            }
        }
        let value = eval_term(rm.base(), &Assignment::new(), t)?;
        let claim = format!("subst[{phi}, {x} := {t}]");
        for e in rm.env_universe() {
            let lhs = rm.sat_verdict(&e.push(x.clone(), value), phi);
            let rhs = rm.sat_verdict(e, &substituted);
            report.record(lhs == rhs, &claim, || format!("e={e}, lhs={lhs}, rhs={rhs}"));
        }
    }
    Ok(report.finish())
}

/// Evaluate the reflective induction axiom of `dt` instantiated at the
/// encoding of each formula; in a base model where the first-order scheme
/// holds every instance must come out true.
pub fn check_induction_instances(
    rm: &BoundedReflectiveModel,
    dt: &InductiveDatatype,
    phis: &[Formula],
) -> Result<CheckReport, SemanticsError> {
    let mut report = CheckReport::default();
    let axiom = induction_axiom(dt, rm.map())?;
    let Formula::Forall(phi_var, body) = axiom else {
        unreachable!("induction axiom starts with the formula quantifier")
    };
    for phi in phis {
        if !rm.fits(phi) {
            return Err(SemanticsError::EncodingTooDeep(phi.to_string()));
        }
        let encoded = godel_encode(phi, rm.map())?;
        let instance = body.substitute(&phi_var, &encoded)?;
        let verdict = rm.holds_extended(&instance, &mut BTreeMap::new())?;
        report.record(verdict, "induction_instance", || format!("phi={phi}"));
    }
    Ok(report.finish())
}
