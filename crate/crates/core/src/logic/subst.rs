//! Free variables and capture-avoiding substitution.

use thiserror::Error;

use super::syntax::{Formula, Sort, Term, VarSet, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("sort mismatch: cannot substitute a term of sort {term} for a variable of sort {var}")]
    SortMismatch { var: Sort, term: Sort },
}

impl Term {
    /// The set of variables occurring in the term (all are free).
    pub fn free_vars(&self) -> VarSet {
        let mut out = VarSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut VarSet) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => {
                for a in args {
                    a.collect_vars(out);
                }
            }
        }
    }

    /// Replace every occurrence of `x` by `t`.
    pub fn substitute(&self, x: &Variable, t: &Term) -> Result<Term, SubstError> {
        check_sorts(x, t)?;
        Ok(self.subst_unchecked(x, t))
    }

    fn subst_unchecked(&self, x: &Variable, t: &Term) -> Term {
        match self {
            Term::Var(v) => {
                if v == x {
                    t.clone()
                } else {
                    self.clone()
                }
            }
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| a.subst_unchecked(x, t)).collect(),
            ),
        }
    }
}

impl Formula {
    /// Variables with at least one free occurrence.
    pub fn free_vars(&self) -> VarSet {
        match self {
            Formula::Bottom => VarSet::new(),
            Formula::Equals(l, r) => {
                let mut out = l.free_vars();
                out.extend(r.free_vars());
                out
            }
            Formula::Atom(_, args) => {
                let mut out = VarSet::new();
                for a in args {
                    a.collect_vars(&mut out);
                }
                out
            }
            Formula::Not(f) => f.free_vars(),
            Formula::Or(l, r)
            | Formula::And(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                let mut out = l.free_vars();
                out.extend(r.free_vars());
                out
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                let mut out = f.free_vars();
                out.remove(v);
                out
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Capture-avoiding substitution of `t` for the free occurrences of `x`.
    ///
    /// When a binder would capture a variable of `t`, the bound variable is
    /// renamed to the least index of its sort that is fresh for the body,
    /// the substituted term and `x`.
    pub fn substitute(&self, x: &Variable, t: &Term) -> Result<Formula, SubstError> {
        check_sorts(x, t)?;
        Ok(self.subst_unchecked(x, t))
    }

    fn subst_unchecked(&self, x: &Variable, t: &Term) -> Formula {
        match self {
            Formula::Bottom => Formula::Bottom,
            Formula::Equals(l, r) => {
                Formula::Equals(l.subst_unchecked(x, t), r.subst_unchecked(x, t))
            }
            Formula::Atom(p, args) => Formula::Atom(
                p.clone(),
                args.iter().map(|a| a.subst_unchecked(x, t)).collect(),
            ),
            Formula::Not(f) => Formula::not(f.subst_unchecked(x, t)),
            Formula::Or(l, r) => Formula::or(l.subst_unchecked(x, t), r.subst_unchecked(x, t)),
            Formula::And(l, r) => Formula::and(l.subst_unchecked(x, t), r.subst_unchecked(x, t)),
            Formula::Implies(l, r) => {
                Formula::implies(l.subst_unchecked(x, t), r.subst_unchecked(x, t))
            }
            Formula::Iff(l, r) => Formula::iff(l.subst_unchecked(x, t), r.subst_unchecked(x, t)),
            Formula::Forall(v, f) => {
                let (v, f) = subst_under_binder(v, f, x, t);
                Formula::Forall(v, Box::new(f))
            }
            Formula::Exists(v, f) => {
                let (v, f) = subst_under_binder(v, f, x, t);
                Formula::Exists(v, Box::new(f))
            }
        }
    }
}

fn subst_under_binder(v: &Variable, body: &Formula, x: &Variable, t: &Term) -> (Variable, Formula) {
    if v == x {
        // x is bound here; nothing free below.
        return (v.clone(), body.clone());
    }
    let body_free = body.free_vars();
    if !body_free.contains(x) {
        return (v.clone(), body.clone());
    }
    let term_free = t.free_vars();
    if term_free.contains(v) {
        // Renaming required: pick the least index of v's sort fresh for the
        // body, the substituted term and x itself.
        let mut avoid: Vec<usize> = body_free
            .iter()
            .chain(term_free.iter())
            .chain(std::iter::once(x))
            .filter(|w| w.sort == v.sort)
            .map(|w| w.index)
            .collect();
        avoid.sort_unstable();
        let mut fresh = 0usize;
        for i in avoid {
            if i == fresh {
                fresh += 1;
            } else if i > fresh {
                break;
            }
        }
        let fresh_var = Variable::new(v.sort.clone(), fresh);
        let renamed = body.subst_unchecked(v, &Term::Var(fresh_var.clone()));
        (fresh_var.clone(), renamed.subst_unchecked(x, t))
    } else {
        (v.clone(), body.subst_unchecked(x, t))
    }
}

fn check_sorts(x: &Variable, t: &Term) -> Result<(), SubstError> {
    if &x.sort != t.sort() {
        return Err(SubstError::SortMismatch {
            var: x.sort.clone(),
            term: t.sort().clone(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::syntax::FuncSym;

    fn nat() -> Sort {
        Sort::new("nat")
    }

    fn x(i: usize) -> Variable {
        Variable::new(nat(), i)
    }

    fn zero() -> Term {
        Term::constant(&FuncSym::constant("zero", nat()))
    }

    fn s(t: Term) -> Term {
        Term::app(&FuncSym::new("s", vec![nat()], nat()), vec![t])
    }

    #[test]
    fn ground_substitution() {
        let f = Formula::equals(Term::var(x(0)), Term::var(x(0)));
        let g = f.substitute(&x(0), &zero()).unwrap();
        assert_eq!(g, Formula::equals(zero(), zero()));
    }

    #[test]
    fn bound_occurrences_untouched() {
        let f = Formula::forall(x(0), Formula::equals(Term::var(x(0)), Term::var(x(0))));
        let g = f.substitute(&x(0), &zero()).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn capture_triggers_renaming_to_least_fresh_index() {
        // forall x0. x0 = x1  with  x1 := s(x0)  must become
        // forall x2. x2 = s(x0)
        let f = Formula::forall(x(0), Formula::equals(Term::var(x(0)), Term::var(x(1))));
        let g = f.substitute(&x(1), &s(Term::var(x(0)))).unwrap();
        let expected = Formula::forall(
            x(2),
            Formula::equals(Term::var(x(2)), s(Term::var(x(0)))),
        );
        assert_eq!(g, expected);
    }

    #[test]
    fn substitution_free_var_equation() {
        // free(phi[x := t]) = (free(phi) \ {x}) u free(t) when x is free
        let f = Formula::or(
            Formula::equals(Term::var(x(0)), Term::var(x(1))),
            Formula::forall(x(2), Formula::equals(Term::var(x(2)), Term::var(x(0)))),
        );
        let t = s(Term::var(x(3)));
        let g = f.substitute(&x(0), &t).unwrap();
        let mut expected = f.free_vars();
        expected.remove(&x(0));
        expected.extend(t.free_vars());
        assert_eq!(g.free_vars(), expected);
    }

    #[test]
    fn sort_mismatch_is_rejected() {
        let listy = Variable::new(Sort::new("list"), 0);
        let f = Formula::equals(Term::var(x(0)), Term::var(x(0)));
        assert!(matches!(
            f.substitute(&listy, &zero()),
            Err(SubstError::SortMismatch { .. })
        ));
    }
}
