//! Universal closure, desugaring to the core connectives, and
//! alpha-equivalence.

use std::collections::HashMap;

use super::syntax::{Formula, Term, Variable};

/// Close the formula by prepending a universal quantifier for every free
/// variable, ordered by sort name and then index (outermost first).
pub fn universal_closure(phi: &Formula) -> Formula {
    let free = phi.free_vars();
    free.into_iter()
        .rev()
        .fold(phi.clone(), |acc, v| Formula::forall(v, acc))
}

/// Rewrite into the core connective set `{false, =, atoms, ~, |, forall}`.
///
/// `p -> q` becomes `~p | q`; `p & q` becomes `~(~p | ~q)`;
/// `p <-> q` goes through `(p -> q) & (q -> p)`; `exists x. p` becomes
/// `~forall x. ~p`. Idempotent on core formulas.
pub fn desugar(phi: &Formula) -> Formula {
    match phi {
        Formula::Bottom | Formula::Equals(..) | Formula::Atom(..) => phi.clone(),
        Formula::Not(f) => Formula::not(desugar(f)),
        Formula::Or(l, r) => Formula::or(desugar(l), desugar(r)),
        Formula::And(l, r) => {
            let (l, r) = (desugar(l), desugar(r));
            Formula::not(Formula::or(Formula::not(l), Formula::not(r)))
        }
        Formula::Implies(l, r) => Formula::or(Formula::not(desugar(l)), desugar(r)),
        Formula::Iff(l, r) => desugar(&Formula::and(
            Formula::implies((**l).clone(), (**r).clone()),
            Formula::implies((**r).clone(), (**l).clone()),
        )),
        Formula::Forall(v, f) => Formula::forall(v.clone(), desugar(f)),
        Formula::Exists(v, f) => {
            Formula::not(Formula::forall(v.clone(), Formula::not(desugar(f))))
        }
    }
}

/// Syntactic equality up to renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    alpha_eq_rec(a, b, &mut HashMap::new(), &mut HashMap::new())
}

fn alpha_eq_rec(
    a: &Formula,
    b: &Formula,
    l2r: &mut HashMap<Variable, Variable>,
    r2l: &mut HashMap<Variable, Variable>,
) -> bool {
    match (a, b) {
        (Formula::Bottom, Formula::Bottom) => true,
        (Formula::Equals(al, ar), Formula::Equals(bl, br)) => {
            term_alpha_eq(al, bl, l2r) && term_alpha_eq(ar, br, l2r)
        }
        (Formula::Atom(p, pa), Formula::Atom(q, qa)) => {
            p == q && pa.len() == qa.len() && pa
                .iter()
                .zip(qa)
                .all(|(x, y)| term_alpha_eq(x, y, l2r))
        }
        (Formula::Not(f), Formula::Not(g)) => alpha_eq_rec(f, g, l2r, r2l),
        (Formula::Or(al, ar), Formula::Or(bl, br))
        | (Formula::And(al, ar), Formula::And(bl, br))
        | (Formula::Implies(al, ar), Formula::Implies(bl, br))
        | (Formula::Iff(al, ar), Formula::Iff(bl, br)) => {
            alpha_eq_rec(al, bl, l2r, r2l) && alpha_eq_rec(ar, br, l2r, r2l)
        }
        (Formula::Forall(v, f), Formula::Forall(w, g))
        | (Formula::Exists(v, f), Formula::Exists(w, g)) => {
            if v.sort != w.sort {
                return false;
            }
            let old_l = l2r.insert(v.clone(), w.clone());
            let old_r = r2l.insert(w.clone(), v.clone());
            let res = alpha_eq_rec(f, g, l2r, r2l)
                && l2r.get(v) == Some(w)
                && r2l.get(w) == Some(v);
            match old_l {
                Some(o) => {
                    l2r.insert(v.clone(), o);
                }
                None => {
                    l2r.remove(v);
                }
            }
            match old_r {
                Some(o) => {
                    r2l.insert(w.clone(), o);
                }
                None => {
                    r2l.remove(w);
                }
            }
            res
        }
        _ => false,
    }
}

fn term_alpha_eq(a: &Term, b: &Term, l2r: &HashMap<Variable, Variable>) -> bool {
    match (a, b) {
        (Term::Var(v), Term::Var(w)) => match l2r.get(v) {
            Some(mapped) => mapped == w,
            None => v == w,
        },
        (Term::App(f, fa), Term::App(g, ga)) => {
            f == g && fa.len() == ga.len() && fa
                .iter()
                .zip(ga)
                .all(|(x, y)| term_alpha_eq(x, y, l2r))
        }
        _ => false,
    }
}
