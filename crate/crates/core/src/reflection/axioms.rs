//! The defining axioms of the reflective extension.
//!
//! Emitted as universal closures, in a fixed order: variable-lookup axioms
//! per sort, the cross-sort lookup axiom per ordered sort pair, term
//! evaluation per sort and per function, satisfaction clauses for equality,
//! predicates, the three connectives and the quantifier. For a base
//! signature with `n` sorts, `k` functions and `m` predicates this yields
//! `n^2 + 4n + k + m + 3` axioms.

use crate::logic::{universal_closure, Formula, NamedFormula, Sort, Term, Variable};

use super::signature::ReflectionMap;

fn var(sort: &Sort, index: usize) -> Term {
    Term::Var(Variable::new(sort.clone(), index))
}

/// All instances of the defining schemata for the given extension.
pub fn reflective_axioms(map: &ReflectionMap) -> Vec<NamedFormula> {
    let mut out = Vec::new();
    let sorts = &map.base().sorts;
    let env = map.env_sort();

    // evalv(push(e, v, x), v) = x
    for s in sorts {
        let e = var(env, 0);
        let v = var(map.var_sort(s), 0);
        let x = var(s, 0);
        let pushed = Term::app(map.push(s), vec![e.clone(), v.clone(), x.clone()]);
        let body = Formula::equals(Term::app(map.evalv(s), vec![pushed, v.clone()]), x.clone());
        out.push(named(format!("ax_eval_v0_{}", s.name), body));
    }

    // v != v' -> evalv(push(e, v', x), v) = evalv(e, v)
    for s in sorts {
        let e = var(env, 0);
        let v = var(map.var_sort(s), 0);
        let v2 = var(map.var_sort(s), 1);
        let x = var(s, 0);
        let pushed = Term::app(map.push(s), vec![e.clone(), v2.clone(), x.clone()]);
        let body = Formula::implies(
            Formula::not(Formula::equals(v.clone(), v2.clone())),
            Formula::equals(
                Term::app(map.evalv(s), vec![pushed, v.clone()]),
                Term::app(map.evalv(s), vec![e.clone(), v.clone()]),
            ),
        );
        out.push(named(format!("ax_eval_v1_{}", s.name), body));
    }

    // evalv_s(push_t(e, w, x), v) = evalv_s(e, v)  for s != t
    for s in sorts {
        for t in sorts {
            if s == t {
                continue;
            }
            let e = var(env, 0);
            let v = var(map.var_sort(s), 0);
            let w = var(map.var_sort(t), 0);
            let x = var(t, 0);
            let pushed = Term::app(map.push(t), vec![e.clone(), w, x]);
            let body = Formula::equals(
                Term::app(map.evalv(s), vec![pushed, v.clone()]),
                Term::app(map.evalv(s), vec![e, v]),
            );
            out.push(named(format!("ax_eval_v2_{}_{}", s.name, t.name), body));
        }
    }

    // eval(e, inj(v)) = evalv(e, v)
    for s in sorts {
        let e = var(env, 0);
        let v = var(map.var_sort(s), 0);
        let body = Formula::equals(
            Term::app(
                map.eval(s),
                vec![e.clone(), Term::app(map.inj(s), vec![v.clone()])],
            ),
            Term::app(map.evalv(s), vec![e, v]),
        );
        out.push(named(format!("ax_eval_var_{}", s.name), body));
    }

    // eval(e, f^(t1..tn)) = f(eval(e, t1), .., eval(e, tn))
    for f in &map.base().funcs {
        let e = var(env, 0);
        let lifted = map.lifted_func(f).expect("lifted function");
        let mut counters = std::collections::BTreeMap::new();
        let args: Vec<Term> = f
            .domain
            .iter()
            .map(|s| {
                let c = counters.entry(s.name.clone()).or_insert(0usize);
                let t = var(map.term_sort(s), *c);
                *c += 1;
                t
            })
            .collect();
        let evaluated: Vec<Term> = f
            .domain
            .iter()
            .zip(&args)
            .map(|(s, a)| Term::app(map.eval(s), vec![e.clone(), a.clone()]))
            .collect();
        let body = Formula::equals(
            Term::app(
                map.eval(&f.codomain),
                vec![e.clone(), Term::app(lifted, args.clone())],
            ),
            Term::app(f, evaluated),
        );
        out.push(named(format!("ax_eval_f_{}", f.name), body));
    }

    // sat(e, eq(x, y)) <-> eval(e, x) = eval(e, y)
    for s in sorts {
        let e = var(env, 0);
        let x = var(map.term_sort(s), 0);
        let y = var(map.term_sort(s), 1);
        let body = Formula::iff(
            Formula::atom(
                map.sat(),
                vec![
                    e.clone(),
                    Term::app(map.refl_eq(s), vec![x.clone(), y.clone()]),
                ],
            ),
            Formula::equals(
                Term::app(map.eval(s), vec![e.clone(), x]),
                Term::app(map.eval(s), vec![e, y]),
            ),
        );
        out.push(named(format!("ax_eq_{}", s.name), body));
    }

    // sat(e, P^(t1..tn)) <-> P(eval(e, t1), .., eval(e, tn))
    for p in &map.base().preds {
        let e = var(env, 0);
        let lifted = map.lifted_pred(p).expect("lifted predicate");
        let mut counters = std::collections::BTreeMap::new();
        let args: Vec<Term> = p
            .domain
            .iter()
            .map(|s| {
                let c = counters.entry(s.name.clone()).or_insert(0usize);
                let t = var(map.term_sort(s), *c);
                *c += 1;
                t
            })
            .collect();
        let evaluated: Vec<Term> = p
            .domain
            .iter()
            .zip(&args)
            .map(|(s, a)| Term::app(map.eval(s), vec![e.clone(), a.clone()]))
            .collect();
        let body = Formula::iff(
            Formula::atom(map.sat(), vec![e.clone(), Term::app(lifted, args)]),
            Formula::atom(p, evaluated),
        );
        out.push(named(format!("ax_pred_{}", p.name), body));
    }

    // sat(e, false^) <-> false
    {
        let e = var(env, 0);
        let body = Formula::iff(
            Formula::atom(map.sat(), vec![e, Term::constant(map.refl_bot())]),
            Formula::Bottom,
        );
        out.push(named("ax_false".to_string(), body));
    }

    // sat(e, not^(p)) <-> ~sat(e, p)
    {
        let e = var(env, 0);
        let p = var(map.form_sort(), 0);
        let body = Formula::iff(
            Formula::atom(
                map.sat(),
                vec![e.clone(), Term::app(map.refl_not(), vec![p.clone()])],
            ),
            Formula::not(Formula::atom(map.sat(), vec![e, p])),
        );
        out.push(named("ax_not".to_string(), body));
    }

    // sat(e, or^(p, q)) <-> sat(e, p) | sat(e, q)
    {
        let e = var(env, 0);
        let p = var(map.form_sort(), 0);
        let q = var(map.form_sort(), 1);
        let body = Formula::iff(
            Formula::atom(
                map.sat(),
                vec![
                    e.clone(),
                    Term::app(map.refl_or(), vec![p.clone(), q.clone()]),
                ],
            ),
            Formula::or(
                Formula::atom(map.sat(), vec![e.clone(), p]),
                Formula::atom(map.sat(), vec![e, q]),
            ),
        );
        out.push(named("ax_or".to_string(), body));
    }

    // sat(e, all^(v, p)) <-> forall x. sat(push(e, v, x), p)
    for s in sorts {
        let e = var(env, 0);
        let v = var(map.var_sort(s), 0);
        let p = var(map.form_sort(), 0);
        let x = Variable::new(s.clone(), 0);
        let pushed = Term::app(map.push(s), vec![e.clone(), v.clone(), Term::Var(x.clone())]);
        let body = Formula::iff(
            Formula::atom(
                map.sat(),
                vec![
                    e.clone(),
                    Term::app(map.refl_forall(s), vec![v.clone(), p.clone()]),
                ],
            ),
            Formula::forall(x, Formula::atom(map.sat(), vec![pushed, p])),
        );
        out.push(named(format!("ax_all_{}", s.name), body));
    }

    out
}

/// Constructor-style axioms for the variable representation: injectivity of
/// `next` and disjointness of `v0` from every successor.
///
/// The construction itself does not include these, but without them the
/// guard of the shadowed-lookup axiom can never be discharged for two
/// syntactically distinct variables, so they are generated by default and
/// can be switched off for construction-faithful output.
pub fn variable_term_axioms(map: &ReflectionMap) -> Vec<NamedFormula> {
    let mut out = Vec::new();
    for s in &map.base().sorts {
        let vs = map.var_sort(s);
        let x = var(vs, 0);
        let y = var(vs, 1);
        let inj_body = Formula::implies(
            Formula::equals(
                Term::app(map.next(s), vec![x.clone()]),
                Term::app(map.next(s), vec![y.clone()]),
            ),
            Formula::equals(x.clone(), y.clone()),
        );
        out.push(named(format!("ax_var_inj_{}", s.name), inj_body));
        let disj_body = Formula::not(Formula::equals(
            Term::constant(map.v0(s)),
            Term::app(map.next(s), vec![x.clone()]),
        ));
        out.push(named(format!("ax_var_disj_{}", s.name), disj_body));
    }
    out
}

fn named(name: String, body: Formula) -> NamedFormula {
    NamedFormula::new(name, universal_closure(&body))
}
