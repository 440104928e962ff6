//! Reflective structural induction and free-constructor axioms.

use crate::logic::{
    universal_closure, Formula, FuncSym, InductiveDatatype, NamedFormula, Term, Variable,
};

use super::signature::ReflectionMap;
use super::ReflectionError;

/// `True[phi, n]`: the pushed singleton environment satisfies `phi`, with the
/// scheme bound to the first variable of the datatype sort.
fn truth_at(map: &ReflectionMap, dt_sort: &crate::logic::Sort, phi: &Term, n: Term) -> Formula {
    let pushed = Term::app(
        map.push(dt_sort),
        vec![
            Term::constant(map.empty_env()),
            Term::constant(map.v0(dt_sort)),
            n,
        ],
    );
    Formula::atom(map.sat(), vec![pushed, phi.clone()])
}

/// The single reflective induction axiom of a datatype.
///
/// Quantifies over the formula sort: for every constructor a case stating
/// that truth propagates from the recursive arguments to the constructed
/// value, and the conjunction of cases entails truth everywhere.
pub fn induction_axiom(
    dt: &InductiveDatatype,
    map: &ReflectionMap,
) -> Result<Formula, ReflectionError> {
    if dt.constructors.is_empty() {
        return Err(ReflectionError::NotADatatype(format!(
            "{} has no constructors",
            dt.sort.name
        )));
    }
    for c in &dt.constructors {
        if c.codomain != dt.sort {
            return Err(ReflectionError::NotADatatype(format!(
                "constructor {} has codomain {}",
                c.name, c.codomain
            )));
        }
    }

    let phi_var = Variable::new(map.form_sort().clone(), 0);
    let phi = Term::Var(phi_var.clone());

    let cases: Vec<Formula> = dt
        .constructors
        .iter()
        .map(|c| constructor_case(dt, map, c, &phi))
        .collect();
    let premise = Formula::conjoin(cases).expect("at least one constructor");

    let x = Variable::new(dt.sort.clone(), 0);
    let conclusion = Formula::forall(
        x.clone(),
        truth_at(map, &dt.sort, &phi, Term::Var(x)),
    );

    Ok(Formula::forall(
        phi_var,
        Formula::implies(premise, conclusion),
    ))
}

fn constructor_case(
    dt: &InductiveDatatype,
    map: &ReflectionMap,
    c: &FuncSym,
    phi: &Term,
) -> Formula {
    // One argument variable per domain position, indices counted per sort.
    let mut counters = std::collections::BTreeMap::new();
    let args: Vec<Variable> = c
        .domain
        .iter()
        .map(|s| {
            let i = counters.entry(s.name.clone()).or_insert(0usize);
            let v = Variable::new(s.clone(), *i);
            *i += 1;
            v
        })
        .collect();

    let conclusion = truth_at(
        map,
        &dt.sort,
        phi,
        Term::app(c, args.iter().cloned().map(Term::Var).collect()),
    );
    let hypotheses: Vec<Formula> = dt
        .recursive_positions(c)
        .into_iter()
        .map(|i| truth_at(map, &dt.sort, phi, Term::Var(args[i].clone())))
        .collect();
    let body = match Formula::conjoin(hypotheses) {
        Some(h) => Formula::implies(h, conclusion),
        None => conclusion,
    };
    // Close over the constructor arguments only; the formula variable stays
    // free until the outer quantifier binds it.
    args.into_iter()
        .rev()
        .fold(body, |acc, v| Formula::forall(v, acc))
}

/// Constructor disjointness and injectivity for a datatype: pairwise
/// distinctness of distinct constructors and argumentwise injectivity of
/// every constructor of positive arity.
pub fn datatype_axioms(dt: &InductiveDatatype) -> Vec<NamedFormula> {
    let mut out = Vec::new();
    for (i, c) in dt.constructors.iter().enumerate() {
        for d in dt.constructors.iter().skip(i + 1) {
            out.push(NamedFormula::new(
                format!("ax_disj_{}_{}_{}", dt.sort.name, c.name, d.name),
                disjointness(c, d),
            ));
        }
    }
    for c in &dt.constructors {
        if c.arity() > 0 {
            out.push(NamedFormula::new(
                format!("ax_inj_{}_{}", dt.sort.name, c.name),
                injectivity(c),
            ));
        }
    }
    out
}

fn disjointness(c: &FuncSym, d: &FuncSym) -> Formula {
    let mut counters = std::collections::BTreeMap::new();
    let mut fresh = |s: &crate::logic::Sort| {
        let i = counters.entry(s.name.clone()).or_insert(0usize);
        let v = Variable::new(s.clone(), *i);
        *i += 1;
        v
    };
    let c_args: Vec<Variable> = c.domain.iter().map(&mut fresh).collect();
    let d_args: Vec<Variable> = d.domain.iter().map(&mut fresh).collect();
    let body = Formula::not(Formula::equals(
        Term::app(c, c_args.into_iter().map(Term::Var).collect()),
        Term::app(d, d_args.into_iter().map(Term::Var).collect()),
    ));
    universal_closure(&body)
}

fn injectivity(c: &FuncSym) -> Formula {
    let mut counters = std::collections::BTreeMap::new();
    let mut fresh = |s: &crate::logic::Sort| {
        let i = counters.entry(s.name.clone()).or_insert(0usize);
        let v = Variable::new(s.clone(), *i);
        *i += 1;
        v
    };
    let xs: Vec<Variable> = c.domain.iter().map(&mut fresh).collect();
    let ys: Vec<Variable> = c.domain.iter().map(&mut fresh).collect();
    let eqs: Vec<Formula> = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| Formula::equals(Term::Var(x.clone()), Term::Var(y.clone())))
        .collect();
    let body = Formula::implies(
        Formula::equals(
            Term::app(c, xs.iter().cloned().map(Term::Var).collect()),
            Term::app(c, ys.iter().cloned().map(Term::Var).collect()),
        ),
        Formula::conjoin(eqs).expect("positive arity"),
    );
    universal_closure(&body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{check_theory, PredSym, Signature, Sort, Theory};
    use crate::reflection::reflective_signature;

    fn nat() -> Sort {
        Sort::new("nat")
    }

    fn nat_dt() -> InductiveDatatype {
        InductiveDatatype::new(
            nat(),
            vec![
                FuncSym::constant("zero", nat()),
                FuncSym::new("s", vec![nat()], nat()),
            ],
        )
    }

    fn nat_sig() -> Signature {
        Signature {
            sorts: vec![nat()],
            funcs: vec![
                FuncSym::constant("zero", nat()),
                FuncSym::new("s", vec![nat()], nat()),
            ],
            preds: vec![],
        }
    }

    #[test]
    fn nat_induction_axiom_shape() {
        let map = reflective_signature(&nat_sig()).unwrap();
        let ax = induction_axiom(&nat_dt(), &map).unwrap();
        let printed = ax.to_string();
        // forall phi. (True[phi, zero] & forall n. (True[phi, n] -> True[phi, s n]))
        //             -> forall n. True[phi, n]
        assert_eq!(
            printed,
            "forall x0:rfl_Form. ((rfl_sat(rfl_push_nat(rfl_empty, rfl_v0_nat, zero), x0) & \
             forall x0:nat. (rfl_sat(rfl_push_nat(rfl_empty, rfl_v0_nat, x0), x0) -> \
             rfl_sat(rfl_push_nat(rfl_empty, rfl_v0_nat, s(x0)), x0))) -> \
             forall x0:nat. rfl_sat(rfl_push_nat(rfl_empty, rfl_v0_nat, x0), x0))"
        );
        assert!(ax.is_closed());
    }

    #[test]
    fn induction_axiom_is_well_sorted() {
        let map = reflective_signature(&nat_sig()).unwrap();
        let ax = induction_axiom(&nat_dt(), &map).unwrap();
        let theory = Theory {
            signature: map.extended_signature(),
            axioms: vec![NamedFormula::new("ind", ax)],
            ..Default::default()
        };
        assert_eq!(check_theory(&theory), vec![]);
    }

    #[test]
    fn list_induction_has_two_cases() {
        let list = Sort::new("list");
        let sig = Signature {
            sorts: vec![list.clone(), nat()],
            funcs: vec![
                FuncSym::constant("nil", list.clone()),
                FuncSym::new("cons", vec![nat(), list.clone()], list.clone()),
                FuncSym::constant("zero", nat()),
                FuncSym::new("s", vec![nat()], nat()),
            ],
            preds: vec![PredSym::new("leq", vec![nat(), nat()])],
        };
        let dt = InductiveDatatype::new(
            list.clone(),
            vec![
                sig.func("nil").unwrap().clone(),
                sig.func("cons").unwrap().clone(),
            ],
        );
        let map = reflective_signature(&sig).unwrap();
        let ax = induction_axiom(&dt, &map).unwrap();
        let printed = ax.to_string();
        assert!(printed.contains("rfl_push_list(rfl_empty, rfl_v0_list, nil)"));
        assert!(printed.contains("cons(x0, x0)") || printed.contains("cons("), "{printed}");
    }

    #[test]
    fn degenerate_single_constructor() {
        let unit = Sort::new("unit");
        let sig = Signature {
            sorts: vec![unit.clone()],
            funcs: vec![FuncSym::constant("u", unit.clone())],
            preds: vec![],
        };
        let dt = InductiveDatatype::new(unit.clone(), vec![sig.func("u").unwrap().clone()]);
        let map = reflective_signature(&sig).unwrap();
        let ax = induction_axiom(&dt, &map).unwrap();
        assert_eq!(
            ax.to_string(),
            "forall x0:rfl_Form. (rfl_sat(rfl_push_unit(rfl_empty, rfl_v0_unit, u), x0) -> \
             forall x0:unit. rfl_sat(rfl_push_unit(rfl_empty, rfl_v0_unit, x0), x0))"
        );
        // No pairs, no injectivity for a single nullary constructor.
        assert!(datatype_axioms(&dt).is_empty());
    }

    #[test]
    fn empty_datatype_is_rejected() {
        let map = reflective_signature(&nat_sig()).unwrap();
        let dt = InductiveDatatype::new(nat(), vec![]);
        assert!(matches!(
            induction_axiom(&dt, &map),
            Err(ReflectionError::NotADatatype(_))
        ));
    }

    #[test]
    fn nat_free_constructor_axioms() {
        let axs = datatype_axioms(&nat_dt());
        let printed: Vec<String> = axs.iter().map(|a| a.formula.to_string()).collect();
        assert_eq!(
            printed,
            vec![
                "forall x0:nat. ~(zero = s(x0))",
                "forall x0:nat. forall x1:nat. ((s(x0) = s(x1)) -> (x0 = x1))",
            ]
        );
    }

    #[test]
    fn list_injectivity_conjoins_argument_equalities() {
        let list = Sort::new("list");
        let dt = InductiveDatatype::new(
            list.clone(),
            vec![
                FuncSym::constant("nil", list.clone()),
                FuncSym::new("cons", vec![nat(), list.clone()], list.clone()),
            ],
        );
        let axs = datatype_axioms(&dt);
        assert_eq!(axs.len(), 2);
        let inj = &axs[1];
        assert!(inj.formula.to_string().contains("&"), "{}", inj.formula);
    }
}
