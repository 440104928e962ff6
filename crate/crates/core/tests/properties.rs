//! Property tests over seeded random formulas, signatures and models.

use proptest::prelude::*;

use reflect_core::gen::{self, FormulaGen};
use reflect_core::logic::{
    check_theory, desugar, universal_closure, Formula, FuncSym, NamedFormula, PredSym, Signature,
    Sort, Term, Theory, Variable,
};
use reflect_core::reflection::{
    godel_decode, godel_encode, reflective_axioms, reflective_signature, Encoded,
};
use reflect_core::semantics::{holds, models::zk_model, Assignment};

fn nat() -> Sort {
    Sort::new("nat")
}

fn nat_sig() -> Signature {
    Signature {
        sorts: vec![nat()],
        funcs: vec![
            FuncSym::constant("zero", nat()),
            FuncSym::new("s", vec![nat()], nat()),
            FuncSym::new("add", vec![nat(), nat()], nat()),
        ],
        preds: vec![PredSym::new("leq", vec![nat(), nat()])],
    }
}

/// Formulas are well-sorted whenever they check against the signature with
/// all free variables closed away.
fn well_sorted(sig: &Signature, phi: &Formula) -> bool {
    let theory = Theory {
        signature: sig.clone(),
        axioms: vec![NamedFormula::new("a", universal_closure(phi))],
        ..Default::default()
    };
    check_theory(&theory).is_empty()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn substitution_preserves_well_sortedness_and_free_vars(seed in 0u64..10_000) {
        let sig = nat_sig();
        let mut g = FormulaGen::new(&sig, seed);
        let x = Variable::new(nat(), 0);
        let Some(phi) = g.core_formula(4, &[x.clone()]) else { return Ok(()) };
        let Some(t) = g.term(&nat(), 2, &[]) else { return Ok(()) };
        let result = phi.substitute(&x, &t).unwrap();
        prop_assert!(well_sorted(&sig, &result));
        if phi.free_vars().contains(&x) {
            let mut expected = phi.free_vars();
            expected.remove(&x);
            expected.extend(t.free_vars());
            prop_assert_eq!(result.free_vars(), expected);
        } else {
            prop_assert_eq!(result, phi);
        }
    }

    #[test]
    fn desugar_idempotent_and_truth_preserving(seed in 0u64..10_000) {
        let sig = nat_sig();
        let mut g = FormulaGen::new(&sig, seed);
        let Some(a) = g.core_formula(3, &[]) else { return Ok(()) };
        let Some(b) = g.core_formula(3, &[]) else { return Ok(()) };
        let sugared = Formula::iff(a.clone(), Formula::implies(b.clone(), Formula::and(a, b)));
        let core = desugar(&sugared);
        prop_assert!(core.is_core());
        prop_assert_eq!(&desugar(&core), &core);
        let theory = Theory { signature: sig.clone(), ..Default::default() };
        for k in 1..=3usize {
            let m = zk_model(&theory, k).unwrap();
            let empty = Assignment::new();
            prop_assert_eq!(
                holds(&m, &empty, &sugared).unwrap(),
                holds(&m, &empty, &core).unwrap()
            );
        }
    }

    #[test]
    fn universal_closure_means_truth_under_all_assignments(seed in 0u64..10_000) {
        let sig = nat_sig();
        let mut g = FormulaGen::new(&sig, seed);
        let x = Variable::new(nat(), 0);
        let Some(phi) = g.core_formula(3, &[x.clone()]) else { return Ok(()) };
        let closed = universal_closure(&phi);
        prop_assert!(closed.is_closed());
        let theory = Theory { signature: sig.clone(), ..Default::default() };
        let m = zk_model(&theory, 3).unwrap();
        let all = (0..3).all(|v| {
            let mut a = Assignment::new();
            a.insert(x.clone(), v);
            holds(&m, &a, &phi).unwrap()
        });
        prop_assert_eq!(holds(&m, &Assignment::new(), &closed).unwrap(), all);
    }

    #[test]
    fn encoding_round_trips_and_is_injective(seed in 0u64..10_000) {
        let sig = nat_sig();
        let map = reflective_signature(&sig).unwrap();
        let mut g = FormulaGen::new(&sig, seed);
        let batch = g.distinct_closed(20, 5);
        let mut encodings = std::collections::HashSet::new();
        for phi in &batch {
            let enc = godel_encode(phi, &map).unwrap();
            prop_assert_eq!(godel_decode(&enc, &map).unwrap(), Encoded::Formula(phi.clone()));
            prop_assert!(encodings.insert(enc));
        }
    }

    #[test]
    fn generated_counts_match_clause_enumeration(seed in 0u64..10_000, n in 1usize..=4, k in 0usize..=6, m in 0usize..=4) {
        let sig = gen::signature(seed, n, k, m);
        let map = reflective_signature(&sig).unwrap();
        prop_assert_eq!(map.generated_sorts().len(), 2 * n + 2);
        prop_assert_eq!(map.generated_symbol_count(), 8 * n + k + m + 5);
        prop_assert_eq!(reflective_axioms(&map).len(), n * n + 4 * n + k + m + 3);
    }
}

#[test]
fn every_generated_axiom_uses_only_declared_symbols() {
    for seed in 0..10u64 {
        let sig = gen::signature(seed, 1 + (seed as usize % 3), 4, 2);
        let map = reflective_signature(&sig).unwrap();
        let theory = Theory {
            signature: map.extended_signature(),
            axioms: reflective_axioms(&map),
            ..Default::default()
        };
        assert_eq!(check_theory(&theory), vec![]);
    }
}

#[test]
fn encoding_of_a_term_lands_in_the_term_sort() {
    let sig = nat_sig();
    let map = reflective_signature(&sig).unwrap();
    let mut g = FormulaGen::new(&sig, 4242);
    for _ in 0..50 {
        if let Some(t) = g.term(&nat(), 3, &[]) {
            let enc = reflect_core::reflection::godel_encode(
                &Formula::equals(t.clone(), t.clone()),
                &map,
            )
            .unwrap();
            assert_eq!(enc.sort(), map.form_sort());
            match godel_decode(&enc, &map).unwrap() {
                Encoded::Formula(Formula::Equals(l, r)) => {
                    assert_eq!(l, t);
                    assert_eq!(r, t);
                }
                other => panic!("unexpected decode: {other:?}"),
            }
        }
    }
}
