//! The built-in axiomatizations must hold in the standard model and in the
//! finite model families the bounded checks run over.

use reflect_bench::builtins::{builtin_theory, IND_THEORY, LIST_THEORY, NAT_THEORY};
use reflect_bench::StandardModel;
use reflect_core::semantics::models::{truncated_list_model, zk_model};

#[test]
fn every_builtin_axiom_holds_in_the_standard_model() {
    let model = StandardModel::default();
    for name in [NAT_THEORY, LIST_THEORY, IND_THEORY] {
        let theory = builtin_theory(name).unwrap();
        for ax in &theory.axioms {
            assert_eq!(
                model.find_counterexample(&ax.formula).unwrap(),
                None,
                "{name} {}",
                ax.name
            );
        }
    }
}

#[test]
fn nat_theory_has_cyclic_models_of_every_size() {
    let theory = builtin_theory(NAT_THEORY).unwrap();
    for k in 1..=4 {
        // Construction fails if any axiom is violated.
        let m = zk_model(&theory, k).unwrap();
        assert_eq!(m.carrier("nat"), k);
    }
}

#[test]
fn list_theory_has_truncated_models() {
    let theory = builtin_theory(LIST_THEORY).unwrap();
    for (k, len) in [(1, 2), (2, 1), (2, 2), (3, 1)] {
        let m = truncated_list_model(&theory, k, len).unwrap();
        assert!(m.carrier("list") >= 2);
    }
}
