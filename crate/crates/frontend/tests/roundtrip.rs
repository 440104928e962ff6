//! End-to-end frontend properties: parse/render inverses and emitted files
//! passing the grammar checkers.

use proptest::prelude::*;

use reflect_core::gen::FormulaGen;
use reflect_core::logic::{FuncSym, NamedFormula, PredSym, Signature, Sort, Theory};
use reflect_core::reflection::{reflective_extension, truth_conjecture, ReflectionConfig};
use reflect_frontend::{
    emit_problem, lint, parse_theory, render_theory, ProblemFile, TargetFormat,
};

fn nat_sig() -> Signature {
    let nat = Sort::new("nat");
    Signature {
        sorts: vec![nat.clone()],
        funcs: vec![
            FuncSym::constant("zero", nat.clone()),
            FuncSym::new("s", vec![nat.clone()], nat.clone()),
            FuncSym::new("add", vec![nat.clone(), nat.clone()], nat.clone()),
        ],
        preds: vec![PredSym::new("leq", vec![nat.clone(), nat])],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parse_inverts_render(seed in 0u64..10_000) {
        let sig = nat_sig();
        let mut gen = FormulaGen::new(&sig, seed);
        let axioms: Vec<NamedFormula> = gen
            .distinct_closed(4, 4)
            .into_iter()
            .enumerate()
            .map(|(i, f)| NamedFormula::new(format!("ax{i}"), f))
            .collect();
        let conjectures: Vec<NamedFormula> = gen
            .distinct_closed(2, 3)
            .into_iter()
            .enumerate()
            .map(|(i, f)| NamedFormula::new(format!("goal{i}"), f))
            .collect();
        let theory = Theory { signature: sig, axioms, conjectures, ..Default::default() };
        let rendered = render_theory(&theory);
        let parsed = parse_theory(&rendered).unwrap();
        prop_assert_eq!(parsed, theory);
    }

    #[test]
    fn emitted_files_pass_the_grammar_checkers(seed in 0u64..10_000) {
        let sig = nat_sig();
        let mut gen = FormulaGen::new(&sig, seed);
        let base = Theory {
            signature: sig,
            axioms: gen
                .distinct_closed(3, 3)
                .into_iter()
                .enumerate()
                .map(|(i, f)| NamedFormula::new(format!("ax{i}"), f))
                .collect(),
            ..Default::default()
        };
        let ext = reflective_extension(&base, &ReflectionConfig::default()).unwrap();
        let conj = truth_conjecture(&base.axioms[0].formula, &ext.map).unwrap();
        let mut theory = ext.theory.clone();
        theory.conjectures = vec![NamedFormula::new("goal", conj)];

        let smt = emit_problem(&ProblemFile::new(theory.clone(), "goal", TargetFormat::Smtlib2))
            .unwrap();
        lint::check_smtlib(&smt).map_err(|e| TestCaseError::fail(format!("{e}\n{smt}")))?;
        let tptp = emit_problem(&ProblemFile::new(theory, "goal", TargetFormat::Tptp)).unwrap();
        lint::check_tptp(&tptp).map_err(|e| TestCaseError::fail(format!("{e}\n{tptp}")))?;
    }
}

#[test]
fn monomorphized_list_theory_round_trips_and_emits() {
    let src = "\
(sort nat)
(fun zero () nat)
(fun s (nat) nat)
(datatype nat (zero) (s nat))
(datatype (List a) (nil) (cons a (List a)))
(fun append ((List nat) (List nat)) (List nat))
(axiom (forall ((ys (List nat))) (= (append nil ys) ys)))
(conjecture goal (forall ((xs (List nat))) (= (append nil xs) xs)))
";
    let theory = parse_theory(src).unwrap();
    let rendered = render_theory(&theory);
    assert_eq!(parse_theory(&rendered).unwrap(), theory);

    let smt =
        emit_problem(&ProblemFile::new(theory.clone(), "goal", TargetFormat::Smtlib2)).unwrap();
    lint::check_smtlib(&smt).unwrap();
    let native = emit_problem(
        &ProblemFile::new(theory.clone(), "goal", TargetFormat::Smtlib2).with_native_datatypes(),
    )
    .unwrap();
    lint::check_smtlib(&native).unwrap();
    assert!(native.contains("declare-datatypes"));
    let tptp = emit_problem(&ProblemFile::new(theory, "goal", TargetFormat::Tptp)).unwrap();
    lint::check_tptp(&tptp).unwrap();
}
