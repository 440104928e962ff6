//! The three benchmark families and their emission.

use reflect_core::logic::{NamedFormula, Theory};
use reflect_core::reflection::{
    reflective_extension, reflective_inductive_extension, truth_conjecture, ReflectionConfig,
};
use reflect_core::semantics::{CheckReport, Violation};
use reflect_frontend::{emit_problem, parse_formula_str, FrontendError, ProblemFile, TargetFormat};

use crate::standard::StandardModel;
use crate::{BenchError, BenchmarkCase, Family, Provenance};

/// Reflective-consequence conjectures, reconstructed from their benchmark
/// names over the merged nat/list vocabulary. Each entry is validated on
/// the bounded standard model before a case is produced.
const REFL1_CASES: &[(&str, &str)] = &[
    ("eqRefl", "(forall ((x nat)) (= x x))"),
    (
        "eqTrans",
        "(forall ((x nat) (y nat) (z nat)) (=> (and (= x y) (= y z)) (= x z)))",
    ),
    (
        "excludedMiddle-0",
        "(or (leq zero zero) (not (leq zero zero)))",
    ),
    (
        "excludedMiddle-1",
        "(or (= zero (s zero)) (not (= zero (s zero))))",
    ),
    (
        "universalInstance",
        "(=> (forall ((x nat)) (leq x (s x))) (leq zero (s zero)))",
    ),
    (
        "contraposition-0",
        "(=> (=> (leq zero zero) (leq zero (s zero))) (=> (not (leq zero (s zero))) (not (leq zero zero))))",
    ),
    (
        "contraposition-1",
        "(=> (=> (not (leq zero (s zero))) (not (leq zero zero))) (=> (leq zero zero) (leq zero (s zero))))",
    ),
    (
        "currying-0",
        "(=> (=> (and (leq zero zero) (leq zero (s zero))) (leq zero (s (s zero)))) (=> (leq zero zero) (=> (leq zero (s zero)) (leq zero (s (s zero))))))",
    ),
    (
        "currying-1",
        "(=> (=> (leq zero zero) (=> (leq zero (s zero)) (leq zero (s (s zero))))) (=> (and (leq zero zero) (leq zero (s zero))) (leq zero (s (s zero)))))",
    ),
    (
        "addGround-0",
        "(= (add (s zero) (s zero)) (s (s zero)))",
    ),
    (
        "addGround-1",
        "(= (add (s (s zero)) (s zero)) (s (s (s zero))))",
    ),
    (
        "addExists",
        "(exists ((x nat)) (= (add x (s zero)) (s (s zero))))",
    ),
    (
        "existsZeroAdd",
        "(exists ((x nat)) (forall ((y nat)) (= (add x y) y)))",
    ),
    (
        "mulGround",
        "(= (mul (s (s zero)) (s zero)) (s (s zero)))",
    ),
    (
        "mulExists",
        "(exists ((x nat)) (= (mul x (s (s zero))) (s (s zero))))",
    ),
    (
        "existsZeroMul",
        "(exists ((x nat)) (forall ((y nat)) (= (mul x y) zero)))",
    ),
    (
        "appendGround-0",
        "(= (append (cons zero nil) (cons (s zero) nil)) (cons zero (cons (s zero) nil)))",
    ),
    (
        "appendGround-1",
        "(= (append nil (cons zero nil)) (cons zero nil))",
    ),
    (
        "appendExists",
        "(exists ((xs list)) (= (append xs (cons zero nil)) (cons zero nil)))",
    ),
    (
        "existsNil",
        "(exists ((xs list)) (forall ((ys list)) (= (append xs ys) ys)))",
    ),
];

/// Induction-benchmark stems, reconstructed over the induction base theory.
const IND_CASES: &[(&str, &str)] = &[
    (
        "addCommut",
        "(forall ((x nat) (y nat)) (= (add x y) (add y x)))",
    ),
    (
        "mulCommut",
        "(forall ((x nat) (y nat)) (= (mul x y) (mul y x)))",
    ),
    (
        "addAssoc",
        "(forall ((x nat) (y nat) (z nat)) (= (add (add x y) z) (add x (add y z))))",
    ),
    (
        "mulAssoc",
        "(forall ((x nat) (y nat) (z nat)) (= (mul (mul x y) z) (mul x (mul y z))))",
    ),
    (
        "addNeutral",
        "(forall ((x nat)) (and (= (add x zero) x) (= (add zero x) x)))",
    ),
    ("addNeutral-0", "(forall ((x nat)) (= (add zero x) x))"),
    ("addNeutral-1", "(forall ((x nat)) (= (add x zero) x))"),
    ("mulZero", "(forall ((x nat)) (= (mul x zero) zero))"),
    (
        "distr-0",
        "(forall ((x nat) (y nat) (z nat)) (= (mul x (add y z)) (add (mul x y) (mul x z))))",
    ),
    (
        "distr-1",
        "(forall ((x nat) (y nat) (z nat)) (= (mul (add x y) z) (add (mul x z) (mul y z))))",
    ),
    (
        "leqTrans",
        "(forall ((x nat) (y nat) (z nat)) (=> (and (leq x y) (leq y z)) (leq x z)))",
    ),
    ("zeroMin", "(forall ((x nat)) (leq zero x))"),
    (
        "addMonoton-0",
        "(forall ((x nat) (y nat) (z nat)) (=> (leq y z) (leq (add x y) (add x z))))",
    ),
    (
        "addMonoton-1",
        "(forall ((x nat) (y nat) (z nat)) (=> (leq y z) (leq (add y x) (add z x))))",
    ),
    (
        "addCommutId",
        "(forall ((x nat) (y nat)) (= (add x (s y)) (s (add x y))))",
    ),
    (
        "appendAssoc",
        "(forall ((xs list) (ys list) (zs list)) (= (append (append xs ys) zs) (append xs (append ys zs))))",
    ),
    (
        "appendMonoton",
        "(forall ((xs list) (ys list)) (pref xs (append xs ys)))",
    ),
    ("allEqRefl", "(forall ((xs list)) (allEq xs xs))"),
    (
        "allEqDefsEquality",
        "(forall ((xs list) (ys list)) (<=> (allEq xs ys) (= xs ys)))",
    ),
    ("revSelfInvers", "(forall ((xs list)) (= (rev (rev xs)) xs))"),
    (
        "revAppend-0",
        "(forall ((xs list) (ys list)) (= (rev (append xs ys)) (append (rev ys) (rev xs))))",
    ),
    (
        "revAppend-1",
        "(forall ((x nat) (xs list)) (= (rev (append xs (cons x nil))) (cons x (rev xs))))",
    ),
    ("revsEqual", "(forall ((xs list)) (= (rev xs) (qrev xs nil)))"),
];

/// One case per base axiom: prove the reflective version of the axiom in
/// the reflective extension.
pub fn gen_refl0(
    theory_name: &str,
    base: &Theory,
    config: &ReflectionConfig,
) -> Result<Vec<BenchmarkCase>, BenchError> {
    let ext = reflective_extension(base, config)?;
    let mut out = Vec::with_capacity(base.axioms.len());
    for (i, ax) in base.axioms.iter().enumerate() {
        let id = format!("{theory_name}-ax{i}");
        let conjecture = truth_conjecture(&ax.formula, &ext.map)?;
        let mut theory = ext.theory.clone();
        theory.conjectures = vec![NamedFormula::new(id.clone(), conjecture)];
        out.push(BenchmarkCase {
            stem: id.clone(),
            id,
            family: Family::Refl0,
            theory,
            source_formula: ax.formula.clone(),
            provenance: Provenance::PaperNamed,
        });
    }
    Ok(out)
}

/// The reflective-consequence suite over `base` (normally
/// [`crate::refl1_base`]). Every reconstructed conjecture must survive the
/// bounded standard-model sweep.
pub fn gen_refl1(
    base: &Theory,
    config: &ReflectionConfig,
) -> Result<Vec<BenchmarkCase>, BenchError> {
    let ext = reflective_extension(base, config)?;
    let mut out = Vec::with_capacity(REFL1_CASES.len());
    for (id, src) in REFL1_CASES {
        let formula = parse_formula_str(src, &base.signature).map_err(|e| match e {
            FrontendError::Parse { msg, .. } => BenchError::MissingVocabulary {
                case: id.to_string(),
                symbol: msg,
            },
            other => BenchError::Frontend(other),
        })?;
        let case = BenchmarkCase {
            id: id.to_string(),
            stem: id.to_string(),
            family: Family::Refl1,
            theory: Theory::default(),
            source_formula: formula.clone(),
            provenance: Provenance::Reconstructed,
        };
        reject_if_invalid(&case)?;
        let conjecture = truth_conjecture(&formula, &ext.map)?;
        let mut theory = ext.theory.clone();
        theory.conjectures = vec![NamedFormula::new(id.to_string(), conjecture)];
        out.push(BenchmarkCase { theory, ..case });
    }
    Ok(out)
}

/// The induction suite over `base` (normally the `N+L+Ind` built-in): per
/// stem one native-induction case and one case over the reflective
/// inductive extension.
pub fn gen_ind(base: &Theory, config: &ReflectionConfig) -> Result<Vec<BenchmarkCase>, BenchError> {
    if base.datatypes.is_empty() {
        return Err(BenchError::Reflection(
            reflect_core::reflection::ReflectionError::NoDatatypes,
        ));
    }
    let ext = reflective_inductive_extension(base, config)?;
    let mut out = Vec::with_capacity(2 * IND_CASES.len());
    for (stem, src) in IND_CASES {
        let formula = parse_formula_str(src, &base.signature).map_err(|e| match e {
            FrontendError::Parse { msg, .. } => BenchError::MissingVocabulary {
                case: stem.to_string(),
                symbol: msg,
            },
            other => BenchError::Frontend(other),
        })?;

        let mut native_theory = base.clone();
        native_theory.conjectures =
            vec![NamedFormula::new(format!("{stem}-native"), formula.clone())];
        let native = BenchmarkCase {
            id: format!("{stem}-native"),
            stem: stem.to_string(),
            family: Family::IndNative,
            theory: native_theory,
            source_formula: formula.clone(),
            provenance: Provenance::Reconstructed,
        };
        reject_if_invalid(&native)?;

        let conjecture = truth_conjecture(&formula, &ext.map)?;
        let mut refl_theory = ext.theory.clone();
        refl_theory.conjectures =
            vec![NamedFormula::new(format!("{stem}-refl"), conjecture)];
        let reflective = BenchmarkCase {
            id: format!("{stem}-refl"),
            stem: stem.to_string(),
            family: Family::IndReflective,
            theory: refl_theory,
            source_formula: formula,
            provenance: Provenance::Reconstructed,
        };
        out.push(native);
        out.push(reflective);
    }
    Ok(out)
}

/// Sweep the case's base-level formula on the bounded standard model.
pub fn validate_case(case: &BenchmarkCase) -> Result<CheckReport, BenchError> {
    let model = StandardModel::default();
    let mut report = CheckReport {
        checked: 1,
        violations: Vec::new(),
    };
    if let Some(witness) = model.find_counterexample(&case.source_formula)? {
        report.violations.push(Violation {
            claim: case.id.clone(),
            witness,
        });
    }
    Ok(report)
}

fn reject_if_invalid(case: &BenchmarkCase) -> Result<(), BenchError> {
    let report = validate_case(case)?;
    if let Some(v) = report.violations.first() {
        return Err(BenchError::ValidationFailed {
            case: case.id.clone(),
            witness: v.witness.clone(),
        });
    }
    Ok(())
}

/// Serialise one case. Native-induction cases declare their datatypes
/// natively, which only the SMT-LIB target can express.
pub fn emit_case(
    case: &BenchmarkCase,
    format: TargetFormat,
) -> Result<(String, String), FrontendError> {
    let mut problem = ProblemFile::new(case.theory.clone(), case.id.clone(), format);
    if case.family == Family::IndNative {
        problem = problem.with_native_datatypes();
    }
    let content = emit_problem(&problem)?;
    Ok((format!("{}.{}", case.id, format.extension()), content))
}

/// An emitted suite: file contents plus the manifest. Cases a serializer
/// rejects are recorded in the manifest instead of producing a file.
#[derive(Debug, Clone, Default)]
pub struct SuiteFiles {
    pub files: Vec<(String, String)>,
    pub manifest_csv: String,
}

/// Emit every case in id order and build the manifest.
pub fn emit_suite(cases: &[BenchmarkCase], format: TargetFormat) -> SuiteFiles {
    let mut sorted: Vec<&BenchmarkCase> = cases.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    let mut files = Vec::new();
    let mut manifest = String::from("id,family,provenance,file\n");
    for case in sorted {
        match emit_case(case, format) {
            Ok((name, content)) => {
                manifest.push_str(&format!(
                    "{},{},{},{}\n",
                    case.id, case.family, case.provenance, name
                ));
                files.push((name, content));
            }
            Err(e) => {
                manifest.push_str(&format!(
                    "{},{},{},\"rejected: {}\"\n",
                    case.id, case.family, case.provenance, e
                ));
            }
        }
    }
    SuiteFiles {
        files,
        manifest_csv: manifest,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{builtin_theory, refl1_base, IND_THEORY, LIST_THEORY, NAT_THEORY};

    fn config() -> ReflectionConfig {
        ReflectionConfig::default()
    }

    #[test]
    fn refl0_ids_follow_the_axiom_indices() {
        let base = builtin_theory(NAT_THEORY).unwrap();
        let cases = gen_refl0(NAT_THEORY, &base, &config()).unwrap();
        assert_eq!(cases.len(), 6);
        assert_eq!(cases[0].id, "N+Leq+Add+Mul-ax0");
        assert_eq!(cases[5].id, "N+Leq+Add+Mul-ax5");
        let list = builtin_theory(LIST_THEORY).unwrap();
        let cases = gen_refl0(LIST_THEORY, &list, &config()).unwrap();
        assert_eq!(cases.len(), 5);
        assert_eq!(cases[4].id, "N+L+Pref+App-ax4");
    }

    #[test]
    fn axiomless_theory_yields_no_cases() {
        let mut base = builtin_theory(NAT_THEORY).unwrap();
        base.axioms.clear();
        assert!(gen_refl0("empty", &base, &config()).unwrap().is_empty());
    }

    #[test]
    fn refl1_produces_the_twenty_cases() {
        let cases = gen_refl1(&refl1_base(), &config()).unwrap();
        assert_eq!(cases.len(), 20);
        let ids: Vec<&str> = cases.iter().map(|c| c.id.as_str()).collect();
        assert!(ids.contains(&"eqRefl"));
        assert!(ids.contains(&"excludedMiddle-1"));
        assert!(ids.contains(&"existsNil"));
        for case in &cases {
            assert!(validate_case(case).unwrap().is_clean(), "{}", case.id);
            assert_eq!(case.theory.conjectures.len(), 1);
        }
    }

    #[test]
    fn refl1_needs_the_vocabulary() {
        let nat_only = builtin_theory(NAT_THEORY).unwrap();
        assert!(matches!(
            gen_refl1(&nat_only, &config()),
            Err(BenchError::MissingVocabulary { .. })
        ));
    }

    #[test]
    fn ind_produces_forty_six_cases_in_pairs() {
        let base = builtin_theory(IND_THEORY).unwrap();
        let cases = gen_ind(&base, &config()).unwrap();
        assert_eq!(cases.len(), 46);
        let stems: std::collections::BTreeSet<&str> =
            cases.iter().map(|c| c.stem.as_str()).collect();
        assert_eq!(stems.len(), 23);
        for stem in &stems {
            let pair: Vec<&BenchmarkCase> =
                cases.iter().filter(|c| c.stem == *stem).collect();
            assert_eq!(pair.len(), 2);
            assert!(pair.iter().any(|c| c.family == Family::IndNative));
            assert!(pair.iter().any(|c| c.family == Family::IndReflective));
        }
    }

    #[test]
    fn ind_requires_datatypes() {
        let mut base = builtin_theory(IND_THEORY).unwrap();
        base.datatypes.clear();
        assert!(gen_ind(&base, &config()).is_err());
    }

    #[test]
    fn wrong_reconstruction_is_rejected() {
        let base = builtin_theory(NAT_THEORY).unwrap();
        let bad = parse_formula_str(
            "(forall ((x nat) (y nat)) (= (add x y) x))",
            &base.signature,
        )
        .unwrap();
        let case = BenchmarkCase {
            id: "bogus".into(),
            stem: "bogus".into(),
            family: Family::IndNative,
            theory: base.clone(),
            source_formula: bad,
            provenance: Provenance::Reconstructed,
        };
        let report = validate_case(&case).unwrap();
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].witness.contains("=0"));
        assert!(report.violations[0].witness.contains("=1"));
    }

    #[test]
    fn zero_min_passes() {
        let base = builtin_theory(IND_THEORY).unwrap();
        let phi = parse_formula_str("(forall ((x nat)) (leq zero x))", &base.signature).unwrap();
        let case = BenchmarkCase {
            id: "zeroMin".into(),
            stem: "zeroMin".into(),
            family: Family::IndNative,
            theory: base,
            source_formula: phi,
            provenance: Provenance::Reconstructed,
        };
        assert!(validate_case(&case).unwrap().is_clean());
    }

    #[test]
    fn suite_emission_skips_untranslatable_cases() {
        let base = builtin_theory(IND_THEORY).unwrap();
        let cases = gen_ind(&base, &config()).unwrap();
        let tptp = emit_suite(&cases, TargetFormat::Tptp);
        // Native cases cannot be expressed in TFF: recorded, not emitted.
        assert_eq!(tptp.files.len(), 23);
        assert_eq!(tptp.manifest_csv.matches("rejected:").count(), 23);
        let smt = emit_suite(&cases, TargetFormat::Smtlib2);
        assert_eq!(smt.files.len(), 46);
        assert!(!smt.manifest_csv.contains("rejected:"));
    }

    #[test]
    fn reflective_inductive_cases_carry_the_induction_axiom() {
        let base = builtin_theory(IND_THEORY).unwrap();
        let cases = gen_ind(&base, &config()).unwrap();
        for case in cases.iter().filter(|c| c.family == Family::IndReflective) {
            for dt in &base.datatypes {
                let expected = format!("ax_ind_{}", dt.sort.name);
                assert_eq!(
                    case.theory
                        .axioms
                        .iter()
                        .filter(|a| a.name == expected)
                        .count(),
                    1,
                    "{}",
                    case.id
                );
            }
        }
    }
}
