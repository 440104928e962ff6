//! Finite models: explicit carriers and total interpretation tables, with
//! standard Tarski evaluation.

use std::collections::BTreeMap;

use crate::logic::{Formula, Term, Theory, Variable};

use super::SemanticsError;

/// Total function table in mixed-radix layout: `shape` holds the argument
/// carrier sizes, `data` the value for every argument tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuncTable {
    pub shape: Vec<usize>,
    pub data: Vec<usize>,
}

impl FuncTable {
    pub fn new(shape: Vec<usize>, f: impl Fn(&[usize]) -> usize) -> Self {
        let mut data = Vec::with_capacity(shape.iter().product::<usize>().max(1));
        let mut args = vec![0usize; shape.len()];
        loop {
            data.push(f(&args));
            if !next_tuple(&mut args, &shape) {
                break;
            }
        }
        FuncTable { shape, data }
    }

    pub fn get(&self, args: &[usize]) -> usize {
        self.data[index_of(args, &self.shape)]
    }
}

/// Total relation table in the same layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredTable {
    pub shape: Vec<usize>,
    pub data: Vec<bool>,
}

impl PredTable {
    pub fn new(shape: Vec<usize>, p: impl Fn(&[usize]) -> bool) -> Self {
        let mut data = Vec::with_capacity(shape.iter().product::<usize>().max(1));
        let mut args = vec![0usize; shape.len()];
        loop {
            data.push(p(&args));
            if !next_tuple(&mut args, &shape) {
                break;
            }
        }
        PredTable { shape, data }
    }

    pub fn get(&self, args: &[usize]) -> bool {
        self.data[index_of(args, &self.shape)]
    }
}

fn index_of(args: &[usize], shape: &[usize]) -> usize {
    debug_assert_eq!(args.len(), shape.len());
    let mut idx = 0usize;
    for (a, s) in args.iter().zip(shape) {
        debug_assert!(a < s);
        idx = idx * s + a;
    }
    idx
}

/// Advance a mixed-radix tuple; false once it wraps to all zeros.
pub(crate) fn next_tuple(args: &mut [usize], shape: &[usize]) -> bool {
    for i in (0..args.len()).rev() {
        args[i] += 1;
        if args[i] < shape[i] {
            return true;
        }
        args[i] = 0;
    }
    false
}

/// Variable assignment; total over the free variables of whatever it is
/// used to evaluate.
pub type Assignment = BTreeMap<Variable, usize>;

/// A finite model of a theory: per-sort carrier sizes (elements are
/// `0..size`) plus total tables for every function and predicate. Every
/// axiom of the theory is checked to hold at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModel {
    pub theory: Theory,
    carriers: BTreeMap<String, usize>,
    funcs: BTreeMap<String, FuncTable>,
    preds: BTreeMap<String, PredTable>,
}

impl FiniteModel {
    pub fn new(
        theory: Theory,
        carriers: BTreeMap<String, usize>,
        funcs: BTreeMap<String, FuncTable>,
        preds: BTreeMap<String, PredTable>,
    ) -> Result<Self, SemanticsError> {
        for sort in &theory.signature.sorts {
            match carriers.get(&sort.name) {
                Some(0) | None => {
                    return Err(SemanticsError::MissingCarrier(sort.name.clone()));
                }
                Some(_) => {}
            }
        }
        for f in &theory.signature.funcs {
            let table = funcs
                .get(&f.name)
                .ok_or_else(|| SemanticsError::BadTable(f.name.clone()))?;
            let expected_shape: Vec<usize> =
                f.domain.iter().map(|s| carriers[&s.name]).collect();
            let size: usize = expected_shape.iter().product::<usize>().max(1);
            if table.shape != expected_shape || table.data.len() != size {
                return Err(SemanticsError::BadTable(f.name.clone()));
            }
            let codomain = carriers[&f.codomain.name];
            if let Some(&v) = table.data.iter().find(|v| **v >= codomain) {
                return Err(SemanticsError::ElementOutOfRange {
                    sort: f.codomain.name.clone(),
                    element: v,
                });
            }
        }
        for p in &theory.signature.preds {
            let table = preds
                .get(&p.name)
                .ok_or_else(|| SemanticsError::BadTable(p.name.clone()))?;
            let expected_shape: Vec<usize> =
                p.domain.iter().map(|s| carriers[&s.name]).collect();
            let size: usize = expected_shape.iter().product::<usize>().max(1);
            if table.shape != expected_shape || table.data.len() != size {
                return Err(SemanticsError::BadTable(p.name.clone()));
            }
        }
        let model = FiniteModel {
            theory,
            carriers,
            funcs,
            preds,
        };
        for ax in &model.theory.axioms {
            if !holds(&model, &Assignment::new(), &ax.formula)? {
                return Err(SemanticsError::AxiomViolated(ax.name.clone()));
            }
        }
        Ok(model)
    }

    pub fn carrier(&self, sort_name: &str) -> usize {
        self.carriers[sort_name]
    }

    pub fn func_table(&self, name: &str) -> &FuncTable {
        &self.funcs[name]
    }

    pub fn pred_table(&self, name: &str) -> &PredTable {
        &self.preds[name]
    }
}

/// Bottom-up evaluation of a term to a carrier element.
pub fn eval_term(m: &FiniteModel, a: &Assignment, t: &Term) -> Result<usize, SemanticsError> {
    match t {
        Term::Var(v) => a
            .get(v)
            .copied()
            .ok_or_else(|| SemanticsError::MissingAssignment(v.to_string())),
        Term::App(f, args) => {
            let mut vals = Vec::with_capacity(args.len());
            for arg in args {
                vals.push(eval_term(m, a, arg)?);
            }
            Ok(m.funcs[&f.name].get(&vals))
        }
    }
}

/// Tarski satisfaction; quantifiers enumerate the carrier of their sort.
pub fn holds(m: &FiniteModel, a: &Assignment, phi: &Formula) -> Result<bool, SemanticsError> {
    match phi {
        Formula::Bottom => Ok(false),
        Formula::Equals(l, r) => Ok(eval_term(m, a, l)? == eval_term(m, a, r)?),
        Formula::Atom(p, args) => {
            let mut vals = Vec::with_capacity(args.len());
            for arg in args {
                vals.push(eval_term(m, a, arg)?);
            }
            Ok(m.preds[&p.name].get(&vals))
        }
        Formula::Not(f) => Ok(!holds(m, a, f)?),
        Formula::Or(l, r) => Ok(holds(m, a, l)? || holds(m, a, r)?),
        Formula::And(l, r) => Ok(holds(m, a, l)? && holds(m, a, r)?),
        Formula::Implies(l, r) => Ok(!holds(m, a, l)? || holds(m, a, r)?),
        Formula::Iff(l, r) => Ok(holds(m, a, l)? == holds(m, a, r)?),
        Formula::Forall(v, f) => {
            let n = m.carrier(&v.sort.name);
            let mut a = a.clone();
            for x in 0..n {
                a.insert(v.clone(), x);
                if !holds(m, &a, f)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Exists(v, f) => {
            let n = m.carrier(&v.sort.name);
            let mut a = a.clone();
            for x in 0..n {
                a.insert(v.clone(), x);
                if holds(m, &a, f)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{desugar, FuncSym, PredSym, Signature, Sort};
    use crate::semantics::models::zk_model;

    fn nat() -> Sort {
        Sort::new("nat")
    }

    fn vocab_theory() -> Theory {
        Theory {
            signature: Signature {
                sorts: vec![nat()],
                funcs: vec![
                    FuncSym::constant("zero", nat()),
                    FuncSym::new("s", vec![nat()], nat()),
                    FuncSym::new("add", vec![nat(), nat()], nat()),
                    FuncSym::new("mul", vec![nat(), nat()], nat()),
                ],
                preds: vec![PredSym::new("leq", vec![nat(), nat()])],
            },
            ..Default::default()
        }
    }

    #[test]
    fn double_successor_in_z2_is_identity() {
        let m = zk_model(&vocab_theory(), 2).unwrap();
        let s = m.theory.signature.func("s").unwrap().clone();
        let zero = m.theory.signature.func("zero").unwrap().clone();
        let t = Term::app(&s, vec![Term::app(&s, vec![Term::constant(&zero)])]);
        assert_eq!(eval_term(&m, &Assignment::new(), &t).unwrap(), 0);
    }

    #[test]
    fn addition_mod_two() {
        let m = zk_model(&vocab_theory(), 2).unwrap();
        let s = m.theory.signature.func("s").unwrap().clone();
        let zero = m.theory.signature.func("zero").unwrap().clone();
        let add = m.theory.signature.func("add").unwrap().clone();
        let one = Term::app(&s, vec![Term::constant(&zero)]);
        let t = Term::app(&add, vec![one.clone(), one]);
        assert_eq!(eval_term(&m, &Assignment::new(), &t).unwrap(), 0);
    }

    #[test]
    fn variable_lookup_uses_the_assignment() {
        let m = zk_model(&vocab_theory(), 2).unwrap();
        let x = Variable::new(nat(), 0);
        let mut a = Assignment::new();
        a.insert(x.clone(), 1);
        assert_eq!(eval_term(&m, &a, &Term::var(x)).unwrap(), 1);
    }

    #[test]
    fn missing_assignment_is_an_error() {
        let m = zk_model(&vocab_theory(), 2).unwrap();
        let x = Variable::new(nat(), 0);
        assert!(matches!(
            eval_term(&m, &Assignment::new(), &Term::var(x)),
            Err(SemanticsError::MissingAssignment(_))
        ));
    }

    #[test]
    fn reflexivity_holds_everywhere() {
        for k in 1..=3 {
            let m = zk_model(&vocab_theory(), k).unwrap();
            let x = Variable::new(nat(), 0);
            let phi = Formula::forall(
                x.clone(),
                Formula::equals(Term::var(x.clone()), Term::var(x.clone())),
            );
            assert!(holds(&m, &Assignment::new(), &phi).unwrap());
        }
    }

    #[test]
    fn successor_fixpoint_freeness_depends_on_the_modulus() {
        let x = Variable::new(nat(), 0);
        let phi = |m: &FiniteModel| {
            let s = m.theory.signature.func("s").unwrap().clone();
            Formula::forall(
                x.clone(),
                Formula::not(Formula::equals(
                    Term::app(&s, vec![Term::var(x.clone())]),
                    Term::var(x.clone()),
                )),
            )
        };
        let m2 = zk_model(&vocab_theory(), 2).unwrap();
        assert!(holds(&m2, &Assignment::new(), &phi(&m2)).unwrap());
        let m1 = zk_model(&vocab_theory(), 1).unwrap();
        assert!(!holds(&m1, &Assignment::new(), &phi(&m1)).unwrap());
    }

    #[test]
    fn bottom_never_holds() {
        let m = zk_model(&vocab_theory(), 2).unwrap();
        assert!(!holds(&m, &Assignment::new(), &Formula::Bottom).unwrap());
    }

    #[test]
    fn construction_validates_axioms() {
        let mut t = vocab_theory();
        let s = t.signature.func("s").unwrap().clone();
        let x = Variable::new(nat(), 0);
        t.axioms.push(crate::logic::NamedFormula::new(
            "bad",
            Formula::forall(
                x.clone(),
                Formula::not(Formula::equals(
                    Term::app(&s, vec![Term::var(x.clone())]),
                    Term::var(x),
                )),
            ),
        ));
        // s has a fixpoint in Z/1, so the axiom must be rejected there.
        assert!(matches!(
            zk_model(&t, 1),
            Err(SemanticsError::AxiomViolated(n)) if n == "bad"
        ));
        assert!(zk_model(&t, 2).is_ok());
    }

    #[test]
    fn desugaring_preserves_truth_on_small_models() {
        use crate::gen::FormulaGen;
        let t = vocab_theory();
        for k in 1..=3 {
            let m = zk_model(&t, k).unwrap();
            let mut gen = FormulaGen::new(&t.signature, 1234 + k as u64);
            let batch = gen.distinct_closed(40, 3);
            let x = Variable::new(nat(), 0);
            let mut sugared = Vec::new();
            for pair in batch.chunks(2) {
                if let [p, q] = pair {
                    sugared.push(Formula::and(p.clone(), q.clone()));
                    sugared.push(Formula::implies(p.clone(), q.clone()));
                    sugared.push(Formula::iff(p.clone(), q.clone()));
                }
            }
            sugared.push(Formula::exists(
                x.clone(),
                Formula::equals(Term::var(x.clone()), Term::var(x.clone())),
            ));
            for phi in batch.iter().chain(&sugared) {
                let a = Assignment::new();
                assert_eq!(
                    holds(&m, &a, phi).unwrap(),
                    holds(&m, &a, &desugar(phi)).unwrap(),
                    "{phi}"
                );
            }
        }
    }
}
