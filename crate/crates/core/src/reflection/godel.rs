//! Structural encoding of base-language syntax as terms of the extension,
//! its inverse, and the truth-predicate form of a conjecture.

use crate::logic::{desugar, Formula, Term, Variable};

use super::signature::ReflectionMap;
use super::ReflectionError;

/// Either kind of syntax, for the operations that accept both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Encoded {
    Term(Term),
    Formula(Formula),
}

/// Encode a core formula as a ground term of the formula sort.
///
/// Fails with `NotCore` on sugared connectives and with `UnknownSymbol` on
/// symbols outside the base signature.
pub fn godel_encode(phi: &Formula, map: &ReflectionMap) -> Result<Term, ReflectionError> {
    match phi {
        Formula::Bottom => Ok(Term::constant(map.refl_bot())),
        Formula::Equals(l, r) => {
            let sort = l.sort().clone();
            check_base_sort(&sort, map)?;
            Ok(Term::app(
                map.refl_eq(&sort),
                vec![encode_term(l, map)?, encode_term(r, map)?],
            ))
        }
        Formula::Atom(p, args) => {
            let lifted = map
                .lifted_pred(p)
                .ok_or_else(|| ReflectionError::UnknownSymbol(p.name.clone()))?;
            let encoded = args
                .iter()
                .map(|a| encode_term(a, map))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Term::app(lifted, encoded))
        }
        Formula::Not(f) => Ok(Term::app(map.refl_not(), vec![godel_encode(f, map)?])),
        Formula::Or(l, r) => Ok(Term::app(
            map.refl_or(),
            vec![godel_encode(l, map)?, godel_encode(r, map)?],
        )),
        Formula::Forall(v, f) => {
            check_base_sort(&v.sort, map)?;
            Ok(Term::app(
                map.refl_forall(&v.sort),
                vec![encode_var(v, map), godel_encode(f, map)?],
            ))
        }
        Formula::And(..) | Formula::Implies(..) | Formula::Iff(..) | Formula::Exists(..) => {
            Err(ReflectionError::NotCore)
        }
    }
}

/// Encode a base term as a term of the matching reflected term sort.
pub fn encode_term(t: &Term, map: &ReflectionMap) -> Result<Term, ReflectionError> {
    match t {
        Term::Var(v) => {
            check_base_sort(&v.sort, map)?;
            Ok(Term::app(map.inj(&v.sort), vec![encode_var(v, map)]))
        }
        Term::App(f, args) => {
            let lifted = map
                .lifted_func(f)
                .ok_or_else(|| ReflectionError::UnknownSymbol(f.name.clone()))?;
            let encoded = args
                .iter()
                .map(|a| encode_term(a, map))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Term::app(lifted, encoded))
        }
    }
}

/// The variable `x_i` becomes `next^i(v0)` of the matching variable sort.
pub fn encode_var(v: &Variable, map: &ReflectionMap) -> Term {
    let mut t = Term::constant(map.v0(&v.sort));
    for _ in 0..v.index {
        t = Term::app(map.next(&v.sort), vec![t]);
    }
    t
}

/// Decode an encoding back into the base syntax it denotes.
///
/// Inverse of [`godel_encode`]/[`encode_term`]; anything outside the
/// constructor fragment (environment or evaluation symbols, base symbols,
/// variables) is rejected.
pub fn godel_decode(t: &Term, map: &ReflectionMap) -> Result<Encoded, ReflectionError> {
    if t.sort() == map.form_sort() {
        Ok(Encoded::Formula(decode_formula(t, map)?))
    } else {
        Ok(Encoded::Term(decode_term(t, map)?))
    }
}

pub(crate) fn decode_formula(t: &Term, map: &ReflectionMap) -> Result<Formula, ReflectionError> {
    let Term::App(f, args) = t else {
        return Err(not_encoding(t));
    };
    if f == map.refl_bot() {
        return Ok(Formula::Bottom);
    }
    if f == map.refl_not() {
        return Ok(Formula::not(decode_formula(&args[0], map)?));
    }
    if f == map.refl_or() {
        return Ok(Formula::or(
            decode_formula(&args[0], map)?,
            decode_formula(&args[1], map)?,
        ));
    }
    for s in &map.base().sorts {
        if f == map.refl_eq(s) {
            return Ok(Formula::Equals(
                decode_term(&args[0], map)?,
                decode_term(&args[1], map)?,
            ));
        }
        if f == map.refl_forall(s) {
            return Ok(Formula::forall(
                decode_var(&args[0], map)?,
                decode_formula(&args[1], map)?,
            ));
        }
    }
    if let Some(p) = map.base_pred_of(&f.name) {
        let p = p.clone();
        let decoded = args
            .iter()
            .map(|a| decode_term(a, map))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Formula::Atom(p, decoded));
    }
    Err(not_encoding(t))
}

pub(crate) fn decode_term(t: &Term, map: &ReflectionMap) -> Result<Term, ReflectionError> {
    let Term::App(f, args) = t else {
        return Err(not_encoding(t));
    };
    for s in &map.base().sorts {
        if f == map.inj(s) {
            return Ok(Term::Var(decode_var(&args[0], map)?));
        }
    }
    if let Some(base) = map.base_func_of(&f.name) {
        let base = base.clone();
        let decoded = args
            .iter()
            .map(|a| decode_term(a, map))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Term::App(base, decoded));
    }
    Err(not_encoding(t))
}

pub(crate) fn decode_var(t: &Term, map: &ReflectionMap) -> Result<Variable, ReflectionError> {
    let mut index = 0usize;
    let mut cur = t;
    loop {
        let Term::App(f, args) = cur else {
            return Err(not_encoding(t));
        };
        for s in &map.base().sorts {
            if f == map.v0(s) {
                return Ok(Variable::new(s.clone(), index));
            }
        }
        let mut stepped = false;
        for s in &map.base().sorts {
            if f == map.next(s) {
                index += 1;
                cur = &args[0];
                stepped = true;
                break;
            }
        }
        if !stepped {
            return Err(not_encoding(t));
        }
    }
}

fn not_encoding(t: &Term) -> ReflectionError {
    ReflectionError::NotAnEncoding(t.to_string())
}

fn check_base_sort(sort: &crate::logic::Sort, map: &ReflectionMap) -> Result<(), ReflectionError> {
    if map.base().sort(&sort.name).is_none() {
        return Err(ReflectionError::UnknownSymbol(sort.name.clone()));
    }
    Ok(())
}

/// The assertion that a closed formula is satisfied in the empty
/// environment: `sat(empty, enc(phi))`, with `phi` desugared first.
pub fn truth_conjecture(phi: &Formula, map: &ReflectionMap) -> Result<Formula, ReflectionError> {
    let encoded = godel_encode(&desugar(phi), map)?;
    Ok(Formula::atom(
        map.sat(),
        vec![Term::constant(map.empty_env()), encoded],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::FormulaGen;
    use crate::logic::{FuncSym, PredSym, Signature, Sort};
    use crate::reflection::reflective_signature;

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

    #[test]
    fn variables_encode_as_injected_successor_chains() {
        let map = reflective_signature(&nat_sig()).unwrap();
        let x0 = Variable::new(nat(), 0);
        let enc = encode_term(&Term::Var(x0), &map).unwrap();
        assert_eq!(enc.to_string(), "rfl_inj_nat(rfl_v0_nat)");
        let x1 = Variable::new(nat(), 1);
        let enc = encode_term(&Term::Var(x1), &map).unwrap();
        assert_eq!(enc.to_string(), "rfl_inj_nat(rfl_next_nat(rfl_v0_nat))");
    }

    #[test]
    fn bottom_encodes_to_the_constant() {
        let map = reflective_signature(&nat_sig()).unwrap();
        let enc = godel_encode(&Formula::Bottom, &map).unwrap();
        assert_eq!(enc, Term::constant(map.refl_bot()));
        assert_eq!(
            godel_decode(&enc, &map).unwrap(),
            Encoded::Formula(Formula::Bottom)
        );
    }

    #[test]
    fn quantified_identity_composes_the_rules() {
        let map = reflective_signature(&nat_sig()).unwrap();
        let x1 = Variable::new(nat(), 1);
        let phi = Formula::forall(
            x1.clone(),
            Formula::equals(Term::Var(x1.clone()), Term::Var(x1.clone())),
        );
        let enc = godel_encode(&phi, &map).unwrap();
        assert_eq!(
            enc.to_string(),
            "rfl_all_nat(rfl_next_nat(rfl_v0_nat), \
             rfl_eq_nat(rfl_inj_nat(rfl_next_nat(rfl_v0_nat)), rfl_inj_nat(rfl_next_nat(rfl_v0_nat))))"
        );
        assert_eq!(godel_decode(&enc, &map).unwrap(), Encoded::Formula(phi));
    }

    #[test]
    fn sugared_input_is_rejected() {
        let map = reflective_signature(&nat_sig()).unwrap();
        let phi = Formula::and(Formula::Bottom, Formula::Bottom);
        assert_eq!(godel_encode(&phi, &map), Err(ReflectionError::NotCore));
    }

    #[test]
    fn foreign_symbols_are_rejected() {
        let map = reflective_signature(&nat_sig()).unwrap();
        let foreign = FuncSym::constant("ghost", nat());
        let phi = Formula::equals(Term::constant(&foreign), Term::constant(&foreign));
        assert!(matches!(
            godel_encode(&phi, &map),
            Err(ReflectionError::UnknownSymbol(n)) if n == "ghost"
        ));
    }

    #[test]
    fn decode_rejects_non_constructor_terms() {
        let map = reflective_signature(&nat_sig()).unwrap();
        let e = Term::constant(map.empty_env());
        let bad = Term::app(
            map.eval(&nat()),
            vec![e, Term::app(map.inj(&nat()), vec![Term::constant(map.v0(&nat()))])],
        );
        assert!(matches!(
            godel_decode(&bad, &map),
            Err(ReflectionError::NotAnEncoding(_))
        ));
    }

    #[test]
    fn round_trip_on_random_core_formulas() {
        let sig = nat_sig();
        let map = reflective_signature(&sig).unwrap();
        let mut gen = FormulaGen::new(&sig, 99);
        for phi in gen.distinct_closed(100, 5) {
            let enc = godel_encode(&phi, &map).unwrap();
            assert_eq!(enc.sort(), map.form_sort());
            assert_eq!(godel_decode(&enc, &map).unwrap(), Encoded::Formula(phi));
        }
    }

    #[test]
    fn truth_conjecture_wraps_the_encoding() {
        let map = reflective_signature(&nat_sig()).unwrap();
        let conj = truth_conjecture(&Formula::Bottom, &map).unwrap();
        assert_eq!(conj.to_string(), "rfl_sat(rfl_empty, rfl_false)");
        // Sugared inputs are desugared on the way in.
        let x0 = Variable::new(nat(), 0);
        let sugared = Formula::exists(
            x0.clone(),
            Formula::equals(Term::Var(x0.clone()), Term::Var(x0)),
        );
        assert!(truth_conjecture(&sugared, &map).is_ok());
    }
}
