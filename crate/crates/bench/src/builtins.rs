//! Built-in base theories.
//!
//! `N+Leq+Add+Mul` and `N+L+Pref+App` are the two axiom benchmarks; the
//! induction suite runs over the richer `N+L+Ind`, which adds reverse,
//! accumulator reverse and a recursive list-equality predicate. Axiom
//! texts follow the standard primitive-recursive presentations; every
//! axiom is validated on the bounded standard model by the test suite.

use reflect_core::logic::{NamedFormula, Theory};
use reflect_frontend::parse_theory;

use crate::BenchError;

pub const NAT_THEORY: &str = "N+Leq+Add+Mul";
pub const LIST_THEORY: &str = "N+L+Pref+App";
pub const IND_THEORY: &str = "N+L+Ind";

const NAT_SRC: &str = "\
(sort nat)
(fun zero () nat)
(fun s (nat) nat)
(fun add (nat nat) nat)
(fun mul (nat nat) nat)
(pred leq (nat nat))
(datatype nat (zero) (s nat))
(axiom (forall ((y nat)) (leq zero y)))
(axiom (forall ((x nat) (y nat)) (<=> (leq (s x) (s y)) (leq x y))))
(axiom (forall ((y nat)) (= (add zero y) y)))
(axiom (forall ((x nat) (y nat)) (= (add (s x) y) (s (add x y)))))
(axiom (forall ((y nat)) (= (mul zero y) zero)))
(axiom (forall ((x nat) (y nat)) (= (mul (s x) y) (add (mul x y) y))))
";

const LIST_SRC: &str = "\
(sort nat)
(sort list)
(fun zero () nat)
(fun s (nat) nat)
(fun nil () list)
(fun cons (nat list) list)
(fun append (list list) list)
(pred pref (list list))
(datatype nat (zero) (s nat))
(datatype list (nil) (cons nat list))
(axiom (forall ((ys list)) (pref nil ys)))
(axiom (forall ((x nat) (xs list)) (not (pref (cons x xs) nil))))
(axiom (forall ((x nat) (y nat) (xs list) (ys list))
  (=> (and (= x y) (pref xs ys)) (pref (cons x xs) (cons y ys)))))
(axiom (forall ((ys list)) (= (append nil ys) ys)))
(axiom (forall ((x nat) (xs list) (ys list))
  (= (append (cons x xs) ys) (cons x (append xs ys)))))
";

const IND_SRC: &str = "\
(sort nat)
(sort list)
(fun zero () nat)
(fun s (nat) nat)
(fun add (nat nat) nat)
(fun mul (nat nat) nat)
(fun nil () list)
(fun cons (nat list) list)
(fun append (list list) list)
(fun rev (list) list)
(fun qrev (list list) list)
(pred leq (nat nat))
(pred pref (list list))
(pred allEq (list list))
(datatype nat (zero) (s nat))
(datatype list (nil) (cons nat list))
(axiom (forall ((y nat)) (leq zero y)))
(axiom (forall ((x nat)) (not (leq (s x) zero))))
(axiom (forall ((x nat) (y nat)) (<=> (leq (s x) (s y)) (leq x y))))
(axiom (forall ((y nat)) (= (add zero y) y)))
(axiom (forall ((x nat) (y nat)) (= (add (s x) y) (s (add x y)))))
(axiom (forall ((y nat)) (= (mul zero y) zero)))
(axiom (forall ((x nat) (y nat)) (= (mul (s x) y) (add (mul x y) y))))
(axiom (forall ((ys list)) (= (append nil ys) ys)))
(axiom (forall ((x nat) (xs list) (ys list))
  (= (append (cons x xs) ys) (cons x (append xs ys)))))
(axiom (= (rev nil) nil))
(axiom (forall ((x nat) (xs list))
  (= (rev (cons x xs)) (append (rev xs) (cons x nil)))))
(axiom (forall ((acc list)) (= (qrev nil acc) acc)))
(axiom (forall ((x nat) (xs list) (acc list))
  (= (qrev (cons x xs) acc) (qrev xs (cons x acc)))))
(axiom (forall ((ys list)) (pref nil ys)))
(axiom (forall ((x nat) (xs list)) (not (pref (cons x xs) nil))))
(axiom (forall ((x nat) (y nat) (xs list) (ys list))
  (=> (and (= x y) (pref xs ys)) (pref (cons x xs) (cons y ys)))))
(axiom (allEq nil nil))
(axiom (forall ((y nat) (ys list)) (not (allEq nil (cons y ys)))))
(axiom (forall ((x nat) (xs list)) (not (allEq (cons x xs) nil))))
(axiom (forall ((x nat) (y nat) (xs list) (ys list))
  (<=> (allEq (cons x xs) (cons y ys)) (and (= x y) (allEq xs ys)))))
";

/// Names of the shipped base theories.
pub fn builtin_names() -> [&'static str; 3] {
    [NAT_THEORY, LIST_THEORY, IND_THEORY]
}

/// Load a built-in theory by name.
pub fn builtin_theory(name: &str) -> Result<Theory, BenchError> {
    let src = match name {
        NAT_THEORY => NAT_SRC,
        LIST_THEORY => LIST_SRC,
        IND_THEORY => IND_SRC,
        other => return Err(BenchError::UnknownBuiltin(other.to_string())),
    };
    Ok(parse_theory(src).expect("built-in theory sources parse"))
}

/// Union of two theories; identically-declared symbols merge, anything else
/// conflicts. Axioms are renamed positionally.
pub fn merge_theories(a: &Theory, b: &Theory) -> Result<Theory, BenchError> {
    let mut out = a.clone();
    for s in &b.signature.sorts {
        match out.signature.sort(&s.name) {
            None => out.signature.sorts.push(s.clone()),
            Some(existing) if existing == s => {}
            Some(_) => return Err(BenchError::MergeConflict(s.name.clone())),
        }
    }
    for f in &b.signature.funcs {
        match out.signature.func(&f.name) {
            None => out.signature.funcs.push(f.clone()),
            Some(existing) if existing == f => {}
            Some(_) => return Err(BenchError::MergeConflict(f.name.clone())),
        }
    }
    for p in &b.signature.preds {
        match out.signature.pred(&p.name) {
            None => out.signature.preds.push(p.clone()),
            Some(existing) if existing == p => {}
            Some(_) => return Err(BenchError::MergeConflict(p.name.clone())),
        }
    }
    for dt in &b.datatypes {
        match out.datatype_of(&dt.sort) {
            None => out.datatypes.push(dt.clone()),
            Some(existing) if existing == dt => {}
            Some(_) => return Err(BenchError::MergeConflict(dt.sort.name.clone())),
        }
    }
    let mut axioms: Vec<_> = a.axioms.iter().map(|ax| ax.formula.clone()).collect();
    for ax in &b.axioms {
        if !axioms.contains(&ax.formula) {
            axioms.push(ax.formula.clone());
        }
    }
    out.axioms = axioms
        .into_iter()
        .enumerate()
        .map(|(i, f)| NamedFormula::new(format!("ax{i}"), f))
        .collect();
    out.conjectures.extend(b.conjectures.iter().cloned());
    Ok(out)
}

/// The base theory the reflective-consequence suite runs over: the union of
/// the two axiom-benchmark theories.
pub fn refl1_base() -> Theory {
    let nat = builtin_theory(NAT_THEORY).expect("built-in");
    let list = builtin_theory(LIST_THEORY).expect("built-in");
    merge_theories(&nat, &list).expect("built-ins merge cleanly")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse_with_expected_axiom_counts() {
        assert_eq!(builtin_theory(NAT_THEORY).unwrap().axioms.len(), 6);
        assert_eq!(builtin_theory(LIST_THEORY).unwrap().axioms.len(), 5);
        assert_eq!(builtin_theory(IND_THEORY).unwrap().axioms.len(), 20);
        assert!(builtin_theory("nope").is_err());
    }

    #[test]
    fn merged_base_covers_both_vocabularies() {
        let t = refl1_base();
        for sym in ["zero", "s", "add", "mul", "nil", "cons", "append"] {
            assert!(t.signature.func(sym).is_some(), "{sym}");
        }
        assert!(t.signature.pred("leq").is_some());
        assert!(t.signature.pred("pref").is_some());
        assert_eq!(t.datatypes.len(), 2);
        // Shared axioms are never duplicated; these two theories share none.
        assert_eq!(t.axioms.len(), 11);
        assert_eq!(reflect_core::check_theory(&t), vec![]);
    }
}
