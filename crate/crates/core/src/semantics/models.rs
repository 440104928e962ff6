//! Built-in model families for the bounded checks: cyclic arithmetic models
//! and truncated-list models.

use std::collections::BTreeMap;

use crate::logic::Theory;

use super::model::{FiniteModel, FuncTable, PredTable};
use super::SemanticsError;

/// The cyclic model `Z/k` of a nat-vocabulary theory.
///
/// `zero` is 0, `s` adds one modulo `k`, `add` and `mul` compute modulo `k`,
/// and `leq` is the total relation (the representative order would break the
/// successor-congruence axiom on the cycle). Any function or predicate
/// outside this vocabulary is rejected.
pub fn zk_model(theory: &Theory, k: usize) -> Result<FiniteModel, SemanticsError> {
    if k == 0 {
        return Err(SemanticsError::MissingCarrier("nat".into()));
    }
    let mut carriers = BTreeMap::new();
    for s in &theory.signature.sorts {
        carriers.insert(s.name.clone(), k);
    }
    let mut funcs = BTreeMap::new();
    for f in &theory.signature.funcs {
        let shape: Vec<usize> = f.domain.iter().map(|_| k).collect();
        let table = match f.name.as_str() {
            "zero" if f.arity() == 0 => FuncTable::new(shape, |_| 0),
            "s" if f.arity() == 1 => FuncTable::new(shape, |a| (a[0] + 1) % k),
            "add" if f.arity() == 2 => FuncTable::new(shape, |a| (a[0] + a[1]) % k),
            "mul" if f.arity() == 2 => FuncTable::new(shape, |a| (a[0] * a[1]) % k),
            _ => return Err(SemanticsError::UnknownBuiltin(f.name.clone())),
        };
        funcs.insert(f.name.clone(), table);
    }
    let mut preds = BTreeMap::new();
    for p in &theory.signature.preds {
        let shape: Vec<usize> = p.domain.iter().map(|_| k).collect();
        let table = match p.name.as_str() {
            "leq" if p.arity() == 2 => PredTable::new(shape, |_| true),
            _ => return Err(SemanticsError::UnknownBuiltin(p.name.clone())),
        };
        preds.insert(p.name.clone(), table);
    }
    FiniteModel::new(theory.clone(), carriers, funcs, preds)
}

/// A finite list model: the list carrier holds all lists over `Z/k` of
/// length at most `max_len`, `cons` and `append` truncate to that length
/// (keeping prefixes), and `pref` is the genuine prefix relation.
///
/// Truncation keeps the defining equations of `append` valid and keeps the
/// one-directional prefix axioms valid, which is what the bounded axiom
/// checks need.
pub fn truncated_list_model(
    theory: &Theory,
    k: usize,
    max_len: usize,
) -> Result<FiniteModel, SemanticsError> {
    if k == 0 || max_len == 0 {
        return Err(SemanticsError::MissingCarrier("list".into()));
    }
    // Lists enumerated by length, then lexicographically; index 0 is nil.
    let mut lists: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for l in &frontier {
            for x in 0..k {
                let mut l2 = l.clone();
                l2.push(x);
                next.push(l2);
            }
        }
        lists.extend(next.iter().cloned());
        frontier = next;
    }
    let index: BTreeMap<Vec<usize>, usize> = lists
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    let n_lists = lists.len();

    let truncate = |mut l: Vec<usize>| {
        l.truncate(max_len);
        l
    };

    let mut carriers = BTreeMap::new();
    let mut funcs = BTreeMap::new();
    let mut preds = BTreeMap::new();
    for s in &theory.signature.sorts {
        let size = match s.name.as_str() {
            "nat" => k,
            "list" => n_lists,
            other => return Err(SemanticsError::UnknownBuiltin(other.into())),
        };
        carriers.insert(s.name.clone(), size);
    }
    let size_of = |sort: &crate::logic::Sort| match sort.name.as_str() {
        "nat" => k,
        _ => n_lists,
    };
    for f in &theory.signature.funcs {
        let shape: Vec<usize> = f.domain.iter().map(size_of).collect();
        let table = match f.name.as_str() {
            "zero" if f.arity() == 0 => FuncTable::new(shape, |_| 0),
            "s" if f.arity() == 1 => FuncTable::new(shape, |a| (a[0] + 1) % k),
            "add" if f.arity() == 2 => FuncTable::new(shape, |a| (a[0] + a[1]) % k),
            "mul" if f.arity() == 2 => FuncTable::new(shape, |a| (a[0] * a[1]) % k),
            "nil" if f.arity() == 0 => FuncTable::new(shape, |_| 0),
            "cons" if f.arity() == 2 => FuncTable::new(shape, |a| {
                let mut l = vec![a[0]];
                l.extend(&lists[a[1]]);
                index[&truncate(l)]
            }),
            "append" if f.arity() == 2 => FuncTable::new(shape, |a| {
                let mut l = lists[a[0]].clone();
                l.extend(&lists[a[1]]);
                index[&truncate(l)]
            }),
            _ => return Err(SemanticsError::UnknownBuiltin(f.name.clone())),
        };
        funcs.insert(f.name.clone(), table);
    }
    for p in &theory.signature.preds {
        let shape: Vec<usize> = p.domain.iter().map(size_of).collect();
        let table = match p.name.as_str() {
            "leq" if p.arity() == 2 => PredTable::new(shape, |_| true),
            "pref" if p.arity() == 2 => PredTable::new(shape, |a| {
                let (x, y) = (&lists[a[0]], &lists[a[1]]);
                x.len() <= y.len() && y[..x.len()] == x[..]
            }),
            _ => return Err(SemanticsError::UnknownBuiltin(p.name.clone())),
        };
        preds.insert(p.name.clone(), table);
    }
    FiniteModel::new(theory.clone(), carriers, funcs, preds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{FuncSym, PredSym, Signature, Sort};

    fn list_theory() -> Theory {
        let nat = Sort::new("nat");
        let list = Sort::new("list");
        Theory {
            signature: Signature {
                sorts: vec![nat.clone(), list.clone()],
                funcs: vec![
                    FuncSym::constant("zero", nat.clone()),
                    FuncSym::new("s", vec![nat.clone()], nat.clone()),
                    FuncSym::constant("nil", list.clone()),
                    FuncSym::new("cons", vec![nat.clone(), list.clone()], list.clone()),
                    FuncSym::new("append", vec![list.clone(), list.clone()], list.clone()),
                ],
                preds: vec![PredSym::new("pref", vec![list.clone(), list])],
            },
            ..Default::default()
        }
    }

    #[test]
    fn list_carrier_size() {
        // k=2, max_len=1: nil, [0], [1].
        let m = truncated_list_model(&list_theory(), 2, 1).unwrap();
        assert_eq!(m.carrier("list"), 3);
        // k=1, max_len=2: nil, [0], [0,0].
        let m = truncated_list_model(&list_theory(), 1, 2).unwrap();
        assert_eq!(m.carrier("list"), 3);
    }

    #[test]
    fn append_nil_is_identity_in_the_table() {
        let m = truncated_list_model(&list_theory(), 2, 2).unwrap();
        let n = m.carrier("list");
        let append = m.func_table("append");
        for i in 0..n {
            assert_eq!(append.get(&[0, i]), i);
        }
    }

    #[test]
    fn unknown_symbols_are_rejected() {
        let mut t = list_theory();
        t.signature
            .funcs
            .push(FuncSym::new("rev", vec![Sort::new("list")], Sort::new("list")));
        assert!(matches!(
            truncated_list_model(&t, 2, 1),
            Err(SemanticsError::UnknownBuiltin(n)) if n == "rev"
        ));
    }
}
