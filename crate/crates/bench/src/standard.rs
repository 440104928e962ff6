//! Bounded evaluation in the standard model of naturals and lists of
//! naturals. This is the independent oracle that gates reconstructed
//! conjectures: function symbols get their intended meanings and bounded
//! quantifier sweeps search for counterexamples.

use std::collections::BTreeMap;

use reflect_core::logic::{Formula, Term, Variable};

use crate::BenchError;

/// A standard-model value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StdValue {
    Nat(u64),
    List(Vec<u64>),
}

impl std::fmt::Display for StdValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StdValue::Nat(n) => write!(f, "{n}"),
            StdValue::List(l) => write!(f, "{l:?}"),
        }
    }
}

type Env = BTreeMap<Variable, StdValue>;

/// Quantifier bounds for the validation sweeps.
#[derive(Debug, Clone, Copy)]
pub struct StandardModel {
    /// Naturals range over `0..=nat_bound`.
    pub nat_bound: u64,
    /// Lists range over length `<= list_len` with elements `0..=elem_bound`.
    pub list_len: usize,
    pub elem_bound: u64,
}

impl Default for StandardModel {
    fn default() -> Self {
        StandardModel {
            nat_bound: 5,
            list_len: 3,
            elem_bound: 2,
        }
    }
}

impl StandardModel {
    fn nat_range(&self) -> Vec<StdValue> {
        (0..=self.nat_bound).map(StdValue::Nat).collect()
    }

    fn list_range(&self) -> Vec<StdValue> {
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..self.list_len {
            let mut next = Vec::new();
            for l in &frontier {
                for x in 0..=self.elem_bound {
                    let mut l2 = l.clone();
                    l2.push(x);
                    next.push(l2);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.into_iter().map(StdValue::List).collect()
    }

    fn range_of(&self, sort_name: &str) -> Result<Vec<StdValue>, BenchError> {
        match sort_name {
            "nat" => Ok(self.nat_range()),
            "list" => Ok(self.list_range()),
            other => Err(BenchError::UnknownStandardSymbol(other.to_string())),
        }
    }

    pub fn eval_term(&self, t: &Term, env: &Env) -> Result<StdValue, BenchError> {
        match t {
            Term::Var(v) => env
                .get(v)
                .cloned()
                .ok_or_else(|| BenchError::UnboundVariable(v.to_string())),
            Term::App(f, args) => {
                let vals: Vec<StdValue> = args
                    .iter()
                    .map(|a| self.eval_term(a, env))
                    .collect::<Result<_, _>>()?;
                self.apply(&f.name, &vals)
            }
        }
    }

    fn apply(&self, name: &str, args: &[StdValue]) -> Result<StdValue, BenchError> {
        use StdValue::{List, Nat};
        let bad = || BenchError::UnknownStandardSymbol(name.to_string());
        Ok(match (name, args) {
            ("zero", []) => Nat(0),
            ("s", [Nat(n)]) => Nat(n + 1),
            ("add", [Nat(a), Nat(b)]) => Nat(a + b),
            ("mul", [Nat(a), Nat(b)]) => Nat(a * b),
            ("nil", []) => List(Vec::new()),
            ("cons", [Nat(x), List(l)]) => {
                let mut out = vec![*x];
                out.extend(l);
                List(out)
            }
            ("append", [List(a), List(b)]) => {
                let mut out = a.clone();
                out.extend(b);
                List(out)
            }
            ("rev", [List(a)]) => List(a.iter().rev().copied().collect()),
            ("qrev", [List(a), List(acc)]) => {
                let mut out: Vec<u64> = a.iter().rev().copied().collect();
                out.extend(acc);
                List(out)
            }
            _ => return Err(bad()),
        })
    }

    fn holds_pred(&self, name: &str, args: &[StdValue]) -> Result<bool, BenchError> {
        use StdValue::{List, Nat};
        Ok(match (name, args) {
            ("leq", [Nat(a), Nat(b)]) => a <= b,
            ("pref", [List(a), List(b)]) => a.len() <= b.len() && b[..a.len()] == a[..],
            ("allEq", [List(a), List(b)]) => a == b,
            _ => return Err(BenchError::UnknownStandardSymbol(name.to_string())),
        })
    }

    pub fn holds(&self, phi: &Formula, env: &mut Env) -> Result<bool, BenchError> {
        match phi {
            Formula::Bottom => Ok(false),
            Formula::Equals(l, r) => Ok(self.eval_term(l, env)? == self.eval_term(r, env)?),
            Formula::Atom(p, args) => {
                let vals: Vec<StdValue> = args
                    .iter()
                    .map(|a| self.eval_term(a, env))
                    .collect::<Result<_, _>>()?;
                self.holds_pred(&p.name, &vals)
            }
            Formula::Not(f) => Ok(!self.holds(f, env)?),
            Formula::Or(l, r) => Ok(self.holds(l, env)? || self.holds(r, env)?),
            Formula::And(l, r) => Ok(self.holds(l, env)? && self.holds(r, env)?),
            Formula::Implies(l, r) => Ok(!self.holds(l, env)? || self.holds(r, env)?),
            Formula::Iff(l, r) => Ok(self.holds(l, env)? == self.holds(r, env)?),
            Formula::Forall(v, f) => {
                for val in self.range_of(&v.sort.name)? {
                    let old = env.insert(v.clone(), val);
                    let ok = self.holds(f, env)?;
                    restore(env, v, old);
                    if !ok {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Exists(v, f) => {
                for val in self.range_of(&v.sort.name)? {
                    let old = env.insert(v.clone(), val);
                    let ok = self.holds(f, env)?;
                    restore(env, v, old);
                    if ok {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// Sweep the leading universal prefix for a counterexample; `None`
    /// means the bounded check passed. The witness lists the failing
    /// prefix assignment.
    pub fn find_counterexample(&self, phi: &Formula) -> Result<Option<String>, BenchError> {
        let mut prefix = Vec::new();
        let mut matrix = phi;
        while let Formula::Forall(v, f) = matrix {
            prefix.push(v.clone());
            matrix = f;
        }
        let mut env = Env::new();
        self.sweep(&prefix, 0, matrix, &mut env)
    }

    fn sweep(
        &self,
        prefix: &[Variable],
        at: usize,
        matrix: &Formula,
        env: &mut Env,
    ) -> Result<Option<String>, BenchError> {
        if at == prefix.len() {
            return if self.holds(matrix, env)? {
                Ok(None)
            } else {
                let parts: Vec<String> = prefix
                    .iter()
                    .map(|v| format!("{v}={}", env[v]))
                    .collect();
                Ok(Some(if parts.is_empty() {
                    "()".to_string()
                } else {
                    format!("({})", parts.join(", "))
                }))
            };
        }
        let v = &prefix[at];
        for val in self.range_of(&v.sort.name)? {
            let old = env.insert(v.clone(), val);
            let result = self.sweep(prefix, at + 1, matrix, env)?;
            restore(env, v, old);
            if result.is_some() {
                return Ok(result);
            }
        }
        Ok(None)
    }
}

fn restore(env: &mut Env, v: &Variable, old: Option<StdValue>) {
    match old {
        Some(val) => {
            env.insert(v.clone(), val);
        }
        None => {
            env.remove(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use reflect_frontend::parse_formula_str;

    fn sig() -> reflect_core::logic::Signature {
        crate::builtins::builtin_theory(crate::builtins::IND_THEORY)
            .unwrap()
            .signature
    }

    #[test]
    fn commutativity_passes_the_sweep() {
        let phi =
            parse_formula_str("(forall ((x nat) (y nat)) (= (add x y) (add y x)))", &sig())
                .unwrap();
        assert_eq!(
            StandardModel::default().find_counterexample(&phi).unwrap(),
            None
        );
    }

    #[test]
    fn wrong_reconstruction_fails_with_the_first_witness() {
        let phi =
            parse_formula_str("(forall ((x nat) (y nat)) (= (add x y) x))", &sig()).unwrap();
        let witness = StandardModel::default()
            .find_counterexample(&phi)
            .unwrap()
            .unwrap();
        assert_eq!(witness, "(x0:nat=0, x1:nat=1)");
    }

    #[test]
    fn list_semantics() {
        let m = StandardModel::default();
        for (src, expected) in [
            ("(forall ((xs list)) (= (rev (rev xs)) xs))", true),
            ("(forall ((xs list)) (= (rev xs) (qrev xs nil)))", true),
            ("(forall ((xs list) (ys list)) (pref xs (append xs ys)))", true),
            ("(forall ((xs list)) (= (rev xs) xs))", false),
        ] {
            let phi = parse_formula_str(src, &sig()).unwrap();
            assert_eq!(
                m.find_counterexample(&phi).unwrap().is_none(),
                expected,
                "{src}"
            );
        }
    }

    #[test]
    fn existentials_search_the_bounded_range() {
        let m = StandardModel::default();
        let phi = parse_formula_str(
            "(exists ((x nat)) (forall ((y nat)) (= (add x y) y)))",
            &sig(),
        )
        .unwrap();
        assert_eq!(m.find_counterexample(&phi).unwrap(), None);
    }
}
