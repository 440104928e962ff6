//! Seeded random generation of signatures and well-sorted core formulas.
//!
//! Used by the test suites for round-trip, counting and two-path oracles;
//! generation is deterministic for a fixed seed.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::logic::{Formula, FuncSym, PredSym, Signature, Sort, Term, Variable};

/// Random well-sorted core formulas over a fixed signature.
pub struct FormulaGen {
    sig: Signature,
    rng: ChaCha8Rng,
    /// Largest variable index the generator will introduce.
    pub max_var_index: usize,
}

impl FormulaGen {
    pub fn new(sig: &Signature, seed: u64) -> Self {
        FormulaGen {
            sig: sig.clone(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_var_index: 3,
        }
    }

    /// A random term of `sort` with depth at most `budget`, using only
    /// variables from `ctx`. Returns `None` when the signature offers no way
    /// to build such a term.
    pub fn term(&mut self, sort: &Sort, budget: usize, ctx: &[Variable]) -> Option<Term> {
        let vars: Vec<&Variable> = ctx.iter().filter(|v| &v.sort == sort).collect();
        let consts: Vec<FuncSym> = self.sig.constants_of(sort).cloned().collect();
        let funcs: Vec<FuncSym> = self
            .sig
            .funcs
            .iter()
            .filter(|f| &f.codomain == sort && f.arity() > 0)
            .cloned()
            .collect();

        let mut choices: Vec<u8> = Vec::new();
        if !vars.is_empty() {
            choices.push(0);
        }
        if !consts.is_empty() {
            choices.push(1);
        }
        if budget > 0 && !funcs.is_empty() {
            // Weight applications so deeper terms actually appear.
            choices.extend([2, 2]);
        }
        let choice = *choices.choose(&mut self.rng)?;
        match choice {
            0 => Some(Term::Var((*vars.choose(&mut self.rng).unwrap()).clone())),
            1 => Some(Term::constant(consts.choose(&mut self.rng).unwrap())),
            _ => {
                let f = funcs.choose(&mut self.rng).unwrap().clone();
                let mut args = Vec::with_capacity(f.arity());
                for s in &f.domain {
                    args.push(self.term(s, budget - 1, ctx)?);
                }
                Some(Term::App(f, args))
            }
        }
    }

    /// A random core formula of depth at most `budget`; every variable it
    /// contains is bound (the result is closed when `ctx` is empty).
    pub fn core_formula(&mut self, budget: usize, ctx: &[Variable]) -> Option<Formula> {
        if budget <= 1 {
            return self.atom(budget, ctx);
        }
        match self.rng.gen_range(0..6u8) {
            0 | 1 => self.atom(budget, ctx),
            2 => Some(Formula::not(self.core_formula(budget - 1, ctx)?)),
            3 => Some(Formula::or(
                self.core_formula(budget - 1, ctx)?,
                self.core_formula(budget - 1, ctx)?,
            )),
            _ => {
                if self.sig.sorts.is_empty() {
                    return self.atom(budget, ctx);
                }
                let sort = self.sig.sorts[self.rng.gen_range(0..self.sig.sorts.len())].clone();
                let used: Vec<usize> = ctx
                    .iter()
                    .filter(|v| v.sort == sort)
                    .map(|v| v.index)
                    .collect();
                let fresh = (0..=self.max_var_index).find(|i| !used.contains(i))?;
                let v = Variable::new(sort, fresh);
                let mut inner = ctx.to_vec();
                inner.push(v.clone());
                Some(Formula::forall(v, self.core_formula(budget - 1, &inner)?))
            }
        }
    }

    fn atom(&mut self, budget: usize, ctx: &[Variable]) -> Option<Formula> {
        let term_budget = budget.saturating_sub(1);
        let mut options: Vec<u8> = vec![0];
        if !self.sig.sorts.is_empty() {
            options.extend([1, 1]);
        }
        if !self.sig.preds.is_empty() {
            options.extend([2, 2]);
        }
        match *options.choose(&mut self.rng).unwrap() {
            0 => Some(Formula::Bottom),
            1 => {
                let sort = self.sig.sorts[self.rng.gen_range(0..self.sig.sorts.len())].clone();
                let l = self.term(&sort, term_budget, ctx)?;
                let r = self.term(&sort, term_budget, ctx)?;
                Some(Formula::Equals(l, r))
            }
            _ => {
                let p = self.sig.preds[self.rng.gen_range(0..self.sig.preds.len())].clone();
                let mut args = Vec::with_capacity(p.arity());
                for s in &p.domain {
                    args.push(self.term(s, term_budget, ctx)?);
                }
                Some(Formula::Atom(p, args))
            }
        }
    }

    /// A batch of distinct closed core formulas.
    pub fn distinct_closed(&mut self, count: usize, budget: usize) -> Vec<Formula> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut attempts = 0usize;
        while out.len() < count && attempts < count * 200 {
            attempts += 1;
            if let Some(f) = self.core_formula(budget, &[]) {
                debug_assert!(f.is_closed());
                if seen.insert(f.clone()) {
                    out.push(f);
                }
            }
        }
        out
    }
}

/// A random signature with `n` sorts, `k` functions and `m` predicates.
/// Function arities range over 0..=2, predicate arities over 1..=2.
pub fn signature(seed: u64, n: usize, k: usize, m: usize) -> Signature {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sorts: Vec<Sort> = (0..n).map(|i| Sort::new(format!("srt{i}"))).collect();
    let mut funcs = Vec::with_capacity(k);
    for i in 0..k {
        let arity = rng.gen_range(0..=2usize);
        let domain = (0..arity)
            .map(|_| sorts[rng.gen_range(0..n)].clone())
            .collect();
        let codomain = sorts[rng.gen_range(0..n)].clone();
        funcs.push(FuncSym::new(format!("f{i}"), domain, codomain));
    }
    let mut preds = Vec::with_capacity(m);
    for i in 0..m {
        let arity = rng.gen_range(1..=2usize);
        let domain = (0..arity)
            .map(|_| sorts[rng.gen_range(0..n)].clone())
            .collect();
        preds.push(PredSym::new(format!("p{i}"), domain));
    }
    Signature {
        sorts,
        funcs,
        preds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn generated_formulas_are_core_closed_and_bounded() {
        let mut gen = FormulaGen::new(&nat_sig(), 42);
        let batch = gen.distinct_closed(100, 4);
        assert_eq!(batch.len(), 100);
        for f in &batch {
            assert!(f.is_core());
            assert!(f.is_closed());
            assert!(f.depth() <= 4, "depth {} for {f}", f.depth());
        }
    }

    #[test]
    fn generation_is_deterministic_per_seed() {
        let a = FormulaGen::new(&nat_sig(), 7).distinct_closed(10, 3);
        let b = FormulaGen::new(&nat_sig(), 7).distinct_closed(10, 3);
        assert_eq!(a, b);
    }
}
