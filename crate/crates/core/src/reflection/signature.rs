//! The reflective signature extension.
//!
//! For a base signature with sorts `S`, functions `F` and predicates `P` the
//! extension adds, per base sort: a variable sort, a term sort, variable
//! constructors `v0`/`next`, the variable-to-term injection, a lifted
//! equality, a lifted universal quantifier, and environment operations
//! `push`/`evalv`/`eval`; per function and predicate a lifted constructor;
//! plus the formula and environment sorts, `false`/`or`/`not` formula
//! constructors, the empty environment and the satisfaction predicate.
//!
//! All generated names live in the reserved `rfl_` namespace, so disjointness
//! from user symbols is enforced rather than assumed.

use std::collections::{BTreeMap, HashSet};

use crate::logic::{FuncSym, PredSym, Signature, Sort};

use super::ReflectionError;

/// Prefix reserved for generated sorts and symbols.
pub const RESERVED_PREFIX: &str = "rfl_";

/// The bijection between base symbols and their reflected counterparts,
/// plus the generated sorts and environment machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionMap {
    base: Signature,
    var_sorts: BTreeMap<String, Sort>,
    term_sorts: BTreeMap<String, Sort>,
    form_sort: Sort,
    env_sort: Sort,
    v0: BTreeMap<String, FuncSym>,
    next: BTreeMap<String, FuncSym>,
    inj: BTreeMap<String, FuncSym>,
    lifted_funcs: BTreeMap<String, FuncSym>,
    lifted_preds: BTreeMap<String, FuncSym>,
    refl_eq: BTreeMap<String, FuncSym>,
    refl_bot: FuncSym,
    refl_or: FuncSym,
    refl_not: FuncSym,
    refl_forall: BTreeMap<String, FuncSym>,
    empty_env: FuncSym,
    push: BTreeMap<String, FuncSym>,
    evalv: BTreeMap<String, FuncSym>,
    eval: BTreeMap<String, FuncSym>,
    sat: PredSym,
}

/// Build the reflective extension of a signature.
///
/// Fails if a base name intrudes into the reserved namespace or (for
/// pathological sort names) two generated names collide.
pub fn reflective_signature(sig: &Signature) -> Result<ReflectionMap, ReflectionError> {
    for name in sig
        .sorts
        .iter()
        .map(|s| &s.name)
        .chain(sig.funcs.iter().map(|f| &f.name))
        .chain(sig.preds.iter().map(|p| &p.name))
    {
        if name.starts_with(RESERVED_PREFIX) {
            return Err(ReflectionError::ReservedPrefix(name.clone()));
        }
    }

    let mut var_sorts = BTreeMap::new();
    let mut term_sorts = BTreeMap::new();
    for s in &sig.sorts {
        var_sorts.insert(s.name.clone(), Sort::new(format!("rfl_Var{}", s.name)));
        term_sorts.insert(s.name.clone(), Sort::new(format!("rfl_Tm{}", s.name)));
    }
    let form_sort = Sort::new("rfl_Form");
    let env_sort = Sort::new("rfl_Env");

    let var_of = |s: &Sort| var_sorts[&s.name].clone();
    let term_of = |s: &Sort| term_sorts[&s.name].clone();

    let mut v0 = BTreeMap::new();
    let mut next = BTreeMap::new();
    let mut inj = BTreeMap::new();
    let mut refl_eq = BTreeMap::new();
    let mut refl_forall = BTreeMap::new();
    let mut push = BTreeMap::new();
    let mut evalv = BTreeMap::new();
    let mut eval = BTreeMap::new();
    for s in &sig.sorts {
        let n = &s.name;
        v0.insert(
            n.clone(),
            FuncSym::constant(format!("rfl_v0_{n}"), var_of(s)),
        );
        next.insert(
            n.clone(),
            FuncSym::new(format!("rfl_next_{n}"), vec![var_of(s)], var_of(s)),
        );
        inj.insert(
            n.clone(),
            FuncSym::new(format!("rfl_inj_{n}"), vec![var_of(s)], term_of(s)),
        );
        refl_eq.insert(
            n.clone(),
            FuncSym::new(
                format!("rfl_eq_{n}"),
                vec![term_of(s), term_of(s)],
                form_sort.clone(),
            ),
        );
        refl_forall.insert(
            n.clone(),
            FuncSym::new(
                format!("rfl_all_{n}"),
                vec![var_of(s), form_sort.clone()],
                form_sort.clone(),
            ),
        );
        push.insert(
            n.clone(),
            FuncSym::new(
                format!("rfl_push_{n}"),
                vec![env_sort.clone(), var_of(s), s.clone()],
                env_sort.clone(),
            ),
        );
        evalv.insert(
            n.clone(),
            FuncSym::new(
                format!("rfl_evalv_{n}"),
                vec![env_sort.clone(), var_of(s)],
                s.clone(),
            ),
        );
        eval.insert(
            n.clone(),
            FuncSym::new(
                format!("rfl_eval_{n}"),
                vec![env_sort.clone(), term_of(s)],
                s.clone(),
            ),
        );
    }

    let mut lifted_funcs = BTreeMap::new();
    for f in &sig.funcs {
        lifted_funcs.insert(
            f.name.clone(),
            FuncSym::new(
                format!("rfl_q_{}", f.name),
                f.domain.iter().map(term_of).collect(),
                term_of(&f.codomain),
            ),
        );
    }
    let mut lifted_preds = BTreeMap::new();
    for p in &sig.preds {
        lifted_preds.insert(
            p.name.clone(),
            FuncSym::new(
                format!("rfl_q_{}", p.name),
                p.domain.iter().map(term_of).collect(),
                form_sort.clone(),
            ),
        );
    }

    let map = ReflectionMap {
        base: sig.clone(),
        var_sorts,
        term_sorts,
        refl_bot: FuncSym::constant("rfl_false", form_sort.clone()),
        refl_or: FuncSym::new(
            "rfl_or",
            vec![form_sort.clone(), form_sort.clone()],
            form_sort.clone(),
        ),
        refl_not: FuncSym::new("rfl_not", vec![form_sort.clone()], form_sort.clone()),
        empty_env: FuncSym::constant("rfl_empty", env_sort.clone()),
        sat: PredSym::new("rfl_sat", vec![env_sort.clone(), form_sort.clone()]),
        form_sort,
        env_sort,
        v0,
        next,
        inj,
        lifted_funcs,
        lifted_preds,
        refl_eq,
        refl_forall,
        push,
        evalv,
        eval,
    };

    let mut seen = HashSet::new();
    for name in map
        .generated_sorts()
        .iter()
        .map(|s| s.name.clone())
        .chain(map.generated_funcs().iter().map(|f| f.name.clone()))
        .chain(std::iter::once(map.sat.name.clone()))
    {
        if !seen.insert(name.clone()) {
            return Err(ReflectionError::NameCollision(name));
        }
    }
    Ok(map)
}

impl ReflectionMap {
    pub fn base(&self) -> &Signature {
        &self.base
    }

    pub fn form_sort(&self) -> &Sort {
        &self.form_sort
    }

    pub fn env_sort(&self) -> &Sort {
        &self.env_sort
    }

    pub fn var_sort(&self, base_sort: &Sort) -> &Sort {
        &self.var_sorts[&base_sort.name]
    }

    pub fn term_sort(&self, base_sort: &Sort) -> &Sort {
        &self.term_sorts[&base_sort.name]
    }

    pub fn v0(&self, base_sort: &Sort) -> &FuncSym {
        &self.v0[&base_sort.name]
    }

    pub fn next(&self, base_sort: &Sort) -> &FuncSym {
        &self.next[&base_sort.name]
    }

    pub fn inj(&self, base_sort: &Sort) -> &FuncSym {
        &self.inj[&base_sort.name]
    }

    pub fn lifted_func(&self, f: &FuncSym) -> Option<&FuncSym> {
        self.lifted_funcs.get(&f.name)
    }

    pub fn lifted_pred(&self, p: &PredSym) -> Option<&FuncSym> {
        self.lifted_preds.get(&p.name)
    }

    pub fn refl_eq(&self, base_sort: &Sort) -> &FuncSym {
        &self.refl_eq[&base_sort.name]
    }

    pub fn refl_bot(&self) -> &FuncSym {
        &self.refl_bot
    }

    pub fn refl_or(&self) -> &FuncSym {
        &self.refl_or
    }

    pub fn refl_not(&self) -> &FuncSym {
        &self.refl_not
    }

    pub fn refl_forall(&self, base_sort: &Sort) -> &FuncSym {
        &self.refl_forall[&base_sort.name]
    }

    pub fn empty_env(&self) -> &FuncSym {
        &self.empty_env
    }

    pub fn push(&self, base_sort: &Sort) -> &FuncSym {
        &self.push[&base_sort.name]
    }

    pub fn evalv(&self, base_sort: &Sort) -> &FuncSym {
        &self.evalv[&base_sort.name]
    }

    pub fn eval(&self, base_sort: &Sort) -> &FuncSym {
        &self.eval[&base_sort.name]
    }

    pub fn sat(&self) -> &PredSym {
        &self.sat
    }

    /// Generated sorts: per base sort the variable and term sorts, then the
    /// formula and environment sorts.
    pub fn generated_sorts(&self) -> Vec<Sort> {
        let mut out: Vec<Sort> = self.var_sorts.values().cloned().collect();
        out.extend(self.term_sorts.values().cloned());
        out.push(self.form_sort.clone());
        out.push(self.env_sort.clone());
        out
    }

    /// Generated function symbols, grouped per the construction.
    pub fn generated_funcs(&self) -> Vec<FuncSym> {
        let mut out: Vec<FuncSym> = Vec::new();
        out.extend(self.v0.values().cloned());
        out.extend(self.next.values().cloned());
        out.extend(self.inj.values().cloned());
        out.extend(self.lifted_funcs.values().cloned());
        out.extend(self.lifted_preds.values().cloned());
        out.extend(self.refl_eq.values().cloned());
        out.push(self.refl_bot.clone());
        out.push(self.refl_or.clone());
        out.push(self.refl_not.clone());
        out.extend(self.refl_forall.values().cloned());
        out.push(self.empty_env.clone());
        out.extend(self.push.values().cloned());
        out.extend(self.evalv.values().cloned());
        out.extend(self.eval.values().cloned());
        out
    }

    /// Count of generated symbols (functions plus the satisfaction predicate).
    pub fn generated_symbol_count(&self) -> usize {
        self.generated_funcs().len() + 1
    }

    /// The base signature extended with every generated sort and symbol.
    pub fn extended_signature(&self) -> Signature {
        let mut sig = self.base.clone();
        sig.sorts.extend(self.generated_sorts());
        sig.funcs.extend(self.generated_funcs());
        sig.preds.push(self.sat.clone());
        sig
    }

    /// Reverse lookup: the base function a lifted constructor came from.
    pub fn base_func_of(&self, lifted_name: &str) -> Option<&FuncSym> {
        self.lifted_funcs
            .iter()
            .find(|(_, l)| l.name == lifted_name)
            .and_then(|(base_name, _)| self.base.func(base_name))
    }

    /// Reverse lookup: the base predicate a lifted constructor came from.
    pub fn base_pred_of(&self, lifted_name: &str) -> Option<&PredSym> {
        self.lifted_preds
            .iter()
            .find(|(_, l)| l.name == lifted_name)
            .and_then(|(base_name, _)| self.base.pred(base_name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Signature;

    fn nat_sig() -> Signature {
        let nat = Sort::new("nat");
        Signature {
            sorts: vec![nat.clone()],
            funcs: vec![
                FuncSym::constant("zero", nat.clone()),
                FuncSym::new("s", vec![nat.clone()], nat.clone()),
                FuncSym::new("add", vec![nat.clone(), nat.clone()], nat.clone()),
                FuncSym::new("mul", vec![nat.clone(), nat.clone()], nat.clone()),
            ],
            preds: vec![PredSym::new("leq", vec![nat.clone(), nat])],
        }
    }

    #[test]
    fn nat_signature_counts() {
        // n=1, k=4, m=1: 2n+2 = 4 new sorts, 8n+k+m+5 = 18 new symbols.
        let map = reflective_signature(&nat_sig()).unwrap();
        assert_eq!(map.generated_sorts().len(), 4);
        assert_eq!(map.generated_symbol_count(), 18);
        let names: Vec<String> = map.generated_sorts().iter().map(|s| s.name.clone()).collect();
        assert_eq!(names, vec!["rfl_Varnat", "rfl_Tmnat", "rfl_Form", "rfl_Env"]);
    }

    #[test]
    fn empty_signature_counts() {
        let map = reflective_signature(&Signature::new()).unwrap();
        assert_eq!(map.generated_sorts().len(), 2);
        assert_eq!(map.generated_symbol_count(), 5);
        let names: Vec<String> = map
            .generated_funcs()
            .iter()
            .map(|f| f.name.clone())
            .collect();
        assert_eq!(names, vec!["rfl_false", "rfl_or", "rfl_not", "rfl_empty"]);
    }

    #[test]
    fn two_sorts_no_symbols() {
        let sig = Signature {
            sorts: vec![Sort::new("a"), Sort::new("b")],
            funcs: vec![],
            preds: vec![],
        };
        let map = reflective_signature(&sig).unwrap();
        assert_eq!(map.generated_sorts().len(), 6);
        assert_eq!(map.generated_symbol_count(), 21);
    }

    #[test]
    fn reserved_prefix_is_rejected() {
        let sig = Signature {
            sorts: vec![Sort::new("nat")],
            funcs: vec![FuncSym::constant("rfl_x", Sort::new("nat"))],
            preds: vec![],
        };
        assert!(matches!(
            reflective_signature(&sig),
            Err(ReflectionError::ReservedPrefix(n)) if n == "rfl_x"
        ));
    }

    #[test]
    fn lifted_symbol_shapes_follow_the_construction() {
        let map = reflective_signature(&nat_sig()).unwrap();
        let nat = Sort::new("nat");
        let add = map.base().func("add").unwrap().clone();
        let lifted = map.lifted_func(&add).unwrap();
        assert_eq!(lifted.name, "rfl_q_add");
        assert_eq!(lifted.domain, vec![map.term_sort(&nat).clone(); 2]);
        assert_eq!(&lifted.codomain, map.term_sort(&nat));
        let leq = map.base().pred("leq").unwrap().clone();
        let lifted = map.lifted_pred(&leq).unwrap();
        assert_eq!(&lifted.codomain, map.form_sort());
        assert_eq!(map.sat().domain, vec![
            map.env_sort().clone(),
            map.form_sort().clone()
        ]);
        assert_eq!(
            map.push(&nat).domain,
            vec![
                map.env_sort().clone(),
                map.var_sort(&nat).clone(),
                nat.clone()
            ]
        );
    }

    #[test]
    fn extended_signature_is_well_formed() {
        let map = reflective_signature(&nat_sig()).unwrap();
        let theory = crate::logic::Theory {
            signature: map.extended_signature(),
            ..Default::default()
        };
        assert_eq!(crate::logic::check_theory(&theory), vec![]);
    }
}
