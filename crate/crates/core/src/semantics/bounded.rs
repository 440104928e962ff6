//! Depth-bounded realisation of the reflective interpretation.
//!
//! The reflective sorts get syntactic carriers: variables up to a maximum
//! index, base-signature terms and core formulas up to a depth, and
//! environments as push-chains up to a length. The satisfaction relation is
//! the set of pairs whose decoded environment makes the formula true in the
//! base model; an unpushed variable decodes to element 0 of its sort.
//!
//! Term and formula universes are materialised on first use, so a model can
//! be constructed at a depth whose full formula universe would blow the cap
//! as long as the checks that run against it only need environments.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use crate::logic::{Formula, FuncSym, PredSym, Signature, Sort, Term, Variable};
use crate::reflection::{reflective_signature, ReflectionMap};

use super::model::{eval_term, holds, Assignment, FiniteModel};
use super::SemanticsError;

/// Default cap on the size of any single bounded universe.
pub const DEFAULT_UNIVERSE_CAP: usize = 1_000_000;

/// An environment as an explicit push-chain; the last push wins on lookup.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnvChain(Vec<(Variable, usize)>);

impl EnvChain {
    pub fn empty() -> Self {
        EnvChain(Vec::new())
    }

    pub fn push(&self, v: Variable, x: usize) -> Self {
        let mut inner = self.0.clone();
        inner.push((v, x));
        EnvChain(inner)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The value of the most recent push of exactly this variable.
    pub fn lookup(&self, v: &Variable) -> Option<usize> {
        self.0
            .iter()
            .rev()
            .find(|(w, _)| w == v)
            .map(|(_, x)| *x)
    }

    /// Decode into an assignment covering `vars`, defaulting to element 0.
    pub fn assignment_for<'a>(&self, vars: impl Iterator<Item = &'a Variable>) -> Assignment {
        let mut a = Assignment::new();
        for v in vars {
            a.insert(v.clone(), self.lookup(v).unwrap_or(0));
        }
        a
    }
}

impl fmt::Display for EnvChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (v, x)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}:={x}")?;
        }
        f.write_str("]")
    }
}

/// A value of the extended language: a base element or a syntax object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Elem(usize),
    Var(Variable),
    Term(Term),
    Form(Formula),
    Env(EnvChain),
}

#[derive(Debug, Clone)]
enum SymRole {
    BaseFunc(FuncSym),
    V0(Sort),
    Next(Sort),
    Inj,
    LiftedFunc(FuncSym),
    LiftedPred(PredSym),
    ReflEq,
    ReflBot,
    ReflNot,
    ReflOr,
    ReflForall,
    EmptyEnv,
    Push,
    EvalV,
    Eval,
}

/// The bounded reflective model over a finite base model.
#[derive(Debug)]
pub struct BoundedReflectiveModel {
    base: FiniteModel,
    map: ReflectionMap,
    depth: usize,
    cap: usize,
    roles: BTreeMap<String, SymRole>,
    var_universe: BTreeMap<String, Vec<Variable>>,
    env_universe: Vec<EnvChain>,
    term_universe: OnceLock<Result<BTreeMap<String, Vec<Term>>, SemanticsError>>,
    form_universe: OnceLock<Result<Vec<Formula>, SemanticsError>>,
    corruptions: HashMap<(EnvChain, Formula), bool>,
}

/// Build the bounded reflective model at the given depth with the default
/// universe cap.
pub fn bounded_reflective_model(
    base: FiniteModel,
    depth: usize,
) -> Result<BoundedReflectiveModel, SemanticsError> {
    BoundedReflectiveModel::new(base, depth, DEFAULT_UNIVERSE_CAP)
}

impl BoundedReflectiveModel {
    pub fn new(base: FiniteModel, depth: usize, cap: usize) -> Result<Self, SemanticsError> {
        if depth == 0 {
            return Err(SemanticsError::BadDepth);
        }
        let map = reflective_signature(&base.theory.signature)?;

        let mut roles = BTreeMap::new();
        for f in &base.theory.signature.funcs {
            roles.insert(f.name.clone(), SymRole::BaseFunc(f.clone()));
        }
        for s in &base.theory.signature.sorts {
            roles.insert(map.v0(s).name.clone(), SymRole::V0(s.clone()));
            roles.insert(map.next(s).name.clone(), SymRole::Next(s.clone()));
            roles.insert(map.inj(s).name.clone(), SymRole::Inj);
            roles.insert(map.refl_eq(s).name.clone(), SymRole::ReflEq);
            roles.insert(map.refl_forall(s).name.clone(), SymRole::ReflForall);
            roles.insert(map.push(s).name.clone(), SymRole::Push);
            roles.insert(map.evalv(s).name.clone(), SymRole::EvalV);
            roles.insert(map.eval(s).name.clone(), SymRole::Eval);
        }
        for f in &base.theory.signature.funcs {
            let lifted = map.lifted_func(f).expect("lifted function");
            roles.insert(lifted.name.clone(), SymRole::LiftedFunc(f.clone()));
        }
        for p in &base.theory.signature.preds {
            let lifted = map.lifted_pred(p).expect("lifted predicate");
            roles.insert(lifted.name.clone(), SymRole::LiftedPred(p.clone()));
        }
        roles.insert(map.refl_bot().name.clone(), SymRole::ReflBot);
        roles.insert(map.refl_not().name.clone(), SymRole::ReflNot);
        roles.insert(map.refl_or().name.clone(), SymRole::ReflOr);
        roles.insert(map.empty_env().name.clone(), SymRole::EmptyEnv);

        let mut var_universe = BTreeMap::new();
        for s in &base.theory.signature.sorts {
            let vars: Vec<Variable> = (0..=depth)
                .map(|i| Variable::new(s.clone(), i))
                .collect();
            var_universe.insert(s.name.clone(), vars);
        }

        // Push-chains of length up to `depth`, breadth-first.
        let mut env_universe = vec![EnvChain::empty()];
        let mut frontier = vec![EnvChain::empty()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for e in &frontier {
                for s in &base.theory.signature.sorts {
                    for v in &var_universe[&s.name] {
                        for x in 0..base.carrier(&s.name) {
                            next.push(e.push(v.clone(), x));
                        }
                    }
                }
            }
            env_universe.extend(next.iter().cloned());
            if env_universe.len() > cap {
                return Err(SemanticsError::UniverseOverflow("env".into(), cap));
            }
            frontier = next;
        }

        Ok(BoundedReflectiveModel {
            base,
            map,
            depth,
            cap,
            roles,
            var_universe,
            env_universe,
            term_universe: OnceLock::new(),
            form_universe: OnceLock::new(),
            corruptions: HashMap::new(),
        })
    }

    pub fn base(&self) -> &FiniteModel {
        &self.base
    }

    pub fn map(&self) -> &ReflectionMap {
        &self.map
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn env_universe(&self) -> &[EnvChain] {
        &self.env_universe
    }

    pub fn var_universe(&self, sort: &Sort) -> &[Variable] {
        &self.var_universe[&sort.name]
    }

    /// Base-signature terms over the variable universe, up to the depth.
    pub fn term_universe(&self, sort: &Sort) -> Result<&[Term], SemanticsError> {
        let all = self
            .term_universe
            .get_or_init(|| self.build_term_universe())
            .as_ref()
            .map_err(Clone::clone)?;
        Ok(&all[&sort.name])
    }

    /// Core formulas over the term universe, up to the depth.
    pub fn form_universe(&self) -> Result<&[Formula], SemanticsError> {
        self.form_universe
            .get_or_init(|| self.build_form_universe())
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    fn build_term_universe(&self) -> Result<BTreeMap<String, Vec<Term>>, SemanticsError> {
        let sig: &Signature = &self.base.theory.signature;
        let mut per_sort: BTreeMap<String, Vec<Term>> = BTreeMap::new();
        let mut seen: BTreeMap<String, std::collections::HashSet<Term>> = BTreeMap::new();
        for s in &sig.sorts {
            let mut level0: Vec<Term> = self.var_universe[&s.name]
                .iter()
                .cloned()
                .map(Term::Var)
                .collect();
            for f in &sig.funcs {
                if f.arity() == 0 && f.codomain == *s {
                    level0.push(Term::constant(f));
                }
            }
            seen.insert(s.name.clone(), level0.iter().cloned().collect());
            per_sort.insert(s.name.clone(), level0);
        }
        let mut total: usize = per_sort.values().map(Vec::len).sum();
        for level in 1..=self.depth {
            let snapshot = per_sort.clone();
            for f in &sig.funcs {
                if f.arity() == 0 {
                    continue;
                }
                let pools: Vec<&[Term]> = f
                    .domain
                    .iter()
                    .map(|s| snapshot[&s.name].as_slice())
                    .collect();
                let mut idx = vec![0usize; pools.len()];
                if pools.iter().any(|p| p.is_empty()) {
                    continue;
                }
                loop {
                    let args: Vec<Term> =
                        idx.iter().zip(&pools).map(|(i, p)| p[*i].clone()).collect();
                    let t = Term::app(f, args);
                    if t.depth() == level {
                        let set = seen.get_mut(&f.codomain.name).unwrap();
                        if set.insert(t.clone()) {
                            per_sort.get_mut(&f.codomain.name).unwrap().push(t);
                            total += 1;
                            if total > self.cap {
                                return Err(SemanticsError::UniverseOverflow(
                                    "term".into(),
                                    self.cap,
                                ));
                            }
                        }
                    }
                    if !advance(&mut idx, &pools) {
                        break;
                    }
                }
            }
        }
        Ok(per_sort)
    }

    fn build_form_universe(&self) -> Result<Vec<Formula>, SemanticsError> {
        let sig: &Signature = &self.base.theory.signature;
        let terms = self
            .term_universe
            .get_or_init(|| self.build_term_universe())
            .as_ref()
            .map_err(Clone::clone)?;
        let mut forms: Vec<Formula> = vec![Formula::Bottom];
        let mut seen: std::collections::HashSet<Formula> = forms.iter().cloned().collect();
        for level in 1..=self.depth {
            let snapshot_len = forms.len();
            let push = |f: Formula,
                            forms: &mut Vec<Formula>,
                            seen: &mut std::collections::HashSet<Formula>|
             -> Result<(), SemanticsError> {
                if seen.insert(f.clone()) {
                    forms.push(f);
                    if forms.len() > self.cap {
                        return Err(SemanticsError::UniverseOverflow("form".into(), self.cap));
                    }
                }
                Ok(())
            };
            // Atoms whose deepest term sits exactly one level down.
            for s in &sig.sorts {
                let pool = &terms[&s.name];
                for l in pool {
                    for r in pool {
                        let f = Formula::equals(l.clone(), r.clone());
                        if f.depth() == level {
                            push(f, &mut forms, &mut seen)?;
                        }
                    }
                }
            }
            for p in &sig.preds {
                let pools: Vec<&[Term]> = p
                    .domain
                    .iter()
                    .map(|s| terms[&s.name].as_slice())
                    .collect();
                if pools.iter().any(|po| po.is_empty()) {
                    continue;
                }
                let mut idx = vec![0usize; pools.len()];
                loop {
                    let args: Vec<Term> =
                        idx.iter().zip(&pools).map(|(i, po)| po[*i].clone()).collect();
                    let f = Formula::atom(p, args);
                    if f.depth() == level {
                        push(f, &mut forms, &mut seen)?;
                    }
                    if !advance(&mut idx, &pools) {
                        break;
                    }
                }
            }
            // Connectives and quantifiers over the previous levels.
            for i in 0..snapshot_len {
                let f = forms[i].clone();
                if f.depth() + 1 == level {
                    push(Formula::not(f.clone()), &mut forms, &mut seen)?;
                    for s in &sig.sorts {
                        for v in &self.var_universe[&s.name] {
                            push(
                                Formula::forall(v.clone(), f.clone()),
                                &mut forms,
                                &mut seen,
                            )?;
                        }
                    }
                }
                for j in 0..snapshot_len {
                    let g = forms[j].clone();
                    if 1 + f.depth().max(g.depth()) == level {
                        push(Formula::or(f.clone(), g), &mut forms, &mut seen)?;
                    }
                }
            }
        }
        Ok(forms)
    }

    /// Whether a core formula lies inside the bounded formula universe.
    pub fn fits(&self, phi: &Formula) -> bool {
        phi.is_core()
            && phi.depth() <= self.depth
            && phi.max_var_index().map_or(true, |i| i <= self.depth)
    }

    /// Override the satisfaction verdict of one pair, for fault-injection
    /// tests: the bounded checks must pinpoint exactly this entry.
    pub fn corrupt_sat(&mut self, e: EnvChain, phi: Formula, verdict: bool) {
        self.corruptions.insert((e, phi), verdict);
    }

    /// The satisfaction relation: decode the chain into an assignment over
    /// the formula's free variables (last push wins, default element 0) and
    /// evaluate in the base model.
    pub fn sat_verdict(&self, e: &EnvChain, phi: &Formula) -> bool {
        if !self.corruptions.is_empty() {
            if let Some(v) = self.corruptions.get(&(e.clone(), phi.clone())) {
                return *v;
            }
        }
        let free = phi.free_vars();
        let a = e.assignment_for(free.iter());
        holds(&self.base, &a, phi).expect("well-sorted formula over the base signature")
    }

    /// Evaluate a base term under a decoded chain.
    pub fn eval_term_in(&self, e: &EnvChain, t: &Term) -> usize {
        let free = t.free_vars();
        let a = e.assignment_for(free.iter());
        eval_term(&self.base, &a, t).expect("well-sorted term over the base signature")
    }

    /// Variable lookup by walking the chain, mirroring the lookup axioms
    /// read left-to-right.
    pub fn evalv_rw(&self, e: &EnvChain, v: &Variable) -> usize {
        for (w, x) in e.0.iter().rev() {
            if w == v {
                return *x;
            }
            // A push of a different variable, same or different sort, is
            // skipped per the shadowed- and cross-sort lookup axioms.
        }
        0
    }

    fn eval_term_rw(&self, e: &EnvChain, t: &Term) -> usize {
        match t {
            Term::Var(v) => self.evalv_rw(e, v),
            Term::App(f, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.eval_term_rw(e, a)).collect();
                self.base.func_table(&f.name).get(&vals)
            }
        }
    }

    /// Second, independent route to the satisfaction verdict: recurse on the
    /// defining axioms read left-to-right, extending the push-chain at each
    /// quantifier and enumerating the finite carrier.
    pub fn sat_by_rewriting(&self, e: &EnvChain, phi: &Formula) -> bool {
        match phi {
            Formula::Bottom => false,
            Formula::Equals(l, r) => self.eval_term_rw(e, l) == self.eval_term_rw(e, r),
            Formula::Atom(p, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.eval_term_rw(e, a)).collect();
                self.base.pred_table(&p.name).get(&vals)
            }
            Formula::Not(f) => !self.sat_by_rewriting(e, f),
            Formula::Or(l, r) => self.sat_by_rewriting(e, l) || self.sat_by_rewriting(e, r),
            Formula::Forall(v, f) => {
                let n = self.base.carrier(&v.sort.name);
                (0..n).all(|x| self.sat_by_rewriting(&e.push(v.clone(), x), f))
            }
            other => self.sat_by_rewriting(e, &crate::logic::desugar(other)),
        }
    }

    /// The verdict on an encoded formula at the empty environment.
    pub fn truth_verdict(&self, encoded: &Term) -> Result<bool, SemanticsError> {
        match self.eval_extended_term(encoded, &BTreeMap::new())? {
            Value::Form(phi) => Ok(self.sat_verdict(&EnvChain::empty(), &phi)),
            other => Err(SemanticsError::EncodingTooDeep(format!(
                "expected a formula-sorted encoding, got {other:?}"
            ))),
        }
    }

    /// Evaluate a term of the extended signature to a value: syntax
    /// constructors build syntax objects, environment operations build and
    /// read chains, evaluation symbols drop back to the base model.
    pub fn eval_extended_term(
        &self,
        t: &Term,
        a: &BTreeMap<Variable, Value>,
    ) -> Result<Value, SemanticsError> {
        match t {
            Term::Var(v) => a
                .get(v)
                .cloned()
                .ok_or_else(|| SemanticsError::MissingAssignment(v.to_string())),
            Term::App(f, args) => {
                let role = self
                    .roles
                    .get(&f.name)
                    .ok_or_else(|| SemanticsError::MissingAssignment(f.name.clone()))?;
                let vals: Vec<Value> = args
                    .iter()
                    .map(|arg| self.eval_extended_term(arg, a))
                    .collect::<Result<_, _>>()?;
                match role {
                    SymRole::BaseFunc(base_f) => {
                        let elems: Vec<usize> = vals.iter().map(as_elem).collect::<Result<_, _>>()?;
                        Ok(Value::Elem(self.base.func_table(&base_f.name).get(&elems)))
                    }
                    SymRole::V0(s) => Ok(Value::Var(Variable::new(s.clone(), 0))),
                    SymRole::Next(s) => match &vals[0] {
                        Value::Var(v) => Ok(Value::Var(Variable::new(s.clone(), v.index + 1))),
                        other => Err(type_error("variable", other)),
                    },
                    SymRole::Inj => match &vals[0] {
                        Value::Var(v) => Ok(Value::Term(Term::Var(v.clone()))),
                        other => Err(type_error("variable", other)),
                    },
                    SymRole::LiftedFunc(base_f) => {
                        let ts: Vec<Term> = vals.iter().map(as_term).collect::<Result<_, _>>()?;
                        Ok(Value::Term(Term::app(base_f, ts)))
                    }
                    SymRole::LiftedPred(base_p) => {
                        let ts: Vec<Term> = vals.iter().map(as_term).collect::<Result<_, _>>()?;
                        Ok(Value::Form(Formula::atom(base_p, ts)))
                    }
                    SymRole::ReflEq => Ok(Value::Form(Formula::equals(
                        as_term(&vals[0])?,
                        as_term(&vals[1])?,
                    ))),
                    SymRole::ReflBot => Ok(Value::Form(Formula::Bottom)),
                    SymRole::ReflNot => Ok(Value::Form(Formula::not(as_form(&vals[0])?))),
                    SymRole::ReflOr => Ok(Value::Form(Formula::or(
                        as_form(&vals[0])?,
                        as_form(&vals[1])?,
                    ))),
                    SymRole::ReflForall => match &vals[0] {
                        Value::Var(v) => {
                            Ok(Value::Form(Formula::forall(v.clone(), as_form(&vals[1])?)))
                        }
                        other => Err(type_error("variable", other)),
                    },
                    SymRole::EmptyEnv => Ok(Value::Env(EnvChain::empty())),
                    SymRole::Push => match (&vals[0], &vals[1], &vals[2]) {
                        (Value::Env(e), Value::Var(v), Value::Elem(x)) => {
                            Ok(Value::Env(e.push(v.clone(), *x)))
                        }
                        _ => Err(type_error("env, variable, element", &vals[0])),
                    },
                    SymRole::EvalV => match (&vals[0], &vals[1]) {
                        (Value::Env(e), Value::Var(v)) => Ok(Value::Elem(self.evalv_rw(e, v))),
                        _ => Err(type_error("env, variable", &vals[0])),
                    },
                    SymRole::Eval => match (&vals[0], &vals[1]) {
                        (Value::Env(e), Value::Term(t)) => Ok(Value::Elem(self.eval_term_in(e, t))),
                        _ => Err(type_error("env, term", &vals[0])),
                    },
                }
            }
        }
    }

    /// Satisfaction for formulas of the extended signature. Quantifiers over
    /// base sorts enumerate the carrier; quantifiers over reflective sorts
    /// enumerate the bounded universes.
    pub fn holds_extended(
        &self,
        phi: &Formula,
        a: &mut BTreeMap<Variable, Value>,
    ) -> Result<bool, SemanticsError> {
        match phi {
            Formula::Bottom => Ok(false),
            Formula::Equals(l, r) => {
                Ok(self.eval_extended_term(l, a)? == self.eval_extended_term(r, a)?)
            }
            Formula::Atom(p, args) => {
                if p == self.map.sat() {
                    let e = self.eval_extended_term(&args[0], a)?;
                    let f = self.eval_extended_term(&args[1], a)?;
                    match (e, f) {
                        (Value::Env(e), Value::Form(f)) => Ok(self.sat_verdict(&e, &f)),
                        (e, _) => Err(type_error("env, formula", &e)),
                    }
                } else {
                    let elems: Vec<usize> = args
                        .iter()
                        .map(|arg| {
                            self.eval_extended_term(arg, a).and_then(|v| as_elem(&v))
                        })
                        .collect::<Result<_, _>>()?;
                    Ok(self.base.pred_table(&p.name).get(&elems))
                }
            }
            Formula::Not(f) => Ok(!self.holds_extended(f, a)?),
            Formula::Or(l, r) => Ok(self.holds_extended(l, a)? || self.holds_extended(r, a)?),
            Formula::And(l, r) => Ok(self.holds_extended(l, a)? && self.holds_extended(r, a)?),
            Formula::Implies(l, r) => {
                Ok(!self.holds_extended(l, a)? || self.holds_extended(r, a)?)
            }
            Formula::Iff(l, r) => Ok(self.holds_extended(l, a)? == self.holds_extended(r, a)?),
            Formula::Forall(v, f) => {
                for value in self.quantifier_range(&v.sort)? {
                    let old = a.insert(v.clone(), value);
                    let ok = self.holds_extended(f, a)?;
                    restore(a, v, old);
                    if !ok {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Exists(v, f) => {
                for value in self.quantifier_range(&v.sort)? {
                    let old = a.insert(v.clone(), value);
                    let ok = self.holds_extended(f, a)?;
                    restore(a, v, old);
                    if ok {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    fn quantifier_range(&self, sort: &Sort) -> Result<Vec<Value>, SemanticsError> {
        if self.base.theory.signature.sort(&sort.name).is_some() {
            let n = self.base.carrier(&sort.name);
            return Ok((0..n).map(Value::Elem).collect());
        }
        if sort == self.map.form_sort() {
            return Ok(self
                .form_universe()?
                .iter()
                .cloned()
                .map(Value::Form)
                .collect());
        }
        if sort == self.map.env_sort() {
            return Ok(self.env_universe.iter().cloned().map(Value::Env).collect());
        }
        for s in &self.base.theory.signature.sorts {
            if sort == self.map.var_sort(s) {
                return Ok(self.var_universe[&s.name]
                    .iter()
                    .cloned()
                    .map(Value::Var)
                    .collect());
            }
            if sort == self.map.term_sort(s) {
                return Ok(self
                    .term_universe(s)?
                    .iter()
                    .cloned()
                    .map(Value::Term)
                    .collect());
            }
        }
        Err(SemanticsError::MissingCarrier(sort.name.clone()))
    }
}

fn restore(a: &mut BTreeMap<Variable, Value>, v: &Variable, old: Option<Value>) {
    match old {
        Some(value) => {
            a.insert(v.clone(), value);
        }
        None => {
            a.remove(v);
        }
    }
}

fn as_elem(v: &Value) -> Result<usize, SemanticsError> {
    match v {
        Value::Elem(x) => Ok(*x),
        other => Err(type_error("element", other)),
    }
}

fn as_term(v: &Value) -> Result<Term, SemanticsError> {
    match v {
        Value::Term(t) => Ok(t.clone()),
        other => Err(type_error("term", other)),
    }
}

fn as_form(v: &Value) -> Result<Formula, SemanticsError> {
    match v {
        Value::Form(f) => Ok(f.clone()),
        other => Err(type_error("formula", other)),
    }
}

fn type_error(expected: &str, got: &Value) -> SemanticsError {
    SemanticsError::MissingAssignment(format!("expected {expected}, got {got:?}"))
}

fn advance(idx: &mut [usize], pools: &[&[Term]]) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < pools[i].len() {
            return true;
        }
        idx[i] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{PredSym, Theory};
    use crate::reflection::godel_encode;
    use crate::semantics::models::zk_model;

    fn nat() -> Sort {
        Sort::new("nat")
    }

    fn small_theory() -> Theory {
        Theory {
            signature: Signature {
                sorts: vec![nat()],
                funcs: vec![
                    FuncSym::constant("zero", nat()),
                    FuncSym::new("s", vec![nat()], nat()),
                ],
                preds: vec![PredSym::new("leq", vec![nat(), nat()])],
            },
            ..Default::default()
        }
    }

    #[test]
    fn variable_universe_has_indices_up_to_depth() {
        let m = zk_model(&small_theory(), 2).unwrap();
        let rm = bounded_reflective_model(m, 1).unwrap();
        let vars = rm.var_universe(&nat());
        assert_eq!(vars.len(), 2);
        assert_eq!(vars[1], Variable::new(nat(), 1));
    }

    #[test]
    fn term_universe_matches_brute_force_enumeration() {
        let m = zk_model(&small_theory(), 2).unwrap();
        let rm = bounded_reflective_model(m, 2).unwrap();
        let terms = rm.term_universe(&nat()).unwrap();
        // Brute force: all terms over {v0, v1, v2, zero} with at most two
        // applications of s.
        let zero = FuncSym::constant("zero", nat());
        let s = FuncSym::new("s", vec![nat()], nat());
        let mut expected: Vec<Term> = (0..=2)
            .map(|i| Term::Var(Variable::new(nat(), i)))
            .collect();
        expected.push(Term::constant(&zero));
        let level0 = expected.clone();
        let level1: Vec<Term> = level0
            .iter()
            .map(|t| Term::app(&s, vec![t.clone()]))
            .collect();
        expected.extend(level1.iter().cloned());
        expected.extend(level1.iter().map(|t| Term::app(&s, vec![t.clone()])));
        let got: std::collections::HashSet<&Term> = terms.iter().collect();
        let want: std::collections::HashSet<&Term> = expected.iter().collect();
        assert_eq!(got, want);
        assert!(terms
            .iter()
            .any(|t| t.to_string() == "s(s(zero))"));
    }

    #[test]
    fn env_universe_grows_with_depth() {
        let m = zk_model(&small_theory(), 2).unwrap();
        let rm1 = bounded_reflective_model(m.clone(), 1).unwrap();
        let rm2 = bounded_reflective_model(m, 2).unwrap();
        assert!(rm1.env_universe().len() < rm2.env_universe().len());
        // depth 1: empty chain plus 2 vars x 2 elements.
        assert_eq!(rm1.env_universe().len(), 5);
    }

    #[test]
    fn bottom_is_never_satisfied() {
        let m = zk_model(&small_theory(), 2).unwrap();
        let rm = bounded_reflective_model(m, 2).unwrap();
        let enc = godel_encode(&Formula::Bottom, rm.map()).unwrap();
        assert!(!rm.truth_verdict(&enc).unwrap());
    }

    #[test]
    fn chain_lookup_last_push_wins() {
        let m = zk_model(&small_theory(), 3).unwrap();
        let rm = bounded_reflective_model(m, 2).unwrap();
        let v = Variable::new(nat(), 0);
        let e = EnvChain::empty().push(v.clone(), 1).push(v.clone(), 2);
        assert_eq!(rm.evalv_rw(&e, &v), 2);
        let w = Variable::new(nat(), 1);
        assert_eq!(rm.evalv_rw(&e, &w), 0);
    }

    #[test]
    fn universe_cap_is_enforced() {
        let m = zk_model(&small_theory(), 2).unwrap();
        let rm = BoundedReflectiveModel::new(m, 3, 50).unwrap_err();
        assert!(matches!(rm, SemanticsError::UniverseOverflow(_, 50)));
    }

    #[test]
    fn depth_zero_is_rejected() {
        let m = zk_model(&small_theory(), 2).unwrap();
        assert!(matches!(
            bounded_reflective_model(m, 0),
            Err(SemanticsError::BadDepth)
        ));
    }
}
