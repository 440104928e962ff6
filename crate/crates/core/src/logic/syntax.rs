//! Core syntax: sorts, symbols, terms, formulas, signatures and theories.
//!
//! All values are immutable after construction; every operation below is a
//! pure function, so the types are freely shareable across threads.

use std::collections::BTreeSet;
use std::fmt;

/// A sort (type) of the multi-sorted language, identified by name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sort {
    pub name: String,
}

impl Sort {
    pub fn new(name: impl Into<String>) -> Self {
        Sort { name: name.into() }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A function symbol `f :: domain_1 x ... x domain_n ~> codomain`.
///
/// Constants are functions of arity 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuncSym {
    pub name: String,
    pub domain: Vec<Sort>,
    pub codomain: Sort,
}

impl FuncSym {
    pub fn new(name: impl Into<String>, domain: Vec<Sort>, codomain: Sort) -> Self {
        FuncSym {
            name: name.into(),
            domain,
            codomain,
        }
    }

    pub fn constant(name: impl Into<String>, codomain: Sort) -> Self {
        Self::new(name, Vec::new(), codomain)
    }

    pub fn arity(&self) -> usize {
        self.domain.len()
    }
}

/// A predicate symbol with its argument sorts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PredSym {
    pub name: String,
    pub domain: Vec<Sort>,
}

impl PredSym {
    pub fn new(name: impl Into<String>, domain: Vec<Sort>) -> Self {
        PredSym {
            name: name.into(),
            domain,
        }
    }

    pub fn arity(&self) -> usize {
        self.domain.len()
    }
}

/// A variable of the countable per-sort family; identified by `(sort, index)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub sort: Sort,
    pub index: usize,
}

impl Variable {
    pub fn new(sort: Sort, index: usize) -> Self {
        Variable { sort, index }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}:{}", self.index, self.sort)
    }
}

/// A term: a variable or a function application.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Variable),
    App(FuncSym, Vec<Term>),
}

impl Term {
    pub fn var(v: Variable) -> Self {
        Term::Var(v)
    }

    pub fn app(f: &FuncSym, args: Vec<Term>) -> Self {
        Term::App(f.clone(), args)
    }

    pub fn constant(f: &FuncSym) -> Self {
        Term::App(f.clone(), Vec::new())
    }

    /// The sort of the term (codomain for applications).
    pub fn sort(&self) -> &Sort {
        match self {
            Term::Var(v) => &v.sort,
            Term::App(f, _) => &f.codomain,
        }
    }

    /// Nesting depth: variables and constants are 0, applications add one.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => {
                if args.is_empty() {
                    0
                } else {
                    1 + args.iter().map(Term::depth).max().unwrap_or(0)
                }
            }
        }
    }

    /// The largest variable index occurring anywhere in the term.
    pub fn max_var_index(&self) -> Option<usize> {
        match self {
            Term::Var(v) => Some(v.index),
            Term::App(_, args) => args.iter().filter_map(Term::max_var_index).max(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "x{}", v.index),
            Term::App(sym, args) => {
                f.write_str(&sym.name)?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// A formula of the surface language.
///
/// A *core* formula uses only `Bottom`, `Equals`, `Atom`, `Not`, `Or` and
/// `Forall`; the remaining connectives are surface sugar removed by
/// [`super::desugar`] before any reflective processing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bottom,
    Equals(Term, Term),
    Atom(PredSym, Vec<Term>),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Variable, Box<Formula>),
    Exists(Variable, Box<Formula>),
}

impl Formula {
    pub fn equals(lhs: Term, rhs: Term) -> Self {
        Formula::Equals(lhs, rhs)
    }

    pub fn atom(p: &PredSym, args: Vec<Term>) -> Self {
        Formula::Atom(p.clone(), args)
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Self {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Self {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Self {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Self {
        Formula::Iff(Box::new(lhs), Box::new(rhs))
    }

    pub fn forall(v: Variable, f: Formula) -> Self {
        Formula::Forall(v, Box::new(f))
    }

    pub fn exists(v: Variable, f: Formula) -> Self {
        Formula::Exists(v, Box::new(f))
    }

    /// Left-associated conjunction of a non-empty list.
    pub fn conjoin(fs: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        fs.into_iter().reduce(Formula::and)
    }

    /// True iff the formula stays within the core connective set.
    pub fn is_core(&self) -> bool {
        match self {
            Formula::Bottom | Formula::Equals(..) | Formula::Atom(..) => true,
            Formula::Not(f) | Formula::Forall(_, f) => f.is_core(),
            Formula::Or(l, r) => l.is_core() && r.is_core(),
            Formula::And(..) | Formula::Implies(..) | Formula::Iff(..) | Formula::Exists(..) => {
                false
            }
        }
    }

    /// Structural depth. Atoms count one step above their deepest term;
    /// every connective and quantifier adds one.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Bottom => 0,
            Formula::Equals(l, r) => 1 + l.depth().max(r.depth()),
            Formula::Atom(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.depth(),
            Formula::Or(l, r)
            | Formula::And(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// The largest variable index occurring anywhere (free or bound).
    pub fn max_var_index(&self) -> Option<usize> {
        match self {
            Formula::Bottom => None,
            Formula::Equals(l, r) => l.max_var_index().max(r.max_var_index()),
            Formula::Atom(_, args) => args.iter().filter_map(Term::max_var_index).max(),
            Formula::Not(f) => f.max_var_index(),
            Formula::Forall(v, f) | Formula::Exists(v, f) => Some(v.index).max(f.max_var_index()),
            Formula::Or(l, r)
            | Formula::And(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => l.max_var_index().max(r.max_var_index()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Bottom => f.write_str("false"),
            Formula::Equals(l, r) => write!(f, "({l} = {r})"),
            Formula::Atom(p, args) => {
                f.write_str(&p.name)?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
            Formula::Not(g) => write!(f, "~{g}"),
            Formula::Or(l, r) => write!(f, "({l} | {r})"),
            Formula::And(l, r) => write!(f, "({l} & {r})"),
            Formula::Implies(l, r) => write!(f, "({l} -> {r})"),
            Formula::Iff(l, r) => write!(f, "({l} <-> {r})"),
            Formula::Forall(v, g) => write!(f, "forall {v}. {g}"),
            Formula::Exists(v, g) => write!(f, "exists {v}. {g}"),
        }
    }
}

/// A formula together with the name it is referred to by in output files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedFormula {
    pub name: String,
    pub formula: Formula,
}

impl NamedFormula {
    pub fn new(name: impl Into<String>, formula: Formula) -> Self {
        NamedFormula {
            name: name.into(),
            formula,
        }
    }
}

/// The declared vocabulary: sorts, function symbols and predicate symbols.
///
/// Declaration order is preserved; serialisers impose their own ordering.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    pub sorts: Vec<Sort>,
    pub funcs: Vec<FuncSym>,
    pub preds: Vec<PredSym>,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn sort(&self, name: &str) -> Option<&Sort> {
        self.sorts.iter().find(|s| s.name == name)
    }

    pub fn func(&self, name: &str) -> Option<&FuncSym> {
        self.funcs.iter().find(|f| f.name == name)
    }

    pub fn pred(&self, name: &str) -> Option<&PredSym> {
        self.preds.iter().find(|p| p.name == name)
    }

    /// True if any sort, function or predicate carries this name.
    pub fn has_name(&self, name: &str) -> bool {
        self.sort(name).is_some() || self.func(name).is_some() || self.pred(name).is_some()
    }

    /// Constants of a given sort, in declaration order.
    pub fn constants_of<'a>(&'a self, sort: &'a Sort) -> impl Iterator<Item = &'a FuncSym> + 'a {
        self.funcs
            .iter()
            .filter(move |f| f.arity() == 0 && &f.codomain == sort)
    }
}

/// An inductive datatype: a sort together with its constructor symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductiveDatatype {
    pub sort: Sort,
    pub constructors: Vec<FuncSym>,
}

impl InductiveDatatype {
    pub fn new(sort: Sort, constructors: Vec<FuncSym>) -> Self {
        InductiveDatatype { sort, constructors }
    }

    /// Argument positions of `ctor` whose sort is the datatype itself.
    pub fn recursive_positions(&self, ctor: &FuncSym) -> Vec<usize> {
        ctor.domain
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == self.sort)
            .map(|(i, _)| i)
            .collect()
    }
}

/// A theory: signature, closed axioms, datatype declarations and named
/// conjectures.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Theory {
    pub signature: Signature,
    pub axioms: Vec<NamedFormula>,
    pub datatypes: Vec<InductiveDatatype>,
    pub conjectures: Vec<NamedFormula>,
}

impl Theory {
    pub fn datatype_of(&self, sort: &Sort) -> Option<&InductiveDatatype> {
        self.datatypes.iter().find(|d| &d.sort == sort)
    }
}

/// Sorted set of free variables; the ordering is `(sort name, index)`.
pub type VarSet = BTreeSet<Variable>;

#[cfg(test)]
mod tests {
    use super::*;

    fn nat() -> Sort {
        Sort::new("nat")
    }

    #[test]
    fn term_depth_counts_applications() {
        let zero = FuncSym::constant("zero", nat());
        let s = FuncSym::new("s", vec![nat()], nat());
        let z = Term::constant(&zero);
        assert_eq!(z.depth(), 0);
        let sz = Term::app(&s, vec![z.clone()]);
        assert_eq!(sz.depth(), 1);
        let ssz = Term::app(&s, vec![sz]);
        assert_eq!(ssz.depth(), 2);
        assert_eq!(Term::var(Variable::new(nat(), 3)).depth(), 0);
    }

    #[test]
    fn formula_depth_and_core() {
        let zero = FuncSym::constant("zero", nat());
        let z = Term::constant(&zero);
        let eq = Formula::equals(z.clone(), z.clone());
        assert_eq!(eq.depth(), 1);
        assert!(eq.is_core());
        let ex = Formula::exists(Variable::new(nat(), 0), eq.clone());
        assert!(!ex.is_core());
        assert_eq!(Formula::Bottom.depth(), 0);
        assert_eq!(Formula::not(eq).depth(), 2);
    }

    #[test]
    fn display_is_readable() {
        let s = FuncSym::new("s", vec![nat()], nat());
        let x = Variable::new(nat(), 0);
        let f = Formula::forall(
            x.clone(),
            Formula::not(Formula::equals(
                Term::app(&s, vec![Term::var(x)]),
                Term::constant(&FuncSym::constant("zero", nat())),
            )),
        );
        assert_eq!(f.to_string(), "forall x0:nat. ~(s(x0) = zero)");
    }
}
