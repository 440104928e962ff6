//! Well-formedness checking for signatures and theories.

use std::collections::HashSet;
use std::fmt;

use super::syntax::{Formula, Signature, Sort, Term, Theory};

/// What went wrong, without location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagnosticKind {
    EmptyName,
    DuplicateName(String),
    UndeclaredSort(String),
    UnknownSymbol(String),
    /// A symbol occurrence disagrees with its declaration.
    SymbolMismatch(String),
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    SortMismatch {
        expected: Sort,
        found: Sort,
    },
    NotClosed(String),
    BadDatatype(String),
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagnosticKind::EmptyName => write!(f, "empty name"),
            DiagnosticKind::DuplicateName(n) => write!(f, "duplicate name `{n}`"),
            DiagnosticKind::UndeclaredSort(n) => write!(f, "undeclared sort `{n}`"),
            DiagnosticKind::UnknownSymbol(n) => write!(f, "unknown symbol `{n}`"),
            DiagnosticKind::SymbolMismatch(n) => {
                write!(f, "occurrence of `{n}` disagrees with its declaration")
            }
            DiagnosticKind::ArityMismatch {
                symbol,
                expected,
                found,
            } => write!(f, "`{symbol}` expects {expected} arguments, got {found}"),
            DiagnosticKind::SortMismatch { expected, found } => {
                write!(f, "expected sort {expected}, found {found}")
            }
            DiagnosticKind::NotClosed(v) => write!(f, "free variable {v}"),
            DiagnosticKind::BadDatatype(msg) => write!(f, "bad datatype: {msg}"),
        }
    }
}

/// A well-formedness violation and where it was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub at: String,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, at: impl Into<String>) -> Self {
        Diagnostic {
            kind,
            at: at.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.kind, self.at)
    }
}

/// Check every invariant of a theory; an empty result means well-formed.
pub fn check_theory(theory: &Theory) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    check_signature(&theory.signature, &mut out);
    check_datatypes(theory, &mut out);
    let mut seen_names = HashSet::new();
    for ax in &theory.axioms {
        if !seen_names.insert(&ax.name) {
            out.push(Diagnostic::new(
                DiagnosticKind::DuplicateName(ax.name.clone()),
                format!("axiom {}", ax.name),
            ));
        }
        check_closed_formula(&theory.signature, &ax.formula, &format!("axiom {}", ax.name), &mut out);
    }
    let mut seen_names = HashSet::new();
    for cj in &theory.conjectures {
        if !seen_names.insert(&cj.name) {
            out.push(Diagnostic::new(
                DiagnosticKind::DuplicateName(cj.name.clone()),
                format!("conjecture {}", cj.name),
            ));
        }
        check_closed_formula(
            &theory.signature,
            &cj.formula,
            &format!("conjecture {}", cj.name),
            &mut out,
        );
    }
    out
}

fn check_signature(sig: &Signature, out: &mut Vec<Diagnostic>) {
    let mut names = HashSet::new();
    for s in &sig.sorts {
        if s.name.is_empty() {
            out.push(Diagnostic::new(DiagnosticKind::EmptyName, "sort"));
        }
        if !names.insert(s.name.clone()) {
            out.push(Diagnostic::new(
                DiagnosticKind::DuplicateName(s.name.clone()),
                format!("sort {}", s.name),
            ));
        }
    }
    for f in &sig.funcs {
        if f.name.is_empty() {
            out.push(Diagnostic::new(DiagnosticKind::EmptyName, "function"));
        }
        if !names.insert(f.name.clone()) {
            out.push(Diagnostic::new(
                DiagnosticKind::DuplicateName(f.name.clone()),
                format!("function {}", f.name),
            ));
        }
        for s in f.domain.iter().chain(std::iter::once(&f.codomain)) {
            if sig.sort(&s.name).is_none() {
                out.push(Diagnostic::new(
                    DiagnosticKind::UndeclaredSort(s.name.clone()),
                    format!("function {}", f.name),
                ));
            }
        }
    }
    for p in &sig.preds {
        if p.name.is_empty() {
            out.push(Diagnostic::new(DiagnosticKind::EmptyName, "predicate"));
        }
        if !names.insert(p.name.clone()) {
            out.push(Diagnostic::new(
                DiagnosticKind::DuplicateName(p.name.clone()),
                format!("predicate {}", p.name),
            ));
        }
        for s in &p.domain {
            if sig.sort(&s.name).is_none() {
                out.push(Diagnostic::new(
                    DiagnosticKind::UndeclaredSort(s.name.clone()),
                    format!("predicate {}", p.name),
                ));
            }
        }
    }
}

fn check_datatypes(theory: &Theory, out: &mut Vec<Diagnostic>) {
    let sig = &theory.signature;
    let mut seen = HashSet::new();
    for dt in &theory.datatypes {
        let at = format!("datatype {}", dt.sort.name);
        if !seen.insert(dt.sort.name.clone()) {
            out.push(Diagnostic::new(
                DiagnosticKind::DuplicateName(dt.sort.name.clone()),
                at.clone(),
            ));
        }
        if sig.sort(&dt.sort.name).is_none() {
            out.push(Diagnostic::new(
                DiagnosticKind::UndeclaredSort(dt.sort.name.clone()),
                at.clone(),
            ));
        }
        if dt.constructors.is_empty() {
            out.push(Diagnostic::new(
                DiagnosticKind::BadDatatype("no constructors".into()),
                at.clone(),
            ));
        }
        for c in &dt.constructors {
            match sig.func(&c.name) {
                None => out.push(Diagnostic::new(
                    DiagnosticKind::UnknownSymbol(c.name.clone()),
                    at.clone(),
                )),
                Some(decl) if decl != c => out.push(Diagnostic::new(
                    DiagnosticKind::SymbolMismatch(c.name.clone()),
                    at.clone(),
                )),
                _ => {}
            }
            if c.codomain != dt.sort {
                out.push(Diagnostic::new(
                    DiagnosticKind::BadDatatype(format!(
                        "constructor {} has codomain {}",
                        c.name, c.codomain
                    )),
                    at.clone(),
                ));
            }
        }
    }
}

fn check_closed_formula(sig: &Signature, phi: &Formula, at: &str, out: &mut Vec<Diagnostic>) {
    check_formula(sig, phi, at, out);
    for v in phi.free_vars() {
        out.push(Diagnostic::new(DiagnosticKind::NotClosed(v.to_string()), at.to_string()));
    }
}

fn check_formula(sig: &Signature, phi: &Formula, at: &str, out: &mut Vec<Diagnostic>) {
    match phi {
        Formula::Bottom => {}
        Formula::Equals(l, r) => {
            check_term(sig, l, at, out);
            check_term(sig, r, at, out);
            if l.sort() != r.sort() {
                out.push(Diagnostic::new(
                    DiagnosticKind::SortMismatch {
                        expected: l.sort().clone(),
                        found: r.sort().clone(),
                    },
                    format!("{at}, equality"),
                ));
            }
        }
        Formula::Atom(p, args) => {
            match sig.pred(&p.name) {
                None => out.push(Diagnostic::new(
                    DiagnosticKind::UnknownSymbol(p.name.clone()),
                    at.to_string(),
                )),
                Some(decl) if decl != p => out.push(Diagnostic::new(
                    DiagnosticKind::SymbolMismatch(p.name.clone()),
                    at.to_string(),
                )),
                _ => {}
            }
            if args.len() != p.domain.len() {
                out.push(Diagnostic::new(
                    DiagnosticKind::ArityMismatch {
                        symbol: p.name.clone(),
                        expected: p.domain.len(),
                        found: args.len(),
                    },
                    at.to_string(),
                ));
            }
            for (i, (a, expected)) in args.iter().zip(&p.domain).enumerate() {
                check_term(sig, a, at, out);
                if a.sort() != expected {
                    out.push(Diagnostic::new(
                        DiagnosticKind::SortMismatch {
                            expected: expected.clone(),
                            found: a.sort().clone(),
                        },
                        format!("{at}, {} argument {i}", p.name),
                    ));
                }
            }
        }
        Formula::Not(f) => check_formula(sig, f, at, out),
        Formula::Or(l, r) | Formula::And(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
            check_formula(sig, l, at, out);
            check_formula(sig, r, at, out);
        }
        Formula::Forall(v, f) | Formula::Exists(v, f) => {
            if sig.sort(&v.sort.name).is_none() {
                out.push(Diagnostic::new(
                    DiagnosticKind::UndeclaredSort(v.sort.name.clone()),
                    format!("{at}, binder {v}"),
                ));
            }
            check_formula(sig, f, at, out);
        }
    }
}

fn check_term(sig: &Signature, t: &Term, at: &str, out: &mut Vec<Diagnostic>) {
    match t {
        Term::Var(v) => {
            if sig.sort(&v.sort.name).is_none() {
                out.push(Diagnostic::new(
                    DiagnosticKind::UndeclaredSort(v.sort.name.clone()),
                    format!("{at}, variable {v}"),
                ));
            }
        }
        Term::App(f, args) => {
            match sig.func(&f.name) {
                None => out.push(Diagnostic::new(
                    DiagnosticKind::UnknownSymbol(f.name.clone()),
                    at.to_string(),
                )),
                Some(decl) if decl != f => out.push(Diagnostic::new(
                    DiagnosticKind::SymbolMismatch(f.name.clone()),
                    at.to_string(),
                )),
                _ => {}
            }
            if args.len() != f.domain.len() {
                out.push(Diagnostic::new(
                    DiagnosticKind::ArityMismatch {
                        symbol: f.name.clone(),
                        expected: f.domain.len(),
                        found: args.len(),
                    },
                    at.to_string(),
                ));
            }
            for (i, (a, expected)) in args.iter().zip(&f.domain).enumerate() {
                check_term(sig, a, at, out);
                if a.sort() != expected {
                    out.push(Diagnostic::new(
                        DiagnosticKind::SortMismatch {
                            expected: expected.clone(),
                            found: a.sort().clone(),
                        },
                        format!("{at}, {} argument {i}", f.name),
                    ));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::syntax::{FuncSym, NamedFormula, PredSym, Variable};

    fn nat() -> Sort {
        Sort::new("nat")
    }

    fn pa_fragment() -> Theory {
        let zero = FuncSym::constant("zero", nat());
        let s = FuncSym::new("s", vec![nat()], nat());
        let add = FuncSym::new("add", vec![nat(), nat()], nat());
        let mul = FuncSym::new("mul", vec![nat(), nat()], nat());
        let leq = PredSym::new("leq", vec![nat(), nat()]);
        let x = Variable::new(nat(), 0);
        let axiom = Formula::forall(
            x.clone(),
            Formula::not(Formula::equals(
                Term::app(&s, vec![Term::var(x.clone())]),
                Term::constant(&zero),
            )),
        );
        Theory {
            signature: Signature {
                sorts: vec![nat()],
                funcs: vec![zero.clone(), s.clone(), add, mul],
                preds: vec![leq],
            },
            axioms: vec![NamedFormula::new("ax0", axiom)],
            datatypes: vec![crate::logic::syntax::InductiveDatatype::new(
                nat(),
                vec![zero, s],
            )],
            conjectures: vec![],
        }
    }

    #[test]
    fn well_formed_theory_has_no_diagnostics() {
        assert_eq!(check_theory(&pa_fragment()), vec![]);
    }

    #[test]
    fn unknown_symbol_is_reported() {
        let mut t = pa_fragment();
        let foo = FuncSym::constant("foo", nat());
        t.axioms.push(NamedFormula::new(
            "ax1",
            Formula::equals(Term::constant(&foo), Term::constant(&foo)),
        ));
        let diags = check_theory(&t);
        assert!(diags
            .iter()
            .any(|d| matches!(&d.kind, DiagnosticKind::UnknownSymbol(n) if n == "foo")));
    }

    #[test]
    fn cross_sort_equality_is_reported() {
        let mut t = pa_fragment();
        t.signature.sorts.push(Sort::new("list"));
        let nil = FuncSym::constant("nil", Sort::new("list"));
        t.signature.funcs.push(nil.clone());
        t.axioms.push(NamedFormula::new(
            "ax1",
            Formula::equals(
                Term::constant(&t.signature.func("zero").unwrap().clone()),
                Term::constant(&nil),
            ),
        ));
        let diags = check_theory(&t);
        assert!(diags
            .iter()
            .any(|d| matches!(&d.kind, DiagnosticKind::SortMismatch { .. })));
    }

    #[test]
    fn open_axiom_is_reported() {
        let mut t = pa_fragment();
        t.axioms.push(NamedFormula::new(
            "ax1",
            Formula::equals(
                Term::var(Variable::new(nat(), 0)),
                Term::var(Variable::new(nat(), 0)),
            ),
        ));
        let diags = check_theory(&t);
        assert!(diags
            .iter()
            .any(|d| matches!(&d.kind, DiagnosticKind::NotClosed(_))));
    }
}
