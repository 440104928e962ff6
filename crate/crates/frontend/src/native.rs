//! The native parenthesized theory and model formats.
//!
//! Theory grammar:
//!
//! ```text
//! (sort s)
//! (fun f (s1 .. sn) s)
//! (pred p (s1 .. sn))
//! (datatype s (c s1 .. sn) ..)            ; ground
//! (datatype (T a ..) (c a (T a) ..) ..)   ; parametric template
//! (axiom F)
//! (conjecture name F)
//! ```
//!
//! with connective heads `and or not => <=> = forall exists false`, binders
//! written `(forall ((x s) ..) F)`, and `;` comments. Function/predicate
//! declarations and binders may mention ground instantiations of templates,
//! e.g. `(List nat)`. Parsed variables are indexed per sort in binding
//! order, which makes parsing and rendering mutually inverse on
//! parser-produced theories.
//!
//! Model grammar:
//!
//! ```text
//! (model (carrier s n) .. (fun f ((a1 .. an) v) ..) (pred p (a1 .. an) ..))
//! ```

use std::collections::BTreeMap;

use reflect_core::logic::{
    check_theory, Formula, FuncSym, InductiveDatatype, NamedFormula, PredSym, Signature, Sort,
    Term, Theory, Variable,
};
use reflect_core::semantics::{FiniteModel, FuncTable, PredTable, SemanticsError};

use crate::mono;
use crate::sexp::{parse_sexps, Pos, Sexp};
use crate::FrontendError;

pub(crate) const KEYWORDS: &[&str] = &[
    "sort",
    "fun",
    "pred",
    "datatype",
    "axiom",
    "conjecture",
    "model",
    "carrier",
    "and",
    "or",
    "not",
    "=>",
    "<=>",
    "=",
    "forall",
    "exists",
    "false",
];

/// A sort expression before monomorphization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SortExpr {
    Name(String),
    App(String, Vec<SortExpr>),
}

impl SortExpr {
    pub fn is_ground_name(&self) -> bool {
        matches!(self, SortExpr::Name(_))
    }
}

/// A term before symbol resolution: a bare name or an application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct STerm {
    pub head: String,
    pub args: Vec<STerm>,
    pub pos: Pos,
}

/// A formula before symbol resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SFormula {
    False,
    Eq(STerm, STerm),
    Atom(String, Vec<STerm>, Pos),
    Not(Box<SFormula>),
    Or(Vec<SFormula>),
    And(Vec<SFormula>),
    Implies(Box<SFormula>, Box<SFormula>),
    Iff(Box<SFormula>, Box<SFormula>),
    Forall(Vec<(String, SortExpr)>, Box<SFormula>),
    Exists(Vec<(String, SortExpr)>, Box<SFormula>),
}

/// One top-level declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Sort(String),
    Fun {
        name: String,
        domain: Vec<SortExpr>,
        codomain: SortExpr,
    },
    Pred {
        name: String,
        domain: Vec<SortExpr>,
    },
    Datatype {
        name: String,
        params: Vec<String>,
        ctors: Vec<(String, Vec<SortExpr>)>,
    },
    Axiom(SFormula),
    Conjecture(String, SFormula),
}

/// A theory as written, before monomorphization and lowering.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SurfaceTheory {
    pub decls: Vec<Decl>,
}

fn perr(pos: Pos, msg: impl Into<String>) -> FrontendError {
    FrontendError::Parse {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '\'' || c == '+')
}

fn check_decl_name(name: &str, pos: Pos) -> Result<(), FrontendError> {
    if !is_ident(name) || KEYWORDS.contains(&name) {
        return Err(perr(pos, format!("`{name}` is not a legal identifier")));
    }
    if name.starts_with(reflect_core::reflection::RESERVED_PREFIX) {
        return Err(FrontendError::ReservedPrefix(name.to_string()));
    }
    Ok(())
}

/// Parse the surface form without resolving symbols.
pub fn parse_surface(text: &str) -> Result<SurfaceTheory, FrontendError> {
    let forms = parse_sexps(text)?;
    let mut decls = Vec::new();
    for form in forms {
        let items = form
            .list()
            .ok_or_else(|| perr(form.pos(), "expected a declaration list"))?;
        let head = items
            .first()
            .and_then(Sexp::atom)
            .ok_or_else(|| perr(form.pos(), "expected a declaration head"))?;
        match head {
            "sort" => {
                let name = expect_atom(items.get(1), form.pos())?;
                check_decl_name(name, form.pos())?;
                expect_len(items, 2, form.pos())?;
                decls.push(Decl::Sort(name.to_string()));
            }
            "fun" => {
                expect_len(items, 4, form.pos())?;
                let name = expect_atom(items.get(1), form.pos())?;
                check_decl_name(name, form.pos())?;
                let domain = parse_sort_list(&items[2])?;
                let codomain = parse_sort_expr(&items[3])?;
                decls.push(Decl::Fun {
                    name: name.to_string(),
                    domain,
                    codomain,
                });
            }
            "pred" => {
                expect_len(items, 3, form.pos())?;
                let name = expect_atom(items.get(1), form.pos())?;
                check_decl_name(name, form.pos())?;
                let domain = parse_sort_list(&items[2])?;
                decls.push(Decl::Pred {
                    name: name.to_string(),
                    domain,
                });
            }
            "datatype" => {
                if items.len() < 3 {
                    return Err(perr(form.pos(), "datatype needs a sort and constructors"));
                }
                let (name, params) = match &items[1] {
                    Sexp::Atom(a, p) => {
                        check_decl_name(a, *p)?;
                        (a.clone(), Vec::new())
                    }
                    Sexp::List(head_items, p) => {
                        let name = expect_atom(head_items.first(), *p)?;
                        check_decl_name(name, *p)?;
                        let mut params = Vec::new();
                        for it in &head_items[1..] {
                            let param = it
                                .atom()
                                .ok_or_else(|| perr(it.pos(), "expected a parameter name"))?;
                            params.push(param.to_string());
                        }
                        (name.to_string(), params)
                    }
                    other => return Err(perr(other.pos(), "expected a datatype head")),
                };
                let mut ctors = Vec::new();
                for it in &items[2..] {
                    let centry = it
                        .list()
                        .ok_or_else(|| perr(it.pos(), "expected a constructor list"))?;
                    let cname = expect_atom(centry.first(), it.pos())?;
                    check_decl_name(cname, it.pos())?;
                    let mut args = Vec::new();
                    for arg in &centry[1..] {
                        args.push(parse_sort_expr(arg)?);
                    }
                    ctors.push((cname.to_string(), args));
                }
                decls.push(Decl::Datatype {
                    name,
                    params,
                    ctors,
                });
            }
            "axiom" => {
                expect_len(items, 2, form.pos())?;
                decls.push(Decl::Axiom(parse_formula(&items[1])?));
            }
            "conjecture" => {
                expect_len(items, 3, form.pos())?;
                let name = expect_atom(items.get(1), form.pos())?;
                decls.push(Decl::Conjecture(
                    name.to_string(),
                    parse_formula(&items[2])?,
                ));
            }
            other => {
                return Err(perr(form.pos(), format!("unknown declaration `{other}`")));
            }
        }
    }
    Ok(SurfaceTheory { decls })
}

fn expect_atom<'a>(item: Option<&'a Sexp>, pos: Pos) -> Result<&'a str, FrontendError> {
    item.and_then(Sexp::atom)
        .ok_or_else(|| perr(pos, "expected a name"))
}

fn expect_len(items: &[Sexp], len: usize, pos: Pos) -> Result<(), FrontendError> {
    if items.len() != len {
        return Err(perr(pos, format!("expected {} items, got {}", len, items.len())));
    }
    Ok(())
}

fn parse_sort_expr(sexp: &Sexp) -> Result<SortExpr, FrontendError> {
    match sexp {
        Sexp::Atom(a, _) => Ok(SortExpr::Name(a.clone())),
        Sexp::List(items, pos) => {
            let head = expect_atom(items.first(), *pos)?;
            let args = items[1..]
                .iter()
                .map(parse_sort_expr)
                .collect::<Result<Vec<_>, _>>()?;
            if args.is_empty() {
                return Err(perr(*pos, "sort application needs arguments"));
            }
            Ok(SortExpr::App(head.to_string(), args))
        }
        Sexp::Str(_, pos) => Err(perr(*pos, "expected a sort")),
    }
}

fn parse_sort_list(sexp: &Sexp) -> Result<Vec<SortExpr>, FrontendError> {
    let items = sexp
        .list()
        .ok_or_else(|| perr(sexp.pos(), "expected a sort list"))?;
    items.iter().map(parse_sort_expr).collect()
}

fn parse_term(sexp: &Sexp) -> Result<STerm, FrontendError> {
    match sexp {
        Sexp::Atom(a, pos) => Ok(STerm {
            head: a.clone(),
            args: Vec::new(),
            pos: *pos,
        }),
        Sexp::List(items, pos) => {
            let head = expect_atom(items.first(), *pos)?;
            let args = items[1..]
                .iter()
                .map(parse_term)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(STerm {
                head: head.to_string(),
                args,
                pos: *pos,
            })
        }
        Sexp::Str(_, pos) => Err(perr(*pos, "expected a term")),
    }
}

fn parse_binders(sexp: &Sexp) -> Result<Vec<(String, SortExpr)>, FrontendError> {
    let items = sexp
        .list()
        .ok_or_else(|| perr(sexp.pos(), "expected a binder list"))?;
    let mut out = Vec::new();
    for it in items {
        let pair = it
            .list()
            .ok_or_else(|| perr(it.pos(), "expected a (name sort) binder"))?;
        if pair.len() != 2 {
            return Err(perr(it.pos(), "expected a (name sort) binder"));
        }
        let name = expect_atom(pair.first(), it.pos())?;
        out.push((name.to_string(), parse_sort_expr(&pair[1])?));
    }
    if out.is_empty() {
        return Err(perr(sexp.pos(), "binder list is empty"));
    }
    Ok(out)
}

fn parse_formula(sexp: &Sexp) -> Result<SFormula, FrontendError> {
    match sexp {
        Sexp::Atom(a, pos) => match a.as_str() {
            "false" => Ok(SFormula::False),
            _ => Ok(SFormula::Atom(a.clone(), Vec::new(), *pos)),
        },
        Sexp::List(items, pos) => {
            let head = expect_atom(items.first(), *pos)?;
            match head {
                "and" | "or" => {
                    if items.len() < 3 {
                        return Err(perr(*pos, format!("`{head}` needs at least two operands")));
                    }
                    let parts = items[1..]
                        .iter()
                        .map(parse_formula)
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(if head == "and" {
                        SFormula::And(parts)
                    } else {
                        SFormula::Or(parts)
                    })
                }
                "not" => {
                    expect_len(items, 2, *pos)?;
                    Ok(SFormula::Not(Box::new(parse_formula(&items[1])?)))
                }
                "=>" => {
                    expect_len(items, 3, *pos)?;
                    Ok(SFormula::Implies(
                        Box::new(parse_formula(&items[1])?),
                        Box::new(parse_formula(&items[2])?),
                    ))
                }
                "<=>" => {
                    expect_len(items, 3, *pos)?;
                    Ok(SFormula::Iff(
                        Box::new(parse_formula(&items[1])?),
                        Box::new(parse_formula(&items[2])?),
                    ))
                }
                "=" => {
                    expect_len(items, 3, *pos)?;
                    Ok(SFormula::Eq(parse_term(&items[1])?, parse_term(&items[2])?))
                }
                "forall" | "exists" => {
                    expect_len(items, 3, *pos)?;
                    let binders = parse_binders(&items[1])?;
                    let body = Box::new(parse_formula(&items[2])?);
                    Ok(if head == "forall" {
                        SFormula::Forall(binders, body)
                    } else {
                        SFormula::Exists(binders, body)
                    })
                }
                "false" => Err(perr(*pos, "`false` takes no arguments")),
                _ => {
                    let args = items[1..]
                        .iter()
                        .map(parse_term)
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(SFormula::Atom(head.to_string(), args, *pos))
                }
            }
        }
        Sexp::Str(_, pos) => Err(perr(*pos, "expected a formula")),
    }
}

// ---------------------------------------------------------------------------
// Lowering a ground surface theory into the core representation.
// ---------------------------------------------------------------------------

struct Lowerer<'a> {
    sig: &'a Signature,
    /// Stack of (name, variable) bindings; lookup walks from the back.
    scope: Vec<(String, Variable)>,
}

impl<'a> Lowerer<'a> {
    fn bound_count(&self, sort: &Sort) -> usize {
        self.scope.iter().filter(|(_, v)| &v.sort == sort).count()
    }

    fn resolve_sort(&self, expr: &SortExpr, pos: Pos) -> Result<Sort, FrontendError> {
        match expr {
            SortExpr::Name(n) => self
                .sig
                .sort(n)
                .cloned()
                .ok_or_else(|| perr(pos, format!("undeclared sort `{n}`"))),
            SortExpr::App(n, _) => Err(FrontendError::UnresolvedParameter(n.clone())),
        }
    }

    fn lower_term(&mut self, t: &STerm) -> Result<Term, FrontendError> {
        if t.args.is_empty() {
            if let Some((_, v)) = self.scope.iter().rev().find(|(n, _)| n == &t.head) {
                return Ok(Term::Var(v.clone()));
            }
        }
        let f = self
            .sig
            .func(&t.head)
            .ok_or_else(|| perr(t.pos, format!("unknown function `{}`", t.head)))?
            .clone();
        if f.arity() != t.args.len() {
            return Err(perr(
                t.pos,
                format!(
                    "`{}` expects {} arguments, got {}",
                    t.head,
                    f.arity(),
                    t.args.len()
                ),
            ));
        }
        let args = t
            .args
            .iter()
            .map(|a| self.lower_term(a))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Term::App(f, args))
    }

    fn lower_formula(&mut self, f: &SFormula) -> Result<Formula, FrontendError> {
        match f {
            SFormula::False => Ok(Formula::Bottom),
            SFormula::Eq(l, r) => Ok(Formula::Equals(self.lower_term(l)?, self.lower_term(r)?)),
            SFormula::Atom(name, args, pos) => {
                let p = self
                    .sig
                    .pred(name)
                    .ok_or_else(|| perr(*pos, format!("unknown predicate `{name}`")))?
                    .clone();
                if p.arity() != args.len() {
                    return Err(perr(
                        *pos,
                        format!(
                            "`{}` expects {} arguments, got {}",
                            name,
                            p.arity(),
                            args.len()
                        ),
                    ));
                }
                let lowered = args
                    .iter()
                    .map(|a| self.lower_term(a))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Formula::Atom(p, lowered))
            }
            SFormula::Not(g) => Ok(Formula::not(self.lower_formula(g)?)),
            SFormula::Or(parts) => self.fold_nary(parts, Formula::or),
            SFormula::And(parts) => self.fold_nary(parts, Formula::and),
            SFormula::Implies(l, r) => Ok(Formula::implies(
                self.lower_formula(l)?,
                self.lower_formula(r)?,
            )),
            SFormula::Iff(l, r) => Ok(Formula::iff(
                self.lower_formula(l)?,
                self.lower_formula(r)?,
            )),
            SFormula::Forall(binders, body) => self.lower_quant(binders, body, true),
            SFormula::Exists(binders, body) => self.lower_quant(binders, body, false),
        }
    }

    fn fold_nary(
        &mut self,
        parts: &[SFormula],
        op: fn(Formula, Formula) -> Formula,
    ) -> Result<Formula, FrontendError> {
        let lowered = parts
            .iter()
            .map(|p| self.lower_formula(p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(lowered.into_iter().reduce(op).expect("non-empty"))
    }

    fn lower_quant(
        &mut self,
        binders: &[(String, SortExpr)],
        body: &SFormula,
        forall: bool,
    ) -> Result<Formula, FrontendError> {
        let mut vars = Vec::new();
        for (name, sexpr) in binders {
            let sort = self.resolve_sort(sexpr, Pos { line: 0, col: 0 })?;
            let v = Variable::new(sort.clone(), self.bound_count(&sort));
            self.scope.push((name.clone(), v.clone()));
            vars.push(v);
        }
        let lowered = self.lower_formula(body)?;
        self.scope.truncate(self.scope.len() - binders.len());
        Ok(vars.into_iter().rev().fold(lowered, |acc, v| {
            if forall {
                Formula::forall(v, acc)
            } else {
                Formula::exists(v, acc)
            }
        }))
    }
}

/// Lower a ground surface theory into the core representation; the result
/// is checked for well-formedness.
pub fn lower(surface: &SurfaceTheory) -> Result<Theory, FrontendError> {
    let mut sig = Signature::new();
    let mut datatypes: Vec<(String, Vec<String>)> = Vec::new();
    // Signature first: declarations may appear in any order relative to use.
    for decl in &surface.decls {
        match decl {
            Decl::Sort(name) => sig.sorts.push(Sort::new(name.clone())),
            Decl::Fun {
                name,
                domain,
                codomain,
            } => {
                let domain = domain
                    .iter()
                    .map(|s| ground_sort(s))
                    .collect::<Result<Vec<_>, _>>()?;
                sig.funcs
                    .push(FuncSym::new(name.clone(), domain, ground_sort(codomain)?));
            }
            Decl::Pred { name, domain } => {
                let domain = domain
                    .iter()
                    .map(|s| ground_sort(s))
                    .collect::<Result<Vec<_>, _>>()?;
                sig.preds.push(PredSym::new(name.clone(), domain));
            }
            Decl::Datatype {
                name,
                params,
                ctors,
            } => {
                if !params.is_empty() {
                    return Err(FrontendError::UnresolvedParameter(params[0].clone()));
                }
                datatypes.push((name.clone(), ctors.iter().map(|(c, _)| c.clone()).collect()));
            }
            _ => {}
        }
    }

    let mut theory = Theory {
        signature: sig,
        ..Default::default()
    };
    for (sort_name, ctor_names) in datatypes {
        let sort = Sort::new(sort_name.clone());
        let mut ctors = Vec::new();
        for c in ctor_names {
            let f = theory
                .signature
                .func(&c)
                .ok_or_else(|| FrontendError::Theory(vec![reflect_core::Diagnostic::new(
                    reflect_core::logic::DiagnosticKind::UnknownSymbol(c.clone()),
                    format!("datatype {sort_name}"),
                )]))?
                .clone();
            ctors.push(f);
        }
        theory.datatypes.push(InductiveDatatype::new(sort, ctors));
    }

    let mut axiom_idx = 0usize;
    for decl in &surface.decls {
        match decl {
            Decl::Axiom(f) => {
                let mut lowerer = Lowerer {
                    sig: &theory.signature,
                    scope: Vec::new(),
                };
                let formula = lowerer.lower_formula(f)?;
                theory
                    .axioms
                    .push(NamedFormula::new(format!("ax{axiom_idx}"), formula));
                axiom_idx += 1;
            }
            Decl::Conjecture(name, f) => {
                let mut lowerer = Lowerer {
                    sig: &theory.signature,
                    scope: Vec::new(),
                };
                let formula = lowerer.lower_formula(f)?;
                theory.conjectures.push(NamedFormula::new(name.clone(), formula));
            }
            _ => {}
        }
    }

    let diags = check_theory(&theory);
    if !diags.is_empty() {
        return Err(FrontendError::Theory(diags));
    }
    Ok(theory)
}

fn ground_sort(expr: &SortExpr) -> Result<Sort, FrontendError> {
    match expr {
        SortExpr::Name(n) => Ok(Sort::new(n.clone())),
        SortExpr::App(n, _) => Err(FrontendError::UnresolvedParameter(n.clone())),
    }
}

/// Parse, monomorphize and lower a theory from text.
pub fn parse_theory(text: &str) -> Result<Theory, FrontendError> {
    let surface = parse_surface(text)?;
    let ground = mono::monomorphize(&surface)?;
    lower(&ground)
}

/// Parse a single formula against an existing (ground) signature.
pub fn parse_formula_str(text: &str, sig: &Signature) -> Result<Formula, FrontendError> {
    let forms = parse_sexps(text)?;
    let [form] = forms.as_slice() else {
        return Err(perr(Pos { line: 1, col: 1 }, "expected exactly one formula"));
    };
    let surface = parse_formula(form)?;
    let mut lowerer = Lowerer {
        sig,
        scope: Vec::new(),
    };
    lowerer.lower_formula(&surface)
}

// ---------------------------------------------------------------------------
// Rendering back to the native format.
// ---------------------------------------------------------------------------

fn var_name(v: &Variable) -> String {
    format!("x_{}_{}", v.sort.name, v.index)
}

fn render_term(t: &Term, out: &mut String) {
    match t {
        Term::Var(v) => out.push_str(&var_name(v)),
        Term::App(f, args) => {
            if args.is_empty() {
                out.push_str(&f.name);
            } else {
                out.push('(');
                out.push_str(&f.name);
                for a in args {
                    out.push(' ');
                    render_term(a, out);
                }
                out.push(')');
            }
        }
    }
}

fn render_formula(f: &Formula, out: &mut String) {
    match f {
        Formula::Bottom => out.push_str("false"),
        Formula::Equals(l, r) => {
            out.push_str("(= ");
            render_term(l, out);
            out.push(' ');
            render_term(r, out);
            out.push(')');
        }
        Formula::Atom(p, args) => {
            if args.is_empty() {
                out.push_str(&p.name);
            } else {
                out.push('(');
                out.push_str(&p.name);
                for a in args {
                    out.push(' ');
                    render_term(a, out);
                }
                out.push(')');
            }
        }
        Formula::Not(g) => {
            out.push_str("(not ");
            render_formula(g, out);
            out.push(')');
        }
        Formula::Or(l, r) => render_binary("or", l, r, out),
        Formula::And(l, r) => render_binary("and", l, r, out),
        Formula::Implies(l, r) => render_binary("=>", l, r, out),
        Formula::Iff(l, r) => render_binary("<=>", l, r, out),
        Formula::Forall(v, g) => render_quant("forall", v, g, out),
        Formula::Exists(v, g) => render_quant("exists", v, g, out),
    }
}

fn render_binary(head: &str, l: &Formula, r: &Formula, out: &mut String) {
    out.push('(');
    out.push_str(head);
    out.push(' ');
    render_formula(l, out);
    out.push(' ');
    render_formula(r, out);
    out.push(')');
}

fn render_quant(head: &str, v: &Variable, body: &Formula, out: &mut String) {
    out.push('(');
    out.push_str(head);
    out.push_str(" ((");
    out.push_str(&var_name(v));
    out.push(' ');
    out.push_str(&v.sort.name);
    out.push_str(")) ");
    render_formula(body, out);
    out.push(')');
}

/// Render a theory in the native format. Inverse of [`parse_theory`] on
/// parser-produced theories (binder indices must follow binding order).
pub fn render_theory(theory: &Theory) -> String {
    let mut out = String::new();
    for s in &theory.signature.sorts {
        out.push_str(&format!("(sort {})\n", s.name));
    }
    for f in &theory.signature.funcs {
        let domain: Vec<&str> = f.domain.iter().map(|s| s.name.as_str()).collect();
        out.push_str(&format!(
            "(fun {} ({}) {})\n",
            f.name,
            domain.join(" "),
            f.codomain.name
        ));
    }
    for p in &theory.signature.preds {
        let domain: Vec<&str> = p.domain.iter().map(|s| s.name.as_str()).collect();
        out.push_str(&format!("(pred {} ({}))\n", p.name, domain.join(" ")));
    }
    for dt in &theory.datatypes {
        out.push_str(&format!("(datatype {}", dt.sort.name));
        for c in &dt.constructors {
            let domain: Vec<&str> = c.domain.iter().map(|s| s.name.as_str()).collect();
            if domain.is_empty() {
                out.push_str(&format!(" ({})", c.name));
            } else {
                out.push_str(&format!(" ({} {})", c.name, domain.join(" ")));
            }
        }
        out.push_str(")\n");
    }
    for ax in &theory.axioms {
        let mut f = String::new();
        render_formula(&ax.formula, &mut f);
        out.push_str(&format!("(axiom {f})\n"));
    }
    for cj in &theory.conjectures {
        let mut f = String::new();
        render_formula(&cj.formula, &mut f);
        out.push_str(&format!("(conjecture {} {f})\n", cj.name));
    }
    out
}

// ---------------------------------------------------------------------------
// Model format.
// ---------------------------------------------------------------------------

/// A parsed model file: carrier sizes and explicit tables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModelSpec {
    pub carriers: BTreeMap<String, usize>,
    pub funcs: BTreeMap<String, Vec<(Vec<usize>, usize)>>,
    pub preds: BTreeMap<String, Vec<Vec<usize>>>,
}

/// Parse the native model format.
pub fn parse_model(text: &str) -> Result<ModelSpec, FrontendError> {
    let forms = parse_sexps(text)?;
    let [form] = forms.as_slice() else {
        return Err(perr(
            Pos { line: 1, col: 1 },
            "expected exactly one (model ..) form",
        ));
    };
    let items = form
        .list()
        .ok_or_else(|| perr(form.pos(), "expected (model ..)"))?;
    if items.first().and_then(Sexp::atom) != Some("model") {
        return Err(perr(form.pos(), "expected (model ..)"));
    }
    let mut spec = ModelSpec::default();
    for entry in &items[1..] {
        let fields = entry
            .list()
            .ok_or_else(|| perr(entry.pos(), "expected a model entry"))?;
        let head = expect_atom(fields.first(), entry.pos())?;
        match head {
            "carrier" => {
                expect_len(fields, 3, entry.pos())?;
                let sort = expect_atom(fields.get(1), entry.pos())?;
                let n = parse_usize(&fields[2])?;
                spec.carriers.insert(sort.to_string(), n);
            }
            "fun" => {
                let name = expect_atom(fields.get(1), entry.pos())?;
                let mut entries = Vec::new();
                for row in &fields[2..] {
                    let pair = row
                        .list()
                        .ok_or_else(|| perr(row.pos(), "expected ((args) value)"))?;
                    if pair.len() != 2 {
                        return Err(perr(row.pos(), "expected ((args) value)"));
                    }
                    let args = pair[0]
                        .list()
                        .ok_or_else(|| perr(pair[0].pos(), "expected an argument list"))?
                        .iter()
                        .map(parse_usize)
                        .collect::<Result<Vec<_>, _>>()?;
                    entries.push((args, parse_usize(&pair[1])?));
                }
                spec.funcs.insert(name.to_string(), entries);
            }
            "pred" => {
                let name = expect_atom(fields.get(1), entry.pos())?;
                let mut rows = Vec::new();
                for row in &fields[2..] {
                    let tuple = row
                        .list()
                        .ok_or_else(|| perr(row.pos(), "expected a tuple"))?
                        .iter()
                        .map(parse_usize)
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push(tuple);
                }
                spec.preds.insert(name.to_string(), rows);
            }
            other => return Err(perr(entry.pos(), format!("unknown model entry `{other}`"))),
        }
    }
    Ok(spec)
}

fn parse_usize(sexp: &Sexp) -> Result<usize, FrontendError> {
    sexp.atom()
        .and_then(|a| a.parse().ok())
        .ok_or_else(|| perr(sexp.pos(), "expected a number"))
}

impl ModelSpec {
    /// Build a validated finite model of `theory` from the tables.
    pub fn into_model(&self, theory: &Theory) -> Result<FiniteModel, SemanticsError> {
        let mut funcs = BTreeMap::new();
        for f in &theory.signature.funcs {
            let entries = self
                .funcs
                .get(&f.name)
                .ok_or_else(|| SemanticsError::BadTable(f.name.clone()))?;
            let shape: Vec<usize> = f
                .domain
                .iter()
                .map(|s| self.carriers.get(&s.name).copied().unwrap_or(0))
                .collect();
            let size: usize = shape.iter().product::<usize>().max(1);
            let mut data = vec![None; size];
            for (args, value) in entries {
                if args.len() != shape.len() || args.iter().zip(&shape).any(|(a, s)| a >= s) {
                    return Err(SemanticsError::BadTable(f.name.clone()));
                }
                let mut idx = 0usize;
                for (a, s) in args.iter().zip(&shape) {
                    idx = idx * s + a;
                }
                data[idx] = Some(*value);
            }
            let data: Option<Vec<usize>> = data.into_iter().collect();
            let data = data.ok_or_else(|| SemanticsError::BadTable(f.name.clone()))?;
            funcs.insert(f.name.clone(), FuncTable { shape, data });
        }
        let mut preds = BTreeMap::new();
        for p in &theory.signature.preds {
            let rows = self.preds.get(&p.name).cloned().unwrap_or_default();
            let shape: Vec<usize> = p
                .domain
                .iter()
                .map(|s| self.carriers.get(&s.name).copied().unwrap_or(0))
                .collect();
            for row in &rows {
                if row.len() != shape.len() || row.iter().zip(&shape).any(|(a, s)| a >= s) {
                    return Err(SemanticsError::BadTable(p.name.clone()));
                }
            }
            let table = PredTable::new(shape, |args| rows.iter().any(|r| r == args));
            preds.insert(p.name.clone(), table);
        }
        FiniteModel::new(theory.clone(), self.carriers.clone(), funcs, preds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAT_SRC: &str = "\
(sort nat)
(fun zero () nat)
(fun s (nat) nat)
(datatype nat (zero) (s nat))
(axiom (forall ((x nat)) (not (= (s x) zero))))
";

    #[test]
    fn parses_the_reference_example() {
        let t = parse_theory(NAT_SRC).unwrap();
        assert_eq!(t.signature.sorts.len(), 1);
        assert_eq!(t.signature.funcs.len(), 2);
        assert_eq!(t.datatypes.len(), 1);
        assert_eq!(t.axioms.len(), 1);
        assert_eq!(
            t.axioms[0].formula.to_string(),
            "forall x0:nat. ~(s(x0) = zero)"
        );
    }

    #[test]
    fn unbalanced_parenthesis_is_a_parse_error() {
        assert!(matches!(
            parse_theory("(sort nat"),
            Err(FrontendError::Parse { .. })
        ));
    }

    #[test]
    fn reserved_prefix_is_rejected_at_parse() {
        assert!(matches!(
            parse_theory("(sort nat)(fun rfl_x () nat)"),
            Err(FrontendError::ReservedPrefix(n)) if n == "rfl_x"
        ));
    }

    #[test]
    fn binder_indices_follow_binding_order_per_sort() {
        let src = "\
(sort nat)(sort list)
(fun zero () nat)(fun nil () list)
(pred p (nat list nat))
(axiom (forall ((x nat) (ys list) (z nat)) (p x ys z)))
";
        let t = parse_theory(src).unwrap();
        assert_eq!(
            t.axioms[0].formula.to_string(),
            "forall x0:nat. forall x0:list. forall x1:nat. p(x0, x0, x1)"
        );
    }

    #[test]
    fn shadowing_introduces_a_fresh_index() {
        let src = "\
(sort nat)
(pred p (nat nat))
(axiom (forall ((x nat)) (forall ((x nat)) (p x x))))
";
        let t = parse_theory(src).unwrap();
        // The inner x shadows the outer one; both atom arguments refer to it.
        assert_eq!(
            t.axioms[0].formula.to_string(),
            "forall x0:nat. forall x1:nat. p(x1, x1)"
        );
    }

    #[test]
    fn unknown_symbols_surface_as_diagnostics() {
        let err = parse_theory("(sort nat)(axiom (= foo foo))").unwrap_err();
        assert!(matches!(err, FrontendError::Parse { .. }), "{err:?}");
    }

    #[test]
    fn round_trip_through_render() {
        let t = parse_theory(NAT_SRC).unwrap();
        let rendered = render_theory(&t);
        let back = parse_theory(&rendered).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn model_round_trip() {
        let t = parse_theory(NAT_SRC).unwrap();
        let spec = parse_model(
            "(model (carrier nat 2) (fun zero (() 0)) (fun s ((0) 1) ((1) 1)))",
        )
        .unwrap();
        let m = spec.into_model(&t).unwrap();
        assert_eq!(m.carrier("nat"), 2);
        assert_eq!(m.func_table("s").get(&[1]), 1);
    }

    #[test]
    fn partial_tables_are_rejected() {
        let t = parse_theory(NAT_SRC).unwrap();
        let spec =
            parse_model("(model (carrier nat 2) (fun zero (() 0)) (fun s ((0) 1)))").unwrap();
        assert!(matches!(
            spec.into_model(&t),
            Err(SemanticsError::BadTable(n)) if n == "s"
        ));
    }
}
