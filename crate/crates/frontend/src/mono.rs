//! Monomorphization of parametric datatypes.
//!
//! Templates like `(datatype (List a) (nil) (cons a (List a)))` declare no
//! symbols by themselves. Every ground instantiation the theory mentions —
//! in function/predicate declarations, in binder sorts, or inferred at
//! constructor occurrences inside formulas — produces one concrete sort and
//! constructor family (`List_nat`, `nil_nat`, `cons_nat`), and the
//! rewritten theory is entirely ground.

use std::collections::{BTreeMap, BTreeSet};

use crate::native::{Decl, SFormula, STerm, SortExpr, SurfaceTheory};
use crate::sexp::Pos;
use crate::FrontendError;

const INSTANTIATION_CAP: usize = 100;

#[derive(Debug, Clone)]
struct Template {
    params: Vec<String>,
    ctors: Vec<(String, Vec<SortExpr>)>,
}

#[derive(Debug, Default)]
struct Mono {
    templates: BTreeMap<String, Template>,
    /// Ground functions (declared or generated): name -> (domain, codomain).
    funcs: BTreeMap<String, (Vec<String>, String)>,
    preds: BTreeMap<String, Vec<String>>,
    /// Instantiations in first-discovery order.
    generated: Vec<(String, Vec<String>)>,
    seen: BTreeSet<(String, Vec<String>)>,
    /// Mangled sort name -> (template, ground args).
    sort_origin: BTreeMap<String, (String, Vec<String>)>,
}

fn mangle(stem: &str, args: &[String]) -> String {
    let mut out = stem.to_string();
    for a in args {
        out.push('_');
        out.push_str(a);
    }
    out
}

fn unresolved(name: &str) -> FrontendError {
    FrontendError::UnresolvedParameter(name.to_string())
}

fn term_err(pos: Pos, msg: String) -> FrontendError {
    FrontendError::Parse {
        line: pos.line,
        col: pos.col,
        msg,
    }
}

impl Mono {
    /// Ground name of a sort expression in a monomorphic position.
    fn resolve_sort(&mut self, expr: &SortExpr) -> Result<String, FrontendError> {
        match expr {
            SortExpr::Name(n) => {
                if self.templates.contains_key(n) {
                    return Err(unresolved(n));
                }
                Ok(n.clone())
            }
            SortExpr::App(tmpl, args) => {
                let ground: Vec<String> = args
                    .iter()
                    .map(|a| self.resolve_sort(a))
                    .collect::<Result<_, _>>()?;
                self.register(tmpl, &ground)
            }
        }
    }

    /// Register an instantiation and generate its constructor family.
    fn register(&mut self, template: &str, args: &[String]) -> Result<String, FrontendError> {
        let tmpl = self
            .templates
            .get(template)
            .cloned()
            .ok_or_else(|| unresolved(template))?;
        if tmpl.params.len() != args.len() {
            return Err(unresolved(template));
        }
        let name = mangle(template, args);
        let key = (template.to_string(), args.to_vec());
        if self.seen.contains(&key) {
            return Ok(name);
        }
        if self.seen.len() >= INSTANTIATION_CAP {
            return Err(term_err(
                Pos { line: 0, col: 0 },
                format!("more than {INSTANTIATION_CAP} datatype instantiations"),
            ));
        }
        self.seen.insert(key.clone());
        self.generated.push(key);
        self.sort_origin
            .insert(name.clone(), (template.to_string(), args.to_vec()));
        let binding: BTreeMap<String, String> = tmpl
            .params
            .iter()
            .cloned()
            .zip(args.iter().cloned())
            .collect();
        for (ctor, patterns) in &tmpl.ctors {
            let domain: Vec<String> = patterns
                .iter()
                .map(|p| self.instantiate_pattern(p, &tmpl.params, &binding))
                .collect::<Result<_, _>>()?;
            let cname = mangle(ctor, args);
            if self.funcs.contains_key(&cname) {
                return Err(FrontendError::MangleCollision(cname));
            }
            self.funcs.insert(cname, (domain, name.clone()));
        }
        Ok(name)
    }

    /// Instantiate a constructor argument pattern under a parameter binding.
    fn instantiate_pattern(
        &mut self,
        pattern: &SortExpr,
        params: &[String],
        binding: &BTreeMap<String, String>,
    ) -> Result<String, FrontendError> {
        match pattern {
            SortExpr::Name(n) => {
                if params.contains(n) {
                    return binding.get(n).cloned().ok_or_else(|| unresolved(n));
                }
                if self.templates.contains_key(n) {
                    return Err(unresolved(n));
                }
                Ok(n.clone())
            }
            SortExpr::App(tmpl, args) => {
                let ground: Vec<String> = args
                    .iter()
                    .map(|a| self.instantiate_pattern(a, params, binding))
                    .collect::<Result<_, _>>()?;
                self.register(tmpl, &ground)
            }
        }
    }

    /// The ground sort a pattern denotes under a partial binding, if fully
    /// determined.
    fn pattern_ground(
        &mut self,
        pattern: &SortExpr,
        params: &[String],
        binding: &BTreeMap<String, String>,
    ) -> Option<String> {
        match pattern {
            SortExpr::Name(n) => {
                if params.contains(n) {
                    binding.get(n).cloned()
                } else if self.templates.contains_key(n) {
                    None
                } else {
                    Some(n.clone())
                }
            }
            SortExpr::App(tmpl, args) => {
                let mut ground = Vec::with_capacity(args.len());
                for a in args {
                    ground.push(self.pattern_ground(a, params, binding)?);
                }
                self.register(tmpl, &ground).ok()
            }
        }
    }

    fn unify(
        &mut self,
        pattern: &SortExpr,
        actual: &str,
        params: &[String],
        binding: &mut BTreeMap<String, String>,
    ) -> Result<(), FrontendError> {
        match pattern {
            SortExpr::Name(n) => {
                if params.contains(n) {
                    match binding.get(n) {
                        Some(bound) if bound == actual => Ok(()),
                        Some(_) => Err(unresolved(n)),
                        None => {
                            binding.insert(n.clone(), actual.to_string());
                            Ok(())
                        }
                    }
                } else if n == actual {
                    Ok(())
                } else {
                    Err(unresolved(n))
                }
            }
            SortExpr::App(tmpl, args) => {
                let Some((origin, origin_args)) = self.sort_origin.get(actual).cloned() else {
                    return Err(unresolved(tmpl));
                };
                if &origin != tmpl || origin_args.len() != args.len() {
                    return Err(unresolved(tmpl));
                }
                for (p, a) in args.iter().zip(&origin_args) {
                    self.unify(p, a, params, binding)?;
                }
                Ok(())
            }
        }
    }

    /// Rewrite a term, resolving polymorphic constructor occurrences.
    /// Returns the rewritten term and its ground sort.
    fn infer_term(
        &mut self,
        t: &STerm,
        expected: Option<&str>,
        scope: &[(String, String)],
    ) -> Result<(STerm, String), FrontendError> {
        if t.args.is_empty() {
            if let Some((_, sort)) = scope.iter().rev().find(|(n, _)| n == &t.head) {
                return Ok((t.clone(), sort.clone()));
            }
        }
        if let Some((domain, codomain)) = self.funcs.get(&t.head).cloned() {
            if domain.len() != t.args.len() {
                return Err(term_err(
                    t.pos,
                    format!(
                        "`{}` expects {} arguments, got {}",
                        t.head,
                        domain.len(),
                        t.args.len()
                    ),
                ));
            }
            let mut args = Vec::with_capacity(t.args.len());
            for (arg, want) in t.args.iter().zip(&domain) {
                args.push(self.infer_term(arg, Some(want), scope)?.0);
            }
            return Ok((
                STerm {
                    head: t.head.clone(),
                    args,
                    pos: t.pos,
                },
                codomain,
            ));
        }
        let owner = self.templates.iter().find_map(|(tname, tmpl)| {
            tmpl.ctors
                .iter()
                .find(|(c, _)| c == &t.head)
                .map(|(_, cargs)| (tname.clone(), tmpl.params.clone(), cargs.clone()))
        });
        let Some((template, params, cargs)) = owner else {
            return Err(term_err(t.pos, format!("unknown function `{}`", t.head)));
        };
        if cargs.len() != t.args.len() {
            return Err(term_err(
                t.pos,
                format!(
                    "`{}` expects {} arguments, got {}",
                    t.head,
                    cargs.len(),
                    t.args.len()
                ),
            ));
        }

        let mut binding: BTreeMap<String, String> = BTreeMap::new();
        if let Some(exp) = expected {
            if let Some((origin, origin_args)) = self.sort_origin.get(exp).cloned() {
                if origin == template {
                    for (p, a) in params.iter().zip(&origin_args) {
                        binding.insert(p.clone(), a.clone());
                    }
                }
            }
        }
        let mut new_args = Vec::with_capacity(t.args.len());
        for (arg, pattern) in t.args.iter().zip(&cargs) {
            let expected_arg = self.pattern_ground(pattern, &params, &binding);
            let (rewritten, actual) = self.infer_term(arg, expected_arg.as_deref(), scope)?;
            self.unify(pattern, &actual, &params, &mut binding)?;
            new_args.push(rewritten);
        }
        for p in &params {
            if !binding.contains_key(p) {
                return Err(unresolved(p));
            }
        }
        let args: Vec<String> = params.iter().map(|p| binding[p].clone()).collect();
        let sort = self.register(&template, &args)?;
        Ok((
            STerm {
                head: mangle(&t.head, &args),
                args: new_args,
                pos: t.pos,
            },
            sort,
        ))
    }

    fn infer_formula(
        &mut self,
        f: &SFormula,
        scope: &mut Vec<(String, String)>,
    ) -> Result<SFormula, FrontendError> {
        match f {
            SFormula::False => Ok(SFormula::False),
            SFormula::Eq(l, r) => match self.infer_term(l, None, scope) {
                Ok((l2, sort)) => {
                    let (r2, _) = self.infer_term(r, Some(&sort), scope)?;
                    Ok(SFormula::Eq(l2, r2))
                }
                Err(FrontendError::UnresolvedParameter(_)) => {
                    let (r2, sort) = self.infer_term(r, None, scope)?;
                    let (l2, _) = self.infer_term(l, Some(&sort), scope)?;
                    Ok(SFormula::Eq(l2, r2))
                }
                Err(e) => Err(e),
            },
            SFormula::Atom(name, args, pos) => {
                let domain = self
                    .preds
                    .get(name)
                    .cloned()
                    .ok_or_else(|| term_err(*pos, format!("unknown predicate `{name}`")))?;
                if domain.len() != args.len() {
                    return Err(term_err(
                        *pos,
                        format!(
                            "`{name}` expects {} arguments, got {}",
                            domain.len(),
                            args.len()
                        ),
                    ));
                }
                let mut out = Vec::with_capacity(args.len());
                for (a, want) in args.iter().zip(&domain) {
                    out.push(self.infer_term(a, Some(want), scope)?.0);
                }
                Ok(SFormula::Atom(name.clone(), out, *pos))
            }
            SFormula::Not(g) => Ok(SFormula::Not(Box::new(self.infer_formula(g, scope)?))),
            SFormula::Or(parts) => Ok(SFormula::Or(self.infer_all(parts, scope)?)),
            SFormula::And(parts) => Ok(SFormula::And(self.infer_all(parts, scope)?)),
            SFormula::Implies(l, r) => Ok(SFormula::Implies(
                Box::new(self.infer_formula(l, scope)?),
                Box::new(self.infer_formula(r, scope)?),
            )),
            SFormula::Iff(l, r) => Ok(SFormula::Iff(
                Box::new(self.infer_formula(l, scope)?),
                Box::new(self.infer_formula(r, scope)?),
            )),
            SFormula::Forall(binders, body) => {
                let (binders, body) = self.infer_quant(binders, body, scope)?;
                Ok(SFormula::Forall(binders, Box::new(body)))
            }
            SFormula::Exists(binders, body) => {
                let (binders, body) = self.infer_quant(binders, body, scope)?;
                Ok(SFormula::Exists(binders, Box::new(body)))
            }
        }
    }

    fn infer_all(
        &mut self,
        parts: &[SFormula],
        scope: &mut Vec<(String, String)>,
    ) -> Result<Vec<SFormula>, FrontendError> {
        parts.iter().map(|p| self.infer_formula(p, scope)).collect()
    }

    fn infer_quant(
        &mut self,
        binders: &[(String, SortExpr)],
        body: &SFormula,
        scope: &mut Vec<(String, String)>,
    ) -> Result<(Vec<(String, SortExpr)>, SFormula), FrontendError> {
        let mut rewritten = Vec::with_capacity(binders.len());
        for (name, sexpr) in binders {
            let ground = self.resolve_sort(sexpr)?;
            scope.push((name.clone(), ground.clone()));
            rewritten.push((name.clone(), SortExpr::Name(ground)));
        }
        let body = self.infer_formula(body, scope)?;
        scope.truncate(scope.len() - binders.len());
        Ok((rewritten, body))
    }
}

/// Replace every parametric datatype by the concrete families its ground
/// instantiations require. Identity on ground theories.
pub fn monomorphize(surface: &SurfaceTheory) -> Result<SurfaceTheory, FrontendError> {
    let mut mono = Mono::default();
    for decl in &surface.decls {
        if let Decl::Datatype {
            name,
            params,
            ctors,
        } = decl
        {
            if !params.is_empty() {
                mono.templates.insert(
                    name.clone(),
                    Template {
                        params: params.clone(),
                        ctors: ctors.clone(),
                    },
                );
            }
        }
    }

    // First pass: resolve declaration-level sort expressions and collect the
    // ground function/predicate tables the formula pass infers against.
    let mut head = Vec::new();
    let mut tail = Vec::new();
    for decl in &surface.decls {
        match decl {
            Decl::Sort(name) => head.push(Decl::Sort(name.clone())),
            Decl::Fun {
                name,
                domain,
                codomain,
            } => {
                let domain_g: Vec<String> = domain
                    .iter()
                    .map(|s| mono.resolve_sort(s))
                    .collect::<Result<_, _>>()?;
                let codomain_g = mono.resolve_sort(codomain)?;
                mono.funcs
                    .insert(name.clone(), (domain_g.clone(), codomain_g.clone()));
                head.push(Decl::Fun {
                    name: name.clone(),
                    domain: domain_g.into_iter().map(SortExpr::Name).collect(),
                    codomain: SortExpr::Name(codomain_g),
                });
            }
            Decl::Pred { name, domain } => {
                let domain_g: Vec<String> = domain
                    .iter()
                    .map(|s| mono.resolve_sort(s))
                    .collect::<Result<_, _>>()?;
                mono.preds.insert(name.clone(), domain_g.clone());
                head.push(Decl::Pred {
                    name: name.clone(),
                    domain: domain_g.into_iter().map(SortExpr::Name).collect(),
                });
            }
            Decl::Datatype {
                name,
                params,
                ctors,
            } if params.is_empty() => {
                let mut ground_ctors = Vec::with_capacity(ctors.len());
                for (c, args) in ctors {
                    let args_g: Vec<SortExpr> = args
                        .iter()
                        .map(|s| mono.resolve_sort(s).map(SortExpr::Name))
                        .collect::<Result<_, _>>()?;
                    ground_ctors.push((c.clone(), args_g));
                }
                head.push(Decl::Datatype {
                    name: name.clone(),
                    params: Vec::new(),
                    ctors: ground_ctors,
                });
            }
            Decl::Datatype { .. } => {} // template: dropped, instantiated below
            Decl::Axiom(_) | Decl::Conjecture(..) => {}
        }
    }
    for decl in &surface.decls {
        match decl {
            Decl::Axiom(f) => {
                let mut scope = Vec::new();
                tail.push(Decl::Axiom(mono.infer_formula(f, &mut scope)?));
            }
            Decl::Conjecture(name, f) => {
                let mut scope = Vec::new();
                tail.push(Decl::Conjecture(
                    name.clone(),
                    mono.infer_formula(f, &mut scope)?,
                ));
            }
            _ => {}
        }
    }

    // Emit one concrete family per discovered instantiation.
    let mut generated = Vec::new();
    for (template, args) in mono.generated.clone() {
        let sort_name = mangle(&template, &args);
        generated.push(Decl::Sort(sort_name.clone()));
        let tmpl = &mono.templates[&template];
        let mut ctors = Vec::new();
        for (c, _) in tmpl.ctors.clone() {
            let cname = mangle(&c, &args);
            let (domain, codomain) = mono.funcs[&cname].clone();
            generated.push(Decl::Fun {
                name: cname.clone(),
                domain: domain.iter().cloned().map(SortExpr::Name).collect(),
                codomain: SortExpr::Name(codomain),
            });
            ctors.push((cname, domain.into_iter().map(SortExpr::Name).collect()));
        }
        generated.push(Decl::Datatype {
            name: sort_name,
            params: Vec::new(),
            ctors,
        });
    }

    let mut decls = head;
    decls.extend(generated);
    decls.extend(tail);
    Ok(SurfaceTheory { decls })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::native::{parse_surface, parse_theory};

    const LIST_AT_NAT: &str = "\
(sort nat)
(fun zero () nat)
(fun s (nat) nat)
(datatype (List a) (nil) (cons a (List a)))
(fun append ((List nat) (List nat)) (List nat))
(axiom (forall ((ys (List nat))) (= (append nil ys) ys)))
(axiom (forall ((x nat) (xs (List nat)) (ys (List nat)))
  (= (append (cons x xs) ys) (cons x (append xs ys)))))
";

    #[test]
    fn list_at_nat_generates_one_family() {
        let t = parse_theory(LIST_AT_NAT).unwrap();
        let sorts: Vec<&str> = t.signature.sorts.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(sorts, vec!["nat", "List_nat"]);
        assert!(t.signature.func("nil_nat").is_some());
        let cons = t.signature.func("cons_nat").unwrap();
        assert_eq!(cons.domain.len(), 2);
        assert_eq!(cons.codomain.name, "List_nat");
        assert_eq!(t.datatypes.len(), 1);
        assert_eq!(t.datatypes[0].sort.name, "List_nat");
    }

    #[test]
    fn ground_theory_is_unchanged() {
        let src = "\
(sort nat)
(fun zero () nat)
(fun s (nat) nat)
(axiom (forall ((x nat)) (not (= (s x) zero))))
";
        let surface = parse_surface(src).unwrap();
        assert_eq!(monomorphize(&surface).unwrap(), surface);
    }

    #[test]
    fn two_instantiations_get_disjoint_families() {
        let src = "\
(sort nat)
(sort bool)
(fun zero () nat)
(fun tt () bool)
(datatype (List a) (nil) (cons a (List a)))
(fun lnat ((List nat)) nat)
(fun lbool ((List bool)) nat)
(axiom (= (lnat (cons zero nil)) zero))
(axiom (= (lbool (cons tt nil)) zero))
";
        let t = parse_theory(src).unwrap();
        let sorts: Vec<&str> = t.signature.sorts.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(sorts, vec!["nat", "bool", "List_nat", "List_bool"]);
        assert!(t.signature.func("cons_nat").is_some());
        assert!(t.signature.func("cons_bool").is_some());
        assert_eq!(t.datatypes.len(), 2);
    }

    #[test]
    fn escaping_parameter_is_reported() {
        let src = "\
(sort nat)
(datatype (List a) (nil) (cons a (List a)))
(axiom (= nil nil))
";
        assert!(matches!(
            parse_theory(src),
            Err(FrontendError::UnresolvedParameter(p)) if p == "a"
        ));
    }

    #[test]
    fn constructor_instantiation_inferred_from_equality_context() {
        // nil on the left of an equality with a typed right-hand side.
        let src = "\
(sort nat)
(fun zero () nat)
(datatype (List a) (nil) (cons a (List a)))
(fun f () (List nat))
(axiom (= nil f))
";
        let t = parse_theory(src).unwrap();
        assert!(t.signature.func("nil_nat").is_some());
        assert_eq!(t.axioms.len(), 1);
    }
}
