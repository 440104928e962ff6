//! Grammar checkers for the emitted formats.
//!
//! These validate that emitted files are syntactically well-formed scripts:
//! command shape and symbol references for SMT-LIB 2, annotated-formula
//! shape with a typed-formula grammar for TPTP TFF. They are lint gates for
//! the test suites, not general-purpose parsers.

use std::collections::HashSet;

use crate::sexp::{parse_sexps, Sexp};

// ---------------------------------------------------------------------------
// SMT-LIB 2
// ---------------------------------------------------------------------------

/// Check a whole SMT-LIB 2 script.
pub fn check_smtlib(text: &str) -> Result<(), String> {
    let forms = parse_sexps(text).map_err(|e| e.to_string())?;
    if forms.is_empty() {
        return Err("empty script".into());
    }
    let mut sorts: HashSet<String> = HashSet::new();
    let mut symbols: HashSet<String> = HashSet::new();
    let mut seen_logic = false;
    let mut seen_check_sat = false;
    for form in &forms {
        let items = form.list().ok_or("top-level form must be a list")?;
        let head = items
            .first()
            .and_then(Sexp::atom)
            .ok_or("command head must be a symbol")?;
        if seen_check_sat {
            return Err("commands after (check-sat)".into());
        }
        match head {
            "set-logic" => {
                if seen_logic {
                    return Err("duplicate set-logic".into());
                }
                if items.len() != 2 || items[1].atom().is_none() {
                    return Err("malformed set-logic".into());
                }
                seen_logic = true;
            }
            "declare-sort" => {
                let name = decl_name(items, 3, "declare-sort")?;
                if items[2].atom() != Some("0") {
                    return Err("declare-sort arity must be 0".into());
                }
                if !sorts.insert(name.clone()) {
                    return Err(format!("duplicate sort `{name}`"));
                }
            }
            "declare-datatypes" => {
                check_declare_datatypes(items, &mut sorts, &mut symbols)?;
            }
            "declare-fun" => {
                let name = decl_name(items, 4, "declare-fun")?;
                let args = items[2]
                    .list()
                    .ok_or("declare-fun needs an argument sort list")?;
                for a in args {
                    check_sort_ref(a, &sorts)?;
                }
                check_sort_ref(&items[3], &sorts)?;
                if !symbols.insert(name.clone()) {
                    return Err(format!("duplicate symbol `{name}`"));
                }
            }
            "assert" => {
                if items.len() != 2 {
                    return Err("assert takes one formula".into());
                }
                check_smt_term(&items[1], &symbols, &sorts, &mut Vec::new())?;
            }
            "check-sat" => {
                if items.len() != 1 {
                    return Err("check-sat takes no arguments".into());
                }
                seen_check_sat = true;
            }
            other => return Err(format!("unknown command `{other}`")),
        }
    }
    if !seen_logic {
        return Err("missing set-logic".into());
    }
    if !seen_check_sat {
        return Err("missing check-sat".into());
    }
    Ok(())
}

fn decl_name(items: &[Sexp], len: usize, what: &str) -> Result<String, String> {
    if items.len() != len {
        return Err(format!("malformed {what}"));
    }
    items[1]
        .atom()
        .map(str::to_string)
        .ok_or_else(|| format!("{what} name must be a symbol"))
}

fn check_sort_ref(sexp: &Sexp, sorts: &HashSet<String>) -> Result<(), String> {
    let name = sexp.atom().ok_or("sort reference must be a symbol")?;
    if name == "Bool" || sorts.contains(name) {
        Ok(())
    } else {
        Err(format!("undeclared sort `{name}`"))
    }
}

fn check_declare_datatypes(
    items: &[Sexp],
    sorts: &mut HashSet<String>,
    symbols: &mut HashSet<String>,
) -> Result<(), String> {
    if items.len() != 3 {
        return Err("malformed declare-datatypes".into());
    }
    let decls = items[1]
        .list()
        .ok_or("declare-datatypes needs a declaration list")?;
    let bodies = items[2]
        .list()
        .ok_or("declare-datatypes needs a body list")?;
    if decls.len() != bodies.len() || decls.is_empty() {
        return Err("declare-datatypes declaration/body mismatch".into());
    }
    for d in decls {
        let pair = d.list().ok_or("datatype declaration must be (name 0)")?;
        if pair.len() != 2 || pair[1].atom() != Some("0") {
            return Err("datatype declaration must be (name 0)".into());
        }
        let name = pair[0].atom().ok_or("datatype name must be a symbol")?;
        if !sorts.insert(name.to_string()) {
            return Err(format!("duplicate sort `{name}`"));
        }
    }
    for body in bodies {
        let ctors = body.list().ok_or("datatype body must be a list")?;
        if ctors.is_empty() {
            return Err("datatype needs at least one constructor".into());
        }
        for c in ctors {
            let centry = c.list().ok_or("constructor must be a list")?;
            let cname = centry
                .first()
                .and_then(Sexp::atom)
                .ok_or("constructor name must be a symbol")?;
            if !symbols.insert(cname.to_string()) {
                return Err(format!("duplicate symbol `{cname}`"));
            }
            for sel in &centry[1..] {
                let pair = sel.list().ok_or("selector must be (name sort)")?;
                if pair.len() != 2 {
                    return Err("selector must be (name sort)".into());
                }
                let sname = pair[0].atom().ok_or("selector name must be a symbol")?;
                check_sort_ref(&pair[1], sorts)?;
                if !symbols.insert(sname.to_string()) {
                    return Err(format!("duplicate symbol `{sname}`"));
                }
            }
        }
    }
    Ok(())
}

fn check_smt_term(
    sexp: &Sexp,
    symbols: &HashSet<String>,
    sorts: &HashSet<String>,
    scope: &mut Vec<String>,
) -> Result<(), String> {
    match sexp {
        Sexp::Atom(a, _) => {
            if a == "true" || a == "false" || symbols.contains(a) || scope.contains(a) {
                Ok(())
            } else {
                Err(format!("unknown symbol `{a}`"))
            }
        }
        Sexp::Str(..) => Err("unexpected string literal".into()),
        Sexp::List(items, _) => {
            let head = items
                .first()
                .and_then(Sexp::atom)
                .ok_or("application head must be a symbol")?;
            match head {
                "forall" | "exists" => {
                    if items.len() != 3 {
                        return Err(format!("malformed {head}"));
                    }
                    let binders = items[1].list().ok_or("binder list expected")?;
                    if binders.is_empty() {
                        return Err("empty binder list".into());
                    }
                    let mut added = 0usize;
                    for b in binders {
                        let pair = b.list().ok_or("binder must be (name sort)")?;
                        if pair.len() != 2 {
                            return Err("binder must be (name sort)".into());
                        }
                        let name = pair[0].atom().ok_or("binder name must be a symbol")?;
                        check_sort_ref(&pair[1], sorts)?;
                        scope.push(name.to_string());
                        added += 1;
                    }
                    let result = check_smt_term(&items[2], symbols, sorts, scope);
                    scope.truncate(scope.len() - added);
                    result
                }
                "and" | "or" | "=>" | "=" | "distinct" => {
                    if items.len() < 3 {
                        return Err(format!("`{head}` needs at least two operands"));
                    }
                    for sub in &items[1..] {
                        check_smt_term(sub, symbols, sorts, scope)?;
                    }
                    Ok(())
                }
                "not" => {
                    if items.len() != 2 {
                        return Err("`not` takes one operand".into());
                    }
                    check_smt_term(&items[1], symbols, sorts, scope)
                }
                _ => {
                    if !symbols.contains(head) {
                        return Err(format!("unknown symbol `{head}`"));
                    }
                    for sub in &items[1..] {
                        check_smt_term(sub, symbols, sorts, scope)?;
                    }
                    Ok(())
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// TPTP TFF
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Lower(String),
    Upper(String),
    Quoted(String),
    Dollar(String),
    Punct(&'static str),
}

fn tptp_tokens(text: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '%' => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        break;
                    }
                }
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '\'' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('\\') => match chars.next() {
                            Some(c) => s.push(c),
                            None => return Err("unterminated quoted atom".into()),
                        },
                        Some('\'') => break,
                        Some(c) => s.push(c),
                        None => return Err("unterminated quoted atom".into()),
                    }
                }
                out.push(Tok::Quoted(s));
            }
            '$' => {
                chars.next();
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Dollar(s));
            }
            c if c.is_ascii_lowercase() => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Lower(s));
            }
            c if c.is_ascii_uppercase() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Upper(s));
            }
            '<' => {
                chars.next();
                if chars.next() == Some('=') && chars.next() == Some('>') {
                    out.push(Tok::Punct("<=>"));
                } else {
                    return Err("stray `<`".into());
                }
            }
            '=' => {
                chars.next();
                if chars.peek() == Some(&'>') {
                    chars.next();
                    out.push(Tok::Punct("=>"));
                } else {
                    out.push(Tok::Punct("="));
                }
            }
            '!' => {
                chars.next();
                if chars.peek() == Some(&'=') {
                    chars.next();
                    out.push(Tok::Punct("!="));
                } else {
                    out.push(Tok::Punct("!"));
                }
            }
            '(' | ')' | '[' | ']' | ',' | ':' | '.' | '~' | '&' | '|' | '?' | '*' | '>' => {
                chars.next();
                out.push(Tok::Punct(match c {
                    '(' => "(",
                    ')' => ")",
                    '[' => "[",
                    ']' => "]",
                    ',' => ",",
                    ':' => ":",
                    '.' => ".",
                    '~' => "~",
                    '&' => "&",
                    '|' => "|",
                    '?' => "?",
                    '*' => "*",
                    _ => ">",
                }));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

struct TptpParser {
    toks: Vec<Tok>,
    pos: usize,
}

const TPTP_ROLES: &[&str] = &[
    "axiom",
    "hypothesis",
    "definition",
    "assumption",
    "lemma",
    "theorem",
    "corollary",
    "conjecture",
    "negated_conjecture",
    "type",
];

impl TptpParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_punct(&mut self, p: &str) -> Result<(), String> {
        match self.next() {
            Some(Tok::Punct(q)) if q == p => Ok(()),
            other => Err(format!("expected `{p}`, got {other:?}")),
        }
    }

    fn check(&mut self) -> Result<(), String> {
        let mut count = 0usize;
        while self.peek().is_some() {
            self.annotated_formula()?;
            count += 1;
        }
        if count == 0 {
            return Err("no annotated formulas".into());
        }
        Ok(())
    }

    fn annotated_formula(&mut self) -> Result<(), String> {
        match self.next() {
            Some(Tok::Lower(w)) if w == "tff" => {}
            other => return Err(format!("expected `tff`, got {other:?}")),
        }
        self.expect_punct("(")?;
        match self.next() {
            Some(Tok::Lower(_) | Tok::Quoted(_)) => {}
            other => return Err(format!("expected a formula name, got {other:?}")),
        }
        self.expect_punct(",")?;
        let role = match self.next() {
            Some(Tok::Lower(r)) if TPTP_ROLES.contains(&r.as_str()) => r,
            other => return Err(format!("expected a role, got {other:?}")),
        };
        self.expect_punct(",")?;
        if role == "type" {
            self.type_declaration()?;
        } else {
            self.formula()?;
        }
        self.expect_punct(")")?;
        self.expect_punct(".")?;
        Ok(())
    }

    fn type_declaration(&mut self) -> Result<(), String> {
        match self.next() {
            Some(Tok::Lower(_) | Tok::Quoted(_)) => {}
            other => return Err(format!("expected a typed symbol, got {other:?}")),
        }
        self.expect_punct(":")?;
        self.type_expr()
    }

    fn type_expr(&mut self) -> Result<(), String> {
        // atom | $tType | $o | atom > atom | (a1 * .. * an) > atom
        match self.next() {
            Some(Tok::Dollar(w)) if w == "tType" || w == "o" => Ok(()),
            Some(Tok::Lower(_) | Tok::Quoted(_)) => {
                if matches!(self.peek(), Some(Tok::Punct(">"))) {
                    self.next();
                    self.result_sort()?;
                }
                Ok(())
            }
            Some(Tok::Punct("(")) => {
                loop {
                    match self.next() {
                        Some(Tok::Lower(_) | Tok::Quoted(_)) => {}
                        other => return Err(format!("expected a sort, got {other:?}")),
                    }
                    match self.next() {
                        Some(Tok::Punct("*")) => continue,
                        Some(Tok::Punct(")")) => break,
                        other => return Err(format!("expected `*` or `)`, got {other:?}")),
                    }
                }
                self.expect_punct(">")?;
                self.result_sort()
            }
            other => Err(format!("malformed type, got {other:?}")),
        }
    }

    fn result_sort(&mut self) -> Result<(), String> {
        match self.next() {
            Some(Tok::Lower(_) | Tok::Quoted(_)) => Ok(()),
            Some(Tok::Dollar(w)) if w == "o" => Ok(()),
            other => Err(format!("expected a result sort, got {other:?}")),
        }
    }

    fn formula(&mut self) -> Result<(), String> {
        self.unitary()?;
        while let Some(Tok::Punct(p)) = self.peek() {
            match *p {
                "|" | "&" | "=>" | "<=>" => {
                    self.next();
                    self.unitary()?;
                }
                _ => break,
            }
        }
        Ok(())
    }

    fn unitary(&mut self) -> Result<(), String> {
        match self.peek() {
            Some(Tok::Punct("!")) | Some(Tok::Punct("?")) => {
                self.next();
                self.expect_punct("[")?;
                loop {
                    match self.next() {
                        Some(Tok::Upper(_)) => {}
                        other => return Err(format!("expected a variable, got {other:?}")),
                    }
                    self.expect_punct(":")?;
                    match self.next() {
                        Some(Tok::Lower(_) | Tok::Quoted(_)) => {}
                        other => return Err(format!("expected a sort, got {other:?}")),
                    }
                    match self.next() {
                        Some(Tok::Punct(",")) => continue,
                        Some(Tok::Punct("]")) => break,
                        other => return Err(format!("expected `,` or `]`, got {other:?}")),
                    }
                }
                self.expect_punct(":")?;
                self.unitary()
            }
            Some(Tok::Punct("~")) => {
                self.next();
                self.unitary()
            }
            Some(Tok::Punct("(")) => {
                self.next();
                self.formula()?;
                self.expect_punct(")")
            }
            Some(Tok::Dollar(_)) | Some(Tok::Lower(_)) | Some(Tok::Quoted(_))
            | Some(Tok::Upper(_)) => {
                self.term()?;
                if let Some(Tok::Punct(p)) = self.peek() {
                    if *p == "=" || *p == "!=" {
                        self.next();
                        self.term()?;
                    }
                }
                Ok(())
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }

    fn term(&mut self) -> Result<(), String> {
        match self.next() {
            Some(Tok::Upper(_)) => Ok(()),
            Some(Tok::Dollar(w)) if w == "false" || w == "true" => Ok(()),
            Some(Tok::Lower(_) | Tok::Quoted(_)) => {
                if matches!(self.peek(), Some(Tok::Punct("("))) {
                    self.next();
                    loop {
                        self.term()?;
                        match self.next() {
                            Some(Tok::Punct(",")) => continue,
                            Some(Tok::Punct(")")) => break,
                            other => {
                                return Err(format!("expected `,` or `)`, got {other:?}"))
                            }
                        }
                    }
                }
                Ok(())
            }
            other => Err(format!("expected a term, got {other:?}")),
        }
    }
}

/// Check a whole TPTP TFF problem.
pub fn check_tptp(text: &str) -> Result<(), String> {
    let toks = tptp_tokens(text)?;
    TptpParser { toks, pos: 0 }.check()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_a_small_smt_script() {
        let src = "\
(set-logic UF)
(declare-sort nat 0)
(declare-fun zero () nat)
(declare-fun s (nat) nat)
(declare-fun leq (nat nat) Bool)
(assert (forall ((X0_0 nat)) (not (= (s X0_0) zero))))
(assert (not (leq zero zero)))
(check-sat)
";
        check_smtlib(src).unwrap();
    }

    #[test]
    fn rejects_missing_check_sat_and_unknown_symbols() {
        assert!(check_smtlib("(set-logic UF)").is_err());
        let src = "\
(set-logic UF)
(assert (p))
(check-sat)
";
        assert!(check_smtlib(src).unwrap_err().contains("unknown symbol"));
    }

    #[test]
    fn accepts_a_small_tff_problem() {
        let src = "\
% comment
tff(sort_decl_0, type, nat: $tType).
tff(func_decl_0, type, s: nat > nat).
tff(func_decl_1, type, zero: nat).
tff(pred_decl_0, type, leq: (nat * nat) > $o).
tff(ax0, axiom, ! [X0_0: nat] : (~((s(X0_0) = zero)))).
tff(goal, conjecture, (leq(zero,zero) | $false)).
";
        check_tptp(src).unwrap();
    }

    #[test]
    fn rejects_bad_roles_and_truncated_input() {
        assert!(check_tptp("tff(a, nonsense, $false).").is_err());
        assert!(check_tptp("tff(a, axiom, $false)").is_err());
    }
}
