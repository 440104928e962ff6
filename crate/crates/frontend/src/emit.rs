//! Deterministic SMT-LIB 2 and TPTP TFF serialisation.
//!
//! Declarations are ordered sorts, functions, predicates (each by name) and
//! axioms in generation order, so emission is byte-stable across runs. The
//! SMT-LIB backend asserts the negated conjecture (refutation style); the
//! TPTP backend emits a `conjecture` role formula.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use reflect_core::logic::{Formula, FuncSym, NamedFormula, PredSym, Sort, Term, Theory, Variable};

use crate::mangle::build_mangle_table;
use crate::FrontendError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetFormat {
    Smtlib2,
    Tptp,
}

impl TargetFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            TargetFormat::Smtlib2 => "smt2",
            TargetFormat::Tptp => "p",
        }
    }
}

impl fmt::Display for TargetFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetFormat::Smtlib2 => f.write_str("smtlib2"),
            TargetFormat::Tptp => f.write_str("tptp"),
        }
    }
}

impl FromStr for TargetFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "smtlib2" | "smt2" => Ok(TargetFormat::Smtlib2),
            "tptp" | "tff" => Ok(TargetFormat::Tptp),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

/// One solver problem: a theory, the conjecture to prove, and how to
/// serialise it.
#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub theory: Theory,
    pub selected_conjecture: String,
    pub target: TargetFormat,
    /// SMT logic name; `UFDT` switches on native datatype declarations.
    pub logic_header: String,
    /// Declare datatypes natively (SMT-LIB only).
    pub native_datatypes: bool,
}

impl ProblemFile {
    pub fn new(
        theory: Theory,
        selected_conjecture: impl Into<String>,
        target: TargetFormat,
    ) -> Self {
        ProblemFile {
            theory,
            selected_conjecture: selected_conjecture.into(),
            target,
            logic_header: "UF".into(),
            native_datatypes: false,
        }
    }

    pub fn with_native_datatypes(mut self) -> Self {
        self.native_datatypes = true;
        self.logic_header = "UFDT".into();
        self
    }

    fn conjecture(&self) -> Result<&NamedFormula, FrontendError> {
        self.theory
            .conjectures
            .iter()
            .find(|c| c.name == self.selected_conjecture)
            .ok_or_else(|| FrontendError::UnknownConjecture(self.selected_conjecture.clone()))
    }
}

/// Serialise in the problem's target format.
pub fn emit_problem(p: &ProblemFile) -> Result<String, FrontendError> {
    match p.target {
        TargetFormat::Smtlib2 => emit_smtlib(p),
        TargetFormat::Tptp => emit_tptp(p),
    }
}

struct Namer {
    /// Sort name -> position in the emitted sort order.
    sort_pos: BTreeMap<String, usize>,
}

impl Namer {
    fn new(sorted_sorts: &[&Sort]) -> Self {
        Namer {
            sort_pos: sorted_sorts
                .iter()
                .enumerate()
                .map(|(i, s)| (s.name.clone(), i))
                .collect(),
        }
    }

    fn var(&self, v: &Variable) -> String {
        format!("X{}_{}", v.index, self.sort_pos[&v.sort.name])
    }
}

fn sorted_sorts(theory: &Theory) -> Vec<&Sort> {
    let mut sorts: Vec<&Sort> = theory.signature.sorts.iter().collect();
    sorts.sort_by(|a, b| a.name.cmp(&b.name));
    sorts
}

fn sorted_funcs(theory: &Theory) -> Vec<&FuncSym> {
    let mut funcs: Vec<&FuncSym> = theory.signature.funcs.iter().collect();
    funcs.sort_by(|a, b| a.name.cmp(&b.name));
    funcs
}

fn sorted_preds(theory: &Theory) -> Vec<&PredSym> {
    let mut preds: Vec<&PredSym> = theory.signature.preds.iter().collect();
    preds.sort_by(|a, b| a.name.cmp(&b.name));
    preds
}

// ---------------------------------------------------------------------------
// SMT-LIB 2
// ---------------------------------------------------------------------------

/// Serialise as an SMT-LIB 2 script asserting the negated conjecture.
pub fn emit_smtlib(p: &ProblemFile) -> Result<String, FrontendError> {
    let theory = &p.theory;
    let table = build_mangle_table(theory, TargetFormat::Smtlib2)?;
    let conjecture = p.conjecture()?;
    let sorts = sorted_sorts(theory);
    let namer = Namer::new(&sorts);

    let mut out = String::new();
    out.push_str(&format!("; problem: {}\n", p.selected_conjecture));
    out.push_str(&format!("(set-logic {})\n", p.logic_header));

    let native_dt = p.native_datatypes && !theory.datatypes.is_empty();
    let datatype_sorts: Vec<&str> = if native_dt {
        theory.datatypes.iter().map(|d| d.sort.name.as_str()).collect()
    } else {
        Vec::new()
    };
    let constructor_names: Vec<&str> = if native_dt {
        theory
            .datatypes
            .iter()
            .flat_map(|d| d.constructors.iter().map(|c| c.name.as_str()))
            .collect()
    } else {
        Vec::new()
    };

    for s in &sorts {
        if !datatype_sorts.contains(&s.name.as_str()) {
            out.push_str(&format!("(declare-sort {} 0)\n", table.get(&s.name)));
        }
    }
    if native_dt {
        let mut decls = Vec::new();
        let mut bodies = Vec::new();
        let mut datatypes: Vec<_> = theory.datatypes.iter().collect();
        datatypes.sort_by(|a, b| a.sort.name.cmp(&b.sort.name));
        for dt in datatypes {
            decls.push(format!("({} 0)", table.get(&dt.sort.name)));
            let ctors: Vec<String> = dt
                .constructors
                .iter()
                .map(|c| {
                    if c.arity() == 0 {
                        format!("({})", table.get(&c.name))
                    } else {
                        let selectors: Vec<String> = c
                            .domain
                            .iter()
                            .enumerate()
                            .map(|(i, s)| {
                                format!("({}_{} {})", table.get(&c.name), i, table.get(&s.name))
                            })
                            .collect();
                        format!("({} {})", table.get(&c.name), selectors.join(" "))
                    }
                })
                .collect();
            bodies.push(format!("({})", ctors.join(" ")));
        }
        out.push_str(&format!(
            "(declare-datatypes ({}) ({}))\n",
            decls.join(" "),
            bodies.join(" ")
        ));
    }
    for f in sorted_funcs(theory) {
        if constructor_names.contains(&f.name.as_str()) {
            continue;
        }
        let domain: Vec<&str> = f.domain.iter().map(|s| table.get(&s.name)).collect();
        out.push_str(&format!(
            "(declare-fun {} ({}) {})\n",
            table.get(&f.name),
            domain.join(" "),
            table.get(&f.codomain.name)
        ));
    }
    for pd in sorted_preds(theory) {
        let domain: Vec<&str> = pd.domain.iter().map(|s| table.get(&s.name)).collect();
        out.push_str(&format!(
            "(declare-fun {} ({}) Bool)\n",
            table.get(&pd.name),
            domain.join(" ")
        ));
    }
    for ax in &theory.axioms {
        out.push_str(&format!(
            "(assert {})\n",
            smt_formula(&ax.formula, &table, &namer)
        ));
    }
    out.push_str(&format!(
        "(assert (not {}))\n",
        smt_formula(&conjecture.formula, &table, &namer)
    ));
    out.push_str("(check-sat)\n");
    Ok(out)
}

fn smt_term(t: &Term, table: &crate::mangle::MangleTable, namer: &Namer) -> String {
    match t {
        Term::Var(v) => namer.var(v),
        Term::App(f, args) => {
            if args.is_empty() {
                table.get(&f.name).to_string()
            } else {
                let parts: Vec<String> =
                    args.iter().map(|a| smt_term(a, table, namer)).collect();
                format!("({} {})", table.get(&f.name), parts.join(" "))
            }
        }
    }
}

fn smt_formula(f: &Formula, table: &crate::mangle::MangleTable, namer: &Namer) -> String {
    match f {
        Formula::Bottom => "false".to_string(),
        Formula::Equals(l, r) => format!(
            "(= {} {})",
            smt_term(l, table, namer),
            smt_term(r, table, namer)
        ),
        Formula::Atom(p, args) => {
            if args.is_empty() {
                table.get(&p.name).to_string()
            } else {
                let parts: Vec<String> =
                    args.iter().map(|a| smt_term(a, table, namer)).collect();
                format!("({} {})", table.get(&p.name), parts.join(" "))
            }
        }
        Formula::Not(g) => format!("(not {})", smt_formula(g, table, namer)),
        Formula::Or(l, r) => format!(
            "(or {} {})",
            smt_formula(l, table, namer),
            smt_formula(r, table, namer)
        ),
        Formula::And(l, r) => format!(
            "(and {} {})",
            smt_formula(l, table, namer),
            smt_formula(r, table, namer)
        ),
        Formula::Implies(l, r) => format!(
            "(=> {} {})",
            smt_formula(l, table, namer),
            smt_formula(r, table, namer)
        ),
        Formula::Iff(l, r) => format!(
            "(= {} {})",
            smt_formula(l, table, namer),
            smt_formula(r, table, namer)
        ),
        Formula::Forall(v, g) => format!(
            "(forall (({} {})) {})",
            namer.var(v),
            table.get(&v.sort.name),
            smt_formula(g, table, namer)
        ),
        Formula::Exists(v, g) => format!(
            "(exists (({} {})) {})",
            namer.var(v),
            table.get(&v.sort.name),
            smt_formula(g, table, namer)
        ),
    }
}

// ---------------------------------------------------------------------------
// TPTP TFF
// ---------------------------------------------------------------------------

fn tptp_name(name: &str) -> String {
    let lower_word = {
        let mut chars = name.chars();
        matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    };
    if lower_word {
        name.to_string()
    } else {
        format!("'{}'", name.replace('\\', "\\\\").replace('\'', "\\'"))
    }
}

/// Serialise as a TPTP TFF problem with typed declarations and a
/// `conjecture` role formula.
pub fn emit_tptp(p: &ProblemFile) -> Result<String, FrontendError> {
    if p.native_datatypes {
        return Err(FrontendError::UnsupportedDatatypes("TPTP TFF".into()));
    }
    let theory = &p.theory;
    let table = build_mangle_table(theory, TargetFormat::Tptp)?;
    let conjecture = p.conjecture()?;
    let sorts = sorted_sorts(theory);
    let namer = Namer::new(&sorts);

    let mut out = String::new();
    out.push_str(&format!("% problem: {}\n", p.selected_conjecture));
    for (i, s) in sorts.iter().enumerate() {
        out.push_str(&format!(
            "tff(sort_decl_{i}, type, {}: $tType).\n",
            table.get(&s.name)
        ));
    }
    for (i, f) in sorted_funcs(theory).iter().enumerate() {
        let ty = match f.domain.len() {
            0 => table.get(&f.codomain.name).to_string(),
            1 => format!(
                "{} > {}",
                table.get(&f.domain[0].name),
                table.get(&f.codomain.name)
            ),
            _ => {
                let parts: Vec<&str> = f.domain.iter().map(|s| table.get(&s.name)).collect();
                format!("({}) > {}", parts.join(" * "), table.get(&f.codomain.name))
            }
        };
        out.push_str(&format!(
            "tff(func_decl_{i}, type, {}: {ty}).\n",
            table.get(&f.name)
        ));
    }
    for (i, pd) in sorted_preds(theory).iter().enumerate() {
        let ty = match pd.domain.len() {
            0 => "$o".to_string(),
            1 => format!("{} > $o", table.get(&pd.domain[0].name)),
            _ => {
                let parts: Vec<&str> = pd.domain.iter().map(|s| table.get(&s.name)).collect();
                format!("({}) > $o", parts.join(" * "))
            }
        };
        out.push_str(&format!(
            "tff(pred_decl_{i}, type, {}: {ty}).\n",
            table.get(&pd.name)
        ));
    }
    for ax in &theory.axioms {
        out.push_str(&format!(
            "tff({}, axiom, {}).\n",
            tptp_name(&ax.name),
            tptp_formula(&ax.formula, &table, &namer)
        ));
    }
    out.push_str(&format!(
        "tff({}, conjecture, {}).\n",
        tptp_name(&conjecture.name),
        tptp_formula(&conjecture.formula, &table, &namer)
    ));
    Ok(out)
}

fn tptp_term(t: &Term, table: &crate::mangle::MangleTable, namer: &Namer) -> String {
    match t {
        Term::Var(v) => namer.var(v),
        Term::App(f, args) => {
            if args.is_empty() {
                table.get(&f.name).to_string()
            } else {
                let parts: Vec<String> =
                    args.iter().map(|a| tptp_term(a, table, namer)).collect();
                format!("{}({})", table.get(&f.name), parts.join(","))
            }
        }
    }
}

fn tptp_formula(f: &Formula, table: &crate::mangle::MangleTable, namer: &Namer) -> String {
    match f {
        Formula::Bottom => "$false".to_string(),
        Formula::Equals(l, r) => format!(
            "({} = {})",
            tptp_term(l, table, namer),
            tptp_term(r, table, namer)
        ),
        Formula::Atom(p, args) => {
            if args.is_empty() {
                table.get(&p.name).to_string()
            } else {
                let parts: Vec<String> =
                    args.iter().map(|a| tptp_term(a, table, namer)).collect();
                format!("{}({})", table.get(&p.name), parts.join(","))
            }
        }
        Formula::Not(g) => format!("~({})", tptp_formula(g, table, namer)),
        Formula::Or(l, r) => format!(
            "({} | {})",
            tptp_formula(l, table, namer),
            tptp_formula(r, table, namer)
        ),
        Formula::And(l, r) => format!(
            "({} & {})",
            tptp_formula(l, table, namer),
            tptp_formula(r, table, namer)
        ),
        Formula::Implies(l, r) => format!(
            "({} => {})",
            tptp_formula(l, table, namer),
            tptp_formula(r, table, namer)
        ),
        Formula::Iff(l, r) => format!(
            "({} <=> {})",
            tptp_formula(l, table, namer),
            tptp_formula(r, table, namer)
        ),
        Formula::Forall(v, g) => format!(
            "! [{}: {}] : ({})",
            namer.var(v),
            table.get(&v.sort.name),
            tptp_formula(g, table, namer)
        ),
        Formula::Exists(v, g) => format!(
            "? [{}: {}] : ({})",
            namer.var(v),
            table.get(&v.sort.name),
            tptp_formula(g, table, namer)
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::native::parse_theory;

    const SRC: &str = "\
(sort nat)
(fun zero () nat)
(fun s (nat) nat)
(fun add (nat nat) nat)
(pred leq (nat nat))
(datatype nat (zero) (s nat))
(axiom (forall ((x nat)) (not (= (s x) zero))))
(conjecture goal (forall ((x nat)) (= x x)))
";

    #[test]
    fn smtlib_shape() {
        let t = parse_theory(SRC).unwrap();
        let p = ProblemFile::new(t, "goal", TargetFormat::Smtlib2);
        let s = emit_smtlib(&p).unwrap();
        assert!(s.starts_with("; problem: goal\n(set-logic UF)\n"), "{s}");
        assert!(s.contains("(declare-sort nat 0)"));
        assert!(s.contains("(declare-fun add (nat nat) nat)"));
        assert!(s.contains("(declare-fun leq (nat nat) Bool)"));
        assert!(s.contains("(assert (forall ((X0_0 nat)) (not (= (s X0_0) zero))))"));
        assert!(s.contains("(assert (not (forall ((X0_0 nat)) (= X0_0 X0_0))))"));
        assert!(s.trim_end().ends_with("(check-sat)"));
    }

    #[test]
    fn native_datatypes_switch_to_declare_datatypes() {
        let t = parse_theory(SRC).unwrap();
        let p = ProblemFile::new(t, "goal", TargetFormat::Smtlib2).with_native_datatypes();
        let s = emit_smtlib(&p).unwrap();
        assert!(s.contains("(set-logic UFDT)"), "{s}");
        assert!(s.contains("(declare-datatypes ((nat 0)) (((zero) (s (s_0 nat)))))"), "{s}");
        assert!(!s.contains("(declare-sort nat"));
        assert!(!s.contains("(declare-fun zero"));
        assert!(s.contains("(declare-fun add"));
    }

    #[test]
    fn tptp_shape() {
        let t = parse_theory(SRC).unwrap();
        let p = ProblemFile::new(t, "goal", TargetFormat::Tptp);
        let s = emit_tptp(&p).unwrap();
        assert!(s.contains("tff(sort_decl_0, type, nat: $tType)."), "{s}");
        assert!(s.contains("tff(func_decl_0, type, add: (nat * nat) > nat)."));
        assert!(s.contains("tff(func_decl_1, type, s: nat > nat)."));
        assert!(s.contains("tff(func_decl_2, type, zero: nat)."));
        assert!(s.contains("tff(pred_decl_0, type, leq: (nat * nat) > $o)."));
        assert!(s.contains("tff(ax0, axiom, ! [X0_0: nat] : (~((s(X0_0) = zero))))."));
        assert!(s.contains("tff(goal, conjecture,"));
    }

    #[test]
    fn tptp_rejects_native_datatypes() {
        let t = parse_theory(SRC).unwrap();
        let p = ProblemFile::new(t, "goal", TargetFormat::Tptp).with_native_datatypes();
        assert!(matches!(
            emit_tptp(&p),
            Err(FrontendError::UnsupportedDatatypes(_))
        ));
    }

    #[test]
    fn emission_is_deterministic() {
        let t = parse_theory(SRC).unwrap();
        for target in [TargetFormat::Smtlib2, TargetFormat::Tptp] {
            let p = ProblemFile::new(t.clone(), "goal", target);
            assert_eq!(emit_problem(&p).unwrap(), emit_problem(&p).unwrap());
        }
    }

    #[test]
    fn unknown_conjecture_is_reported() {
        let t = parse_theory(SRC).unwrap();
        let p = ProblemFile::new(t, "missing", TargetFormat::Smtlib2);
        assert!(matches!(
            emit_smtlib(&p),
            Err(FrontendError::UnknownConjecture(n)) if n == "missing"
        ));
    }
}
