//! Deterministic identifier mangling per target format.
//!
//! Generated `rfl_` symbols are legal in both target grammars and pass
//! through unchanged; user symbols are escaped per target and checked for
//! collisions. Symbols that would collide with the emitted bound-variable
//! namespace (`X<i>_<j>`) are prefixed.

use std::collections::BTreeMap;

use reflect_core::logic::Theory;

use crate::emit::TargetFormat;
use crate::FrontendError;

/// Injective map from internal symbol names to emitted identifiers.
#[derive(Debug, Clone, Default)]
pub struct MangleTable {
    map: BTreeMap<String, String>,
}

impl MangleTable {
    pub fn get<'a>(&'a self, name: &'a str) -> &'a str {
        self.map.get(name).map(String::as_str).unwrap_or(name)
    }

    pub fn insert(&mut self, from: String, to: String) {
        self.map.insert(from, to);
    }
}

fn is_smt_simple(s: &str) -> bool {
    let mut chars = s.chars();
    let first_ok = matches!(
        chars.next(),
        Some(c) if c.is_ascii_alphabetic()
            || "~!@$%^&*_+=<>.?/-".contains(c)
    );
    first_ok
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || "~!@$%^&*_+=<>.?/-".contains(c))
}

fn is_tptp_lower_word(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn looks_like_emitted_variable(s: &str) -> bool {
    let Some(rest) = s.strip_prefix('X') else {
        return false;
    };
    let mut parts = rest.splitn(2, '_');
    let (Some(a), Some(b)) = (parts.next(), parts.next()) else {
        return false;
    };
    !a.is_empty()
        && !b.is_empty()
        && a.chars().all(|c| c.is_ascii_digit())
        && b.chars().all(|c| c.is_ascii_digit())
}

/// Escape one symbol for the target grammar.
pub fn mangle_symbol(name: &str, target: TargetFormat) -> Result<String, FrontendError> {
    let name = if looks_like_emitted_variable(name) {
        format!("u_{name}")
    } else {
        name.to_string()
    };
    match target {
        TargetFormat::Smtlib2 => {
            if is_smt_simple(&name) {
                Ok(name)
            } else if name.contains('|') || name.contains('\\') {
                Err(FrontendError::MangleCollision(name))
            } else {
                Ok(format!("|{name}|"))
            }
        }
        TargetFormat::Tptp => {
            if is_tptp_lower_word(&name) {
                Ok(name)
            } else {
                let escaped = name.replace('\\', "\\\\").replace('\'', "\\'");
                Ok(format!("'{escaped}'"))
            }
        }
    }
}

/// Mangle every sort, function and predicate of a theory, rejecting
/// collisions among the emitted identifiers.
pub fn build_mangle_table(
    theory: &Theory,
    target: TargetFormat,
) -> Result<MangleTable, FrontendError> {
    let mut table = MangleTable::default();
    let mut used = std::collections::BTreeSet::new();
    let names = theory
        .signature
        .sorts
        .iter()
        .map(|s| s.name.clone())
        .chain(theory.signature.funcs.iter().map(|f| f.name.clone()))
        .chain(theory.signature.preds.iter().map(|p| p.name.clone()));
    for name in names {
        let mangled = mangle_symbol(&name, target)?;
        if !used.insert(mangled.clone()) {
            return Err(FrontendError::MangleCollision(mangled));
        }
        table.insert(name, mangled);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_names_pass_through() {
        assert_eq!(
            mangle_symbol("rfl_q_add", TargetFormat::Smtlib2).unwrap(),
            "rfl_q_add"
        );
        assert_eq!(
            mangle_symbol("rfl_sat", TargetFormat::Tptp).unwrap(),
            "rfl_sat"
        );
    }

    #[test]
    fn dashes_are_quoted_for_tptp() {
        assert_eq!(
            mangle_symbol("my-sym", TargetFormat::Tptp).unwrap(),
            "'my-sym'"
        );
        // Legal in an SMT simple symbol.
        assert_eq!(
            mangle_symbol("my-sym", TargetFormat::Smtlib2).unwrap(),
            "my-sym"
        );
    }

    #[test]
    fn primes_are_quoted_where_needed() {
        assert_eq!(
            mangle_symbol("x'", TargetFormat::Smtlib2).unwrap(),
            "|x'|"
        );
        assert_eq!(mangle_symbol("x'", TargetFormat::Tptp).unwrap(), "'x\\''");
    }

    #[test]
    fn variable_shaped_user_symbols_are_prefixed() {
        assert_eq!(
            mangle_symbol("X0_1", TargetFormat::Smtlib2).unwrap(),
            "u_X0_1"
        );
    }
}
