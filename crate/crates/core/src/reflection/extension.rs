//! Assembling the reflective and reflective-inductive extensions of a theory.

use crate::logic::{alpha_eq, check_theory, NamedFormula, Theory};

use super::axioms::{reflective_axioms, variable_term_axioms};
use super::induction::{datatype_axioms, induction_axiom};
use super::signature::{reflective_signature, ReflectionMap};
use super::ReflectionError;

/// Generation switches.
#[derive(Debug, Clone)]
pub struct ReflectionConfig {
    /// Emit injectivity/disjointness axioms for the variable constructors.
    /// On by default; switch off for construction-faithful output.
    pub var_axioms: bool,
}

impl Default for ReflectionConfig {
    fn default() -> Self {
        ReflectionConfig { var_axioms: true }
    }
}

/// A theory together with the extension data it was built from.
///
/// `theory.axioms` is the base axiom list followed by `generated_axioms`,
/// over the extended signature; dropping the generated part recovers the
/// base theory verbatim.
#[derive(Debug, Clone)]
pub struct ReflectiveTheory {
    pub theory: Theory,
    pub map: ReflectionMap,
    pub generated_axioms: Vec<NamedFormula>,
}

impl ReflectiveTheory {
    /// Undo the extension: base signature and base axioms only.
    pub fn restrict_to_base(&self) -> Theory {
        let base_count = self.theory.axioms.len() - self.generated_axioms.len();
        Theory {
            signature: self.map.base().clone(),
            axioms: self.theory.axioms[..base_count].to_vec(),
            datatypes: self.theory.datatypes.clone(),
            conjectures: self.theory.conjectures.clone(),
        }
    }
}

/// Extend a theory with the reflective sorts, symbols and defining axioms.
pub fn reflective_extension(
    theory: &Theory,
    config: &ReflectionConfig,
) -> Result<ReflectiveTheory, ReflectionError> {
    let diags = check_theory(theory);
    if !diags.is_empty() {
        return Err(ReflectionError::InvalidTheory(diags));
    }
    let map = reflective_signature(&theory.signature)?;
    let mut generated = reflective_axioms(&map);
    if config.var_axioms {
        generated.extend(variable_term_axioms(&map));
    }
    let mut axioms = theory.axioms.clone();
    axioms.extend(generated.iter().cloned());
    Ok(ReflectiveTheory {
        theory: Theory {
            signature: map.extended_signature(),
            axioms,
            datatypes: theory.datatypes.clone(),
            conjectures: theory.conjectures.clone(),
        },
        map,
        generated_axioms: generated,
    })
}

/// The reflective extension plus, per datatype, the reflective induction
/// axiom and the constructor disjointness/injectivity axioms.
///
/// Generated constructor axioms that duplicate a base axiom (up to renaming
/// of bound variables) are dropped.
pub fn reflective_inductive_extension(
    theory: &Theory,
    config: &ReflectionConfig,
) -> Result<ReflectiveTheory, ReflectionError> {
    if theory.datatypes.is_empty() {
        return Err(ReflectionError::NoDatatypes);
    }
    let mut ext = reflective_extension(theory, config)?;
    let mut additions = Vec::new();
    for dt in &theory.datatypes {
        additions.push(NamedFormula::new(
            format!("ax_ind_{}", dt.sort.name),
            induction_axiom(dt, &ext.map)?,
        ));
        for ax in datatype_axioms(dt) {
            let duplicate = theory
                .axioms
                .iter()
                .any(|base| alpha_eq(&base.formula, &ax.formula));
            if !duplicate {
                additions.push(ax);
            }
        }
    }
    ext.theory.axioms.extend(additions.iter().cloned());
    ext.generated_axioms.extend(additions);
    Ok(ext)
}
