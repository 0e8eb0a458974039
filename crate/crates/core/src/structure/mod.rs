//! Finite Γ-semirings and plain semirings given by dense tables.
//!
//! Elements are identified by index; index 0 of every carrier is its
//! additive zero.

mod gamma;
mod instances;
mod predicates;
mod semiring;
mod validate;

pub use gamma::GammaSemiring;
pub use instances::{
    boolean, boolean_semiring, from_semiring, gen_instance, zero_product, zn, zn_semiring,
    InstanceKind,
};
pub use predicates::{
    commutativity_witness, gamma_semifield_witness, generated_ideal, has_inverses,
    is_commutative, is_gamma_semifield, is_semifield, is_zdf, semifield_witness, zdf_witness,
    Precondition,
};
pub use semiring::Semiring;
pub use validate::{
    first_violation, gamma_validation_work, semiring_validation_work, validate_gamma_semiring,
    validate_semiring, Axiom, ValidationOutcome, Violation,
};

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Read-only view shared by every finite structure that carries fuzzy ideals.
///
/// `for_each_product` enumerates every product `x·y` (for a Γ-semiring, every
/// `x γ y` over all `γ`) as `(x, y, result)`.
pub trait FiniteStructure: Sync {
    fn name(&self) -> &str;
    fn order(&self) -> usize;
    fn ids(&self) -> &[String];
    fn add(&self, a: usize, b: usize) -> usize;
    fn for_each_product(&self, f: &mut dyn FnMut(usize, usize, usize));
}

pub(crate) fn check_ids(what: &str, ids: &[String]) -> Result<()> {
    if ids.is_empty() {
        return Err(Error::Structural(format!("{what} carrier is empty")));
    }
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id.as_str()) {
            return Err(Error::Structural(format!("duplicate id `{id}` in {what}")));
        }
    }
    Ok(())
}

pub(crate) fn check_table(what: &str, table: &[u32], len: usize, bound: usize) -> Result<()> {
    if table.len() != len {
        return Err(Error::Structural(format!(
            "{what} has {} entries, expected {len}",
            table.len()
        )));
    }
    if let Some(pos) = table.iter().position(|&v| v as usize >= bound) {
        return Err(Error::Structural(format!(
            "{what} entry {pos} is {} but the carrier has {bound} elements",
            table[pos]
        )));
    }
    Ok(())
}
