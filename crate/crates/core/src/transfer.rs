//! Transfer maps between fuzzy subsets of `S` and of its operator semirings.
//!
//! `μ⁺(x) = min_γ μ([x, γ])` and `σ⁺'(f) = min_s σ(f(s))` on the left side;
//! `μ*` and `σ*'` are the same constructions over the right operator
//! semiring. Infima over finite carriers are minima.

use crate::error::{Error, Result};
use crate::fuzzy::FuzzySubset;
use crate::grade::Grade;
use crate::operators::{OperatorSemiring, Side};

fn expect_side(op: &OperatorSemiring, side: Side) -> Result<()> {
    if op.side() != side {
        return Err(Error::SideMismatch { expected: side, found: op.side() });
    }
    Ok(())
}

/// Side-generic `μ ↦ μ⁺` / `μ ↦ μ*`.
pub fn restrict(op: &OperatorSemiring, mu: &FuzzySubset) -> Result<FuzzySubset> {
    if mu.len() != op.len() {
        return Err(Error::CarrierMismatch { expected: op.len(), found: mu.len() });
    }
    let grades = (0..op.s_len())
        .map(|x| {
            (0..op.g_len())
                .map(|gamma| mu.grade(op.pair_element(x, gamma)))
                .min()
                .unwrap_or(Grade::ONE)
        })
        .collect();
    Ok(FuzzySubset::new(grades))
}

/// Side-generic `σ ↦ σ⁺'` / `σ ↦ σ*'`.
pub fn lift(op: &OperatorSemiring, sigma: &FuzzySubset) -> Result<FuzzySubset> {
    if sigma.len() != op.s_len() {
        return Err(Error::CarrierMismatch { expected: op.s_len(), found: sigma.len() });
    }
    let grades = op
        .elements()
        .iter()
        .map(|f| f.values.iter().map(|&v| sigma.grade(v as usize)).min().unwrap_or(Grade::ONE))
        .collect();
    Ok(FuzzySubset::new(grades))
}

/// `μ⁺` for `μ` over the left operator semiring.
pub fn restrict_plus(l: &OperatorSemiring, mu: &FuzzySubset) -> Result<FuzzySubset> {
    expect_side(l, Side::Left)?;
    restrict(l, mu)
}

/// `σ⁺'` over the left operator semiring.
pub fn lift_plusprime(l: &OperatorSemiring, sigma: &FuzzySubset) -> Result<FuzzySubset> {
    expect_side(l, Side::Left)?;
    lift(l, sigma)
}

/// `μ*` for `μ` over the right operator semiring.
pub fn restrict_star(r: &OperatorSemiring, mu: &FuzzySubset) -> Result<FuzzySubset> {
    expect_side(r, Side::Right)?;
    restrict(r, mu)
}

/// `σ*'` over the right operator semiring.
pub fn lift_starprime(r: &OperatorSemiring, sigma: &FuzzySubset) -> Result<FuzzySubset> {
    expect_side(r, Side::Right)?;
    lift(r, sigma)
}
