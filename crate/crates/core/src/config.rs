use std::time::Duration;

use crate::grade::GradeChain;

pub const DEFAULT_ENUMERATION_CAP: u64 = 100_000_000;
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;
pub const DEFAULT_VALIDATION_CAP: u64 = 1_000_000_000;
pub const DEFAULT_MATRIX_CARRIER_CAP: u64 = 4096;

/// Resource limits shared by every enumeration in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Upper bound on candidate fuzzy/crisp subsets.
    pub enumeration: u64,
    /// Upper bound on operator semiring elements.
    pub closure: usize,
    /// Upper bound on axiom tuples evaluated when validating a structure.
    pub validation: u64,
    /// Upper bound on the matrix carrier `|S|^(n²)`.
    pub matrix_carrier: u64,
    /// Wall-clock budget for one operator closure.
    pub closure_time: Option<Duration>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: DEFAULT_ENUMERATION_CAP,
            closure: DEFAULT_CLOSURE_CAP,
            validation: DEFAULT_VALIDATION_CAP,
            matrix_carrier: DEFAULT_MATRIX_CARRIER_CAP,
            closure_time: None,
        }
    }
}

impl Caps {
    /// Defaults, with `GSL_CAP` overriding the enumeration cap when set.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(v) = std::env::var("GSL_CAP").ok().and_then(|v| v.trim().parse::<u64>().ok()) {
            if v > 0 {
                caps.enumeration = v;
            }
        }
        caps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub chain: GradeChain,
    pub n: usize,
    pub caps: Caps,
    pub format: ReportFormat,
    /// Worker threads; `None` lets rayon decide.
    pub parallelism: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            chain: GradeChain::ternary(),
            n: 2,
            caps: Caps::default(),
            format: ReportFormat::Text,
            parallelism: None,
        }
    }
}

/// `base^exp`, saturating at `u64::MAX`.
pub(crate) fn saturating_pow(base: u64, exp: u64) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc == u64::MAX {
            break;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_saturates() {
        assert_eq!(saturating_pow(3, 4), 81);
        assert_eq!(saturating_pow(3, 255), u64::MAX);
        assert_eq!(saturating_pow(0, 0), 1);
    }
}
