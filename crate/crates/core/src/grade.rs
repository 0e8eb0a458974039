//! Exact membership grades in `[0, 1]`.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradeError {
    #[error("malformed grade `{0}` (expected p/q)")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("grade `{0}` lies outside [0, 1]")]
    OutOfRange(String),
    #[error("grade chain must contain 0 and 1")]
    MissingBounds,
    #[error("grade chain is empty")]
    EmptyChain,
}

/// A normalized rational in `[0, 1]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade(Ratio<u64>);

impl Grade {
    pub const ZERO: Grade = Grade(Ratio::new_raw(0, 1));
    pub const ONE: Grade = Grade(Ratio::new_raw(1, 1));

    pub fn new(num: u64, den: u64) -> Result<Self, GradeError> {
        if den == 0 {
            return Err(GradeError::ZeroDenominator(format!("{num}/{den}")));
        }
        if num > den {
            return Err(GradeError::OutOfRange(format!("{num}/{den}")));
        }
        Ok(Grade(Ratio::new(num, den)))
    }

    pub fn half() -> Self {
        Grade(Ratio::new_raw(1, 2))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    pub fn is_one(&self) -> bool {
        self.numer() == self.denom()
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Grade {
    type Err = GradeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let parse = |part: &str| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| GradeError::Malformed(t.to_string()))
        };
        match t.split_once('/') {
            Some((n, d)) => {
                let (n, d) = (parse(n)?, parse(d)?);
                if d == 0 {
                    return Err(GradeError::ZeroDenominator(t.to_string()));
                }
                if n > d {
                    return Err(GradeError::OutOfRange(t.to_string()));
                }
                Ok(Grade(Ratio::new(n, d)))
            }
            None => {
                let n = parse(t)?;
                Grade::new(n, 1).map_err(|_| GradeError::OutOfRange(t.to_string()))
            }
        }
    }
}

impl Serialize for Grade {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finite, strictly increasing set of grades containing 0 and 1.
///
/// Fuzzy enumeration works on positions in the chain; since the chain is
/// totally ordered, min/max of positions agree with min/max of grades.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradeChain {
    grades: Vec<Grade>,
}

impl GradeChain {
    pub fn new(mut grades: Vec<Grade>) -> Result<Self, GradeError> {
        if grades.is_empty() {
            return Err(GradeError::EmptyChain);
        }
        grades.sort();
        grades.dedup();
        if grades[0] != Grade::ZERO || *grades.last().unwrap() != Grade::ONE {
            return Err(GradeError::MissingBounds);
        }
        Ok(GradeChain { grades })
    }

    /// `{0, 1}`.
    pub fn binary() -> Self {
        GradeChain { grades: vec![Grade::ZERO, Grade::ONE] }
    }

    /// `{0, 1/2, 1}`.
    pub fn ternary() -> Self {
        GradeChain { grades: vec![Grade::ZERO, Grade::half(), Grade::ONE] }
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn grade(&self, pos: usize) -> Grade {
        self.grades[pos]
    }

    pub fn top(&self) -> usize {
        self.grades.len() - 1
    }

    pub fn position(&self, g: Grade) -> Option<usize> {
        self.grades.binary_search(&g).ok()
    }

    pub fn labels(&self) -> Vec<String> {
        self.grades.iter().map(|g| g.to_string()).collect()
    }
}

impl Default for GradeChain {
    fn default() -> Self {
        GradeChain::ternary()
    }
}

impl fmt::Display for GradeChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for GradeChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a comma-separated list such as `0,1/2,1`.
impl FromStr for GradeChain {
    type Err = GradeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let grades = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Grade>, _>>()?;
        GradeChain::new(grades)
    }
}

impl Serialize for GradeChain {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.labels())
    }
}
