use std::fmt;

use serde::Serialize;

use crate::par;

use super::{GammaSemiring, Semiring};

/// Carrier a witness coordinate ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dom {
    S,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    // Γ-semiring additive monoids
    AddSCommutative,
    AddSAssociative,
    AddSIdentity,
    AddGCommutative,
    AddGAssociative,
    AddGIdentity,
    /// (a+b) α c = a α c + b α c
    LeftDistributive,
    /// a α (b+c) = a α b + a α c
    RightDistributive,
    /// a (α+β) b = a α b + a β b
    GammaDistributive,
    /// a α (b β c) = (a α b) β c
    Associative,
    /// 0 α x = 0
    ZeroLeft,
    /// x α 0 = 0
    ZeroRight,
    /// x 0_Γ y = 0
    ZeroGamma,
    // plain semirings
    AddCommutative,
    AddAssociative,
    AddIdentity,
    MulAssociative,
    /// a(b+c) = ab + ac
    MulLeftDistributive,
    /// (a+b)c = ac + bc
    MulRightDistributive,
    /// 0·x = 0
    MulZeroLeft,
    /// x·0 = 0
    MulZeroRight,
}

impl Axiom {
    pub const GAMMA: [Axiom; 13] = [
        Axiom::AddSCommutative,
        Axiom::AddSAssociative,
        Axiom::AddSIdentity,
        Axiom::AddGCommutative,
        Axiom::AddGAssociative,
        Axiom::AddGIdentity,
        Axiom::LeftDistributive,
        Axiom::RightDistributive,
        Axiom::GammaDistributive,
        Axiom::Associative,
        Axiom::ZeroLeft,
        Axiom::ZeroRight,
        Axiom::ZeroGamma,
    ];

    pub const SEMIRING: [Axiom; 8] = [
        Axiom::AddCommutative,
        Axiom::AddAssociative,
        Axiom::AddIdentity,
        Axiom::MulAssociative,
        Axiom::MulLeftDistributive,
        Axiom::MulRightDistributive,
        Axiom::MulZeroLeft,
        Axiom::MulZeroRight,
    ];

    fn vars(self) -> &'static [(&'static str, Dom)] {
        use Dom::*;
        match self {
            Axiom::AddSCommutative => &[("a", S), ("b", S)],
            Axiom::AddSAssociative => &[("a", S), ("b", S), ("c", S)],
            Axiom::AddSIdentity => &[("a", S)],
            Axiom::AddGCommutative => &[("α", G), ("β", G)],
            Axiom::AddGAssociative => &[("α", G), ("β", G), ("δ", G)],
            Axiom::AddGIdentity => &[("α", G)],
            Axiom::LeftDistributive => &[("a", S), ("b", S), ("α", G), ("c", S)],
            Axiom::RightDistributive => &[("a", S), ("α", G), ("b", S), ("c", S)],
            Axiom::GammaDistributive => &[("a", S), ("α", G), ("β", G), ("b", S)],
            Axiom::Associative => &[("a", S), ("α", G), ("b", S), ("β", G), ("c", S)],
            Axiom::ZeroLeft => &[("α", G), ("x", S)],
            Axiom::ZeroRight => &[("x", S), ("α", G)],
            Axiom::ZeroGamma => &[("x", S), ("y", S)],
            Axiom::AddCommutative => &[("a", S), ("b", S)],
            Axiom::AddAssociative | Axiom::MulAssociative => &[("a", S), ("b", S), ("c", S)],
            Axiom::AddIdentity => &[("a", S)],
            Axiom::MulLeftDistributive | Axiom::MulRightDistributive => {
                &[("a", S), ("b", S), ("c", S)]
            }
            Axiom::MulZeroLeft | Axiom::MulZeroRight => &[("x", S)],
        }
    }

    pub fn law(self) -> &'static str {
        match self {
            Axiom::AddSCommutative => "a + b = b + a in S",
            Axiom::AddSAssociative => "(a + b) + c = a + (b + c) in S",
            Axiom::AddSIdentity => "0 + a = a in S",
            Axiom::AddGCommutative => "α + β = β + α in Γ",
            Axiom::AddGAssociative => "(α + β) + δ = α + (β + δ) in Γ",
            Axiom::AddGIdentity => "0 + α = α in Γ",
            Axiom::LeftDistributive => "(a + b) α c = a α c + b α c",
            Axiom::RightDistributive => "a α (b + c) = a α b + a α c",
            Axiom::GammaDistributive => "a (α + β) b = a α b + a β b",
            Axiom::Associative => "a α (b β c) = (a α b) β c",
            Axiom::ZeroLeft => "0 α x = 0",
            Axiom::ZeroRight => "x α 0 = 0",
            Axiom::ZeroGamma => "x 0 y = 0",
            Axiom::AddCommutative => "a + b = b + a",
            Axiom::AddAssociative => "(a + b) + c = a + (b + c)",
            Axiom::AddIdentity => "0 + a = a",
            Axiom::MulAssociative => "(ab)c = a(bc)",
            Axiom::MulLeftDistributive => "a(b + c) = ab + ac",
            Axiom::MulRightDistributive => "(a + b)c = ac + bc",
            Axiom::MulZeroLeft => "0x = 0",
            Axiom::MulZeroRight => "x0 = 0",
        }
    }

    fn dims(self, ns: usize, ng: usize) -> Vec<usize> {
        self.vars()
            .iter()
            .map(|&(_, d)| if d == Dom::S { ns } else { ng })
            .collect()
    }

    /// True when the law fails at `w` in `g`.
    fn broken_gamma(self, g: &GammaSemiring, w: &[usize]) -> bool {
        let (p, s, t) = (|x, a, y| g.prod(x, a, y), |a, b| g.add_s(a, b), |a, b| g.add_g(a, b));
        match self {
            Axiom::AddSCommutative => s(w[0], w[1]) != s(w[1], w[0]),
            Axiom::AddSAssociative => s(s(w[0], w[1]), w[2]) != s(w[0], s(w[1], w[2])),
            Axiom::AddSIdentity => s(0, w[0]) != w[0],
            Axiom::AddGCommutative => t(w[0], w[1]) != t(w[1], w[0]),
            Axiom::AddGAssociative => t(t(w[0], w[1]), w[2]) != t(w[0], t(w[1], w[2])),
            Axiom::AddGIdentity => t(0, w[0]) != w[0],
            Axiom::LeftDistributive => {
                let [a, b, al, c] = [w[0], w[1], w[2], w[3]];
                p(s(a, b), al, c) != s(p(a, al, c), p(b, al, c))
            }
            Axiom::RightDistributive => {
                let [a, al, b, c] = [w[0], w[1], w[2], w[3]];
                p(a, al, s(b, c)) != s(p(a, al, b), p(a, al, c))
            }
            Axiom::GammaDistributive => {
                let [a, al, be, b] = [w[0], w[1], w[2], w[3]];
                p(a, t(al, be), b) != s(p(a, al, b), p(a, be, b))
            }
            Axiom::Associative => {
                let [a, al, b, be, c] = [w[0], w[1], w[2], w[3], w[4]];
                p(a, al, p(b, be, c)) != p(p(a, al, b), be, c)
            }
            Axiom::ZeroLeft => p(0, w[0], w[1]) != 0,
            Axiom::ZeroRight => p(w[0], w[1], 0) != 0,
            Axiom::ZeroGamma => p(w[0], 0, w[1]) != 0,
            _ => false,
        }
    }

    fn broken_semiring(self, r: &Semiring, w: &[usize]) -> bool {
        let (s, m) = (|a, b| r.add(a, b), |a, b| r.mul(a, b));
        match self {
            Axiom::AddCommutative => s(w[0], w[1]) != s(w[1], w[0]),
            Axiom::AddAssociative => s(s(w[0], w[1]), w[2]) != s(w[0], s(w[1], w[2])),
            Axiom::AddIdentity => s(0, w[0]) != w[0],
            Axiom::MulAssociative => m(m(w[0], w[1]), w[2]) != m(w[0], m(w[1], w[2])),
            Axiom::MulLeftDistributive => m(w[0], s(w[1], w[2])) != s(m(w[0], w[1]), m(w[0], w[2])),
            Axiom::MulRightDistributive => m(s(w[0], w[1]), w[2]) != s(m(w[0], w[2]), m(w[1], w[2])),
            Axiom::MulZeroLeft => m(0, w[0]) != 0,
            Axiom::MulZeroRight => m(w[0], 0) != 0,
            _ => false,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.law())
    }
}

/// One violated law with its lexicographically first witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// Witness coordinates, in the order the law names its variables.
    pub witness: Vec<usize>,
}

impl Violation {
    /// Re-evaluates the law at the stored witness; true when it still fails.
    pub fn replay_gamma(&self, g: &GammaSemiring) -> bool {
        self.in_bounds(g.s_len(), g.g_len()) && self.axiom.broken_gamma(g, &self.witness)
    }

    pub fn replay_semiring(&self, r: &Semiring) -> bool {
        self.in_bounds(r.len(), r.len()) && self.axiom.broken_semiring(r, &self.witness)
    }

    fn in_bounds(&self, ns: usize, ng: usize) -> bool {
        let dims = self.axiom.dims(ns, ng);
        dims.len() == self.witness.len() && self.witness.iter().zip(&dims).all(|(w, d)| w < d)
    }

    /// Renders the witness with element ids, e.g. `a=1, α=1, c=0`.
    pub fn describe(&self, s_ids: &[String], g_ids: &[String]) -> String {
        self.axiom
            .vars()
            .iter()
            .zip(&self.witness)
            .map(|(&(name, dom), &w)| {
                let id = if dom == Dom::S { &s_ids[w] } else { &g_ids[w] };
                format!("{name}={id}")
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ValidationOutcome {
    Ok,
    Violations(Vec<Violation>),
}

impl ValidationOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, ValidationOutcome::Ok)
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            ValidationOutcome::Ok => &[],
            ValidationOutcome::Violations(v) => v,
        }
    }

    fn from_vec(v: Vec<Violation>) -> Self {
        if v.is_empty() {
            ValidationOutcome::Ok
        } else {
            ValidationOutcome::Violations(v)
        }
    }
}

/// Scans the box `dims[0] × dims[1] × …` in lexicographic order and returns
/// the first tuple for which `broken` holds. The outermost coordinate is
/// split across workers; the result is still the lexicographic minimum.
pub fn first_violation<F>(dims: &[usize], broken: F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync + Send,
{
    if dims.is_empty() || dims.contains(&0) {
        return None;
    }
    let rest = &dims[1..];
    par::find_first(dims[0], |head| {
        let mut w = vec![0usize; dims.len()];
        w[0] = head;
        loop {
            if broken(&w) {
                return Some(w);
            }
            // odometer over the trailing coordinates
            let mut k = rest.len();
            loop {
                if k == 0 {
                    return None;
                }
                w[k] += 1;
                if w[k] < rest[k - 1] {
                    break;
                }
                w[k] = 0;
                k -= 1;
            }
        }
    })
}

/// Number of law evaluations a full validation of `g` performs.
pub fn gamma_validation_work(g: &GammaSemiring) -> u64 {
    Axiom::GAMMA
        .iter()
        .map(|a| {
            a.dims(g.s_len(), g.g_len())
                .iter()
                .fold(1u64, |acc, &d| acc.saturating_mul(d as u64))
        })
        .fold(0u64, u64::saturating_add)
}

pub fn semiring_validation_work(r: &Semiring) -> u64 {
    let n = r.len() as u64;
    Axiom::SEMIRING
        .iter()
        .map(|a| n.saturating_pow(a.vars().len() as u32))
        .fold(0u64, u64::saturating_add)
}

/// Checks every Γ-semiring law and zero law; each violated law is reported
/// once, with its lexicographically first witness.
pub fn validate_gamma_semiring(g: &GammaSemiring) -> ValidationOutcome {
    let (ns, ng) = (g.s_len(), g.g_len());
    let found = Axiom::GAMMA
        .iter()
        .filter_map(|&axiom| {
            first_violation(&axiom.dims(ns, ng), |w| axiom.broken_gamma(g, w))
                .map(|witness| Violation { axiom, witness })
        })
        .collect();
    ValidationOutcome::from_vec(found)
}

pub fn validate_semiring(r: &Semiring) -> ValidationOutcome {
    let n = r.len();
    let found = Axiom::SEMIRING
        .iter()
        .filter_map(|&axiom| {
            first_violation(&axiom.dims(n, n), |w| axiom.broken_semiring(r, w))
                .map(|witness| Violation { axiom, witness })
        })
        .collect();
    ValidationOutcome::from_vec(found)
}
