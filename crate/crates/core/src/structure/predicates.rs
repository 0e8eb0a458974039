use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{GammaSemiring, Semiring};
use crate::structure::first_violation;

/// Why a predicate could not be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Precondition {
    NotCommutative,
}

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Precondition::NotCommutative => f.write_str("structure is not commutative"),
        }
    }
}

/// First `(a, α, b)` with `a α b ≠ b α a`.
pub fn commutativity_witness(g: &GammaSemiring) -> Option<(usize, usize, usize)> {
    first_violation(&[g.s_len(), g.g_len(), g.s_len()], |w| {
        g.prod(w[0], w[1], w[2]) != g.prod(w[2], w[1], w[0])
    })
    .map(|w| (w[0], w[1], w[2]))
}

/// `a α b = b α a` for every `a, α, b`.
pub fn is_commutative(g: &GammaSemiring) -> bool {
    commutativity_witness(g).is_none()
}

/// First `(a, α, b)`, all nonzero, with `a α b = 0`.
pub fn zdf_witness(g: &GammaSemiring) -> Option<(usize, usize, usize)> {
    first_violation(&[g.s_len(), g.g_len(), g.s_len()], |w| {
        w[0] != 0 && w[1] != 0 && w[2] != 0 && g.prod(w[0], w[1], w[2]) == 0
    })
    .map(|w| (w[0], w[1], w[2]))
}

pub fn is_zdf(g: &GammaSemiring) -> bool {
    zdf_witness(g).is_none()
}

/// First `(a, α)` with `a ≠ 0 ≠ α` admitting no `(b, β)` such that
/// `a α b β d = d` for all `d`.
pub fn gamma_semifield_witness(g: &GammaSemiring) -> Option<(usize, usize)> {
    let (ns, ng) = (g.s_len(), g.g_len());
    first_violation(&[ns, ng], |w| {
        let (a, alpha) = (w[0], w[1]);
        if a == 0 || alpha == 0 {
            return false;
        }
        let solvable = (0..ns).any(|b| {
            let ab = g.prod(a, alpha, b);
            (0..ng).any(|beta| (0..ns).all(|d| g.prod(ab, beta, d) == d))
        });
        !solvable
    })
    .map(|w| (w[0], w[1]))
}

/// Γ-semifield test for commutative instances. Structures with no pair
/// `a ≠ 0, α ≠ 0` are classified as non-semifields.
pub fn is_gamma_semifield(g: &GammaSemiring) -> Result<bool, Precondition> {
    if !is_commutative(g) {
        return Err(Precondition::NotCommutative);
    }
    if g.s_len() < 2 || g.g_len() < 2 {
        return Ok(false);
    }
    Ok(gamma_semifield_witness(g).is_none())
}

/// The smallest ideal of `r` containing `x`: saturate `{0, x}` under
/// addition and under multiplication by arbitrary elements on either side.
pub fn generated_ideal(r: &Semiring, x: usize) -> FixedBitSet {
    let n = r.len();
    let mut set = FixedBitSet::with_capacity(n);
    let mut work = vec![0, x];
    set.insert(0);
    set.insert(x);
    while let Some(a) = work.pop() {
        let members: Vec<usize> = set.ones().collect();
        let push = |v: usize, set: &mut FixedBitSet, work: &mut Vec<usize>| {
            if !set.put(v) {
                work.push(v);
            }
        };
        for m in members {
            push(r.add(a, m), &mut set, &mut work);
        }
        for s in 0..n {
            push(r.mul(s, a), &mut set, &mut work);
            push(r.mul(a, s), &mut set, &mut work);
        }
    }
    set
}

/// A nonzero proper ideal of `r`, if any: the ideal generated by the first
/// nonzero element that does not generate everything.
pub fn semifield_witness(r: &Semiring) -> Option<FixedBitSet> {
    (1..r.len()).map(|x| generated_ideal(r, x)).find(|i| i.count_ones(..) < r.len())
}

/// Semifield in the ideal-simplicity sense: commutative, more than one
/// element, and no nonzero proper ideals.
pub fn is_semifield(r: &Semiring) -> Result<bool, Precondition> {
    if !r.is_mul_commutative() {
        return Err(Precondition::NotCommutative);
    }
    if r.len() < 2 {
        return Ok(false);
    }
    Ok(semifield_witness(r).is_none())
}

/// Invertibility reading: `Some(true)` when an identity exists and every
/// nonzero element has an inverse, `None` when no identity exists.
pub fn has_inverses(r: &Semiring) -> Option<bool> {
    let e = r.identity()?;
    if r.len() < 2 {
        return Some(false);
    }
    Some((1..r.len()).all(|x| (0..r.len()).any(|y| r.mul(x, y) == e && r.mul(y, x) == e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{boolean, boolean_semiring, zero_product, zn, zn_semiring};

    #[test]
    fn commutativity() {
        assert!(is_commutative(&boolean()));
        assert!(is_commutative(&zn(4).unwrap()));
        let mut g = zn(4).unwrap();
        g.set_prod(1, 1, 2, 3).unwrap();
        assert_eq!(commutativity_witness(&g), Some((1, 1, 2)));
    }

    #[test]
    fn zero_divisors() {
        assert!(is_zdf(&boolean()));
        assert!(is_zdf(&zn(2).unwrap()));
        assert!(!is_zdf(&zn(4).unwrap()));
        // lexicographically first: 1·2·2 = 4 ≡ 0
        assert_eq!(zdf_witness(&zn(4).unwrap()), Some((1, 2, 2)));
        let g = zn(4).unwrap();
        assert_eq!(g.prod(2, 1, 2), 0);
    }

    #[test]
    fn gamma_semifields() {
        assert_eq!(is_gamma_semifield(&boolean()), Ok(true));
        assert_eq!(is_gamma_semifield(&zn(2).unwrap()), Ok(true));
        assert_eq!(is_gamma_semifield(&zn(4).unwrap()), Ok(false));
        assert_eq!(is_gamma_semifield(&zn(3).unwrap()), Ok(true));
        assert_eq!(is_gamma_semifield(&zero_product()), Ok(false));
    }

    #[test]
    fn gamma_semifield_needs_commutativity() {
        let mut g = zn(4).unwrap();
        g.set_prod(1, 1, 2, 3).unwrap();
        assert_eq!(is_gamma_semifield(&g), Err(Precondition::NotCommutative));
    }

    #[test]
    fn semifields() {
        assert_eq!(is_semifield(&boolean_semiring()), Ok(true));
        assert_eq!(is_semifield(&zn_semiring(2).unwrap()), Ok(true));
        assert_eq!(is_semifield(&zn_semiring(4).unwrap()), Ok(false));
        let w = semifield_witness(&zn_semiring(4).unwrap()).unwrap();
        assert_eq!(w.ones().collect::<Vec<_>>(), vec![0, 2]);
        let trivial = Semiring::new("0", vec!["0".into()], vec![0], vec![0]).unwrap();
        assert_eq!(is_semifield(&trivial), Ok(false));
    }

    #[test]
    fn invertibility_cross_check() {
        assert_eq!(has_inverses(&boolean_semiring()), Some(true));
        assert_eq!(has_inverses(&zn_semiring(4).unwrap()), Some(false));
        assert_eq!(has_inverses(&zn_semiring(5).unwrap()), Some(true));
    }
}
