//! Fixed finite instances.

use crate::error::{Error, Result};

use super::{validate_gamma_semiring, GammaSemiring, Semiring};

#[derive(Debug, Clone)]
pub enum InstanceKind {
    Boolean,
    Zn(usize),
    FromSemiring(Semiring),
}

fn numeric_ids(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// `S = Γ = {0, 1}`, both additions max, product the min of its arguments.
pub fn boolean() -> GammaSemiring {
    GammaSemiring::from_fns(
        "GB",
        numeric_ids(2),
        numeric_ids(2),
        |a, b| a.max(b),
        |a, b| a.max(b),
        |x, g, y| x.min(g).min(y),
    )
    .expect("boolean tables are well formed")
}

/// `S = Γ = ℤₙ` with `x α y = xαy mod n`.
pub fn zn(n: usize) -> Result<GammaSemiring> {
    if n < 2 {
        return Err(Error::InvalidInstance(format!("zn needs n ≥ 2, got {n}")));
    }
    GammaSemiring::from_fns(
        format!("Z{n}"),
        numeric_ids(n),
        numeric_ids(n),
        |a, b| (a + b) % n,
        |a, b| (a + b) % n,
        |x, g, y| (x * g * y) % n,
    )
}

/// `S = Γ = {0, 1}` under max with the constant-zero product. Has no unities.
pub fn zero_product() -> GammaSemiring {
    GammaSemiring::from_fns(
        "ZeroProduct",
        numeric_ids(2),
        numeric_ids(2),
        |a, b| a.max(b),
        |a, b| a.max(b),
        |_, _, _| 0,
    )
    .expect("zero tables are well formed")
}

/// `Γ = S` and `a α b = a·α·b`.
pub fn from_semiring(r: &Semiring) -> Result<GammaSemiring> {
    GammaSemiring::from_fns(
        format!("{}-gamma", r.name()),
        r.ids().to_vec(),
        r.ids().to_vec(),
        |a, b| r.add(a, b),
        |a, b| r.add(a, b),
        |x, g, y| r.mul(r.mul(x, g), y),
    )
}

/// Builds the requested instance and validates it.
pub fn gen_instance(kind: InstanceKind) -> Result<GammaSemiring> {
    let g = match kind {
        InstanceKind::Boolean => boolean(),
        InstanceKind::Zn(n) => zn(n)?,
        InstanceKind::FromSemiring(r) => from_semiring(&r)?,
    };
    let outcome = validate_gamma_semiring(&g);
    if let Some(v) = outcome.violations().first() {
        return Err(Error::InvalidInstance(format!(
            "{} violates {} at {}",
            g.name(),
            v.axiom,
            v.describe(g.s_ids(), g.g_ids())
        )));
    }
    Ok(g)
}

/// The two-element Boolean semiring (max, min).
pub fn boolean_semiring() -> Semiring {
    Semiring::from_fns("B", numeric_ids(2), |a, b| a.max(b), |a, b| a.min(b))
        .expect("boolean tables are well formed")
}

/// `ℤₙ` as a semiring.
pub fn zn_semiring(n: usize) -> Result<Semiring> {
    if n < 2 {
        return Err(Error::InvalidInstance(format!("zn needs n ≥ 2, got {n}")));
    }
    Semiring::from_fns(format!("Z{n}"), numeric_ids(n), |a, b| (a + b) % n, |a, b| (a * b) % n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_tables() {
        let g = boolean();
        assert_eq!(g.prod_table(), &[0, 0, 0, 0, 0, 0, 0, 1]);
        let z2 = zn(2).unwrap();
        assert_eq!(z2.add_s(1, 1), 0);
        assert_eq!(z2.prod(1, 1, 1), 1);
        let z4 = zn(4).unwrap();
        assert_eq!(z4.prod(3, 3, 3), 3);
    }

    #[test]
    fn zn_rejects_small_n() {
        assert!(zn(1).is_err());
        assert!(zn(0).is_err());
        assert!(gen_instance(InstanceKind::Zn(1)).is_err());
    }

    #[test]
    fn gen_from_semiring() {
        let g = gen_instance(InstanceKind::FromSemiring(zn_semiring(4).unwrap())).unwrap();
        assert_eq!(g.prod_table(), zn(4).unwrap().prod_table());
        assert!(gen_instance(InstanceKind::Boolean).is_ok());
    }

    #[test]
    fn from_invalid_semiring_is_rejected() {
        let mut r = zn_semiring(4).unwrap();
        r.set_mul(1, 1, 2);
        assert!(matches!(
            gen_instance(InstanceKind::FromSemiring(r)),
            Err(Error::InvalidInstance(_))
        ));
    }
}
