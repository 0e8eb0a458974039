use gsl_core::config::Caps;
use gsl_core::fuzzy::{characteristic, enumerate_crisp_ideals, enumerate_fuzzy_ideals, is_fuzzy_ideal};
use gsl_core::matrix::{
    build_matrix_gamma, check_operator_matrix_iso, decode, lift_fuzzy_to_matrix, verify_theorem_3_19,
    MatrixValidation,
};
use gsl_core::structure::{boolean, validate_gamma_semiring, zero_product, zn};
use gsl_core::verify::Status;
use gsl_core::{CrispSubset, GammaSemiring, Grade, GradeChain, IdealKind, Side};

fn caps() -> Caps {
    Caps::default()
}

// Entry (i, j) of A Δ B straight from the definition.
fn product_entry(base: &GammaSemiring, a: &[usize], d: &[usize], b: &[usize], n: usize, i: usize, j: usize) -> usize {
    let mut acc = 0;
    for k in 0..n {
        for l in 0..n {
            acc = base.add_s(acc, base.prod(a[i * n + k], d[k * n + l], b[l * n + j]));
        }
    }
    acc
}

#[test]
fn gb2_and_z2_2_are_valid() {
    for base in [boolean(), zn(2).unwrap()] {
        let m = build_matrix_gamma(&base, 2, &caps()).unwrap();
        assert_eq!(m.s_len(), 16);
        assert_eq!(m.validation, MatrixValidation::Passed);
        assert!(validate_gamma_semiring(&m.gamma).is_ok());
    }
}

#[test]
fn products_follow_the_triple_sum() {
    let base = zn(3).unwrap();
    let m = build_matrix_gamma(&base, 2, &caps()).unwrap();
    for (x, d, y) in [(5, 17, 80), (1, 1, 1), (40, 3, 77), (80, 80, 80)] {
        let (a, dd, b) = (decode(x, 3, 4), decode(d, 3, 4), decode(y, 3, 4));
        let c = decode(m.gamma.prod(x, d, y), 3, 4);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(c[i * 2 + j], product_entry(&base, &a, &dd, &b, 2, i, j));
            }
        }
    }
}

#[test]
fn z4_2_validation_is_skipped_not_silent() {
    let m = build_matrix_gamma(&zn(4).unwrap(), 2, &caps()).unwrap();
    assert_eq!(m.s_len(), 256);
    assert!(matches!(m.validation, MatrixValidation::Skipped { .. }));
}

#[test]
fn iso_both_sides() {
    for base in [boolean(), zn(2).unwrap(), zero_product()] {
        for side in [Side::Left, Side::Right] {
            let rep = check_operator_matrix_iso(&base, 2, side, &caps()).unwrap();
            assert_eq!(rep.status, Status::Pass, "{} {side}: {:?}", base.name(), rep.checks);
        }
    }
    let rep = check_operator_matrix_iso(&boolean(), 2, Side::Left, &caps()).unwrap();
    assert_eq!(rep.count("|L(S_n)|"), Some(16));
    assert_eq!(rep.count("|L_n|"), Some(16));
}

#[test]
fn iso_n1_is_identity_shaped() {
    let rep = check_operator_matrix_iso(&zn(3).unwrap(), 1, Side::Right, &caps()).unwrap();
    assert_eq!(rep.status, Status::Pass);
    assert_eq!(rep.count("|R(S_n)|"), rep.count("|R|"));
}

#[test]
fn lifted_ideals_are_ideals() {
    let chain = GradeChain::ternary();
    for base in [boolean(), zn(2).unwrap(), zn(3).unwrap()] {
        let m = build_matrix_gamma(&base, 2, &caps()).unwrap();
        for mu in enumerate_fuzzy_ideals(&base, &chain, IdealKind::TwoSided, 1000).unwrap() {
            assert!(is_fuzzy_ideal(&m.gamma, &lift_fuzzy_to_matrix(&mu, 2), IdealKind::TwoSided));
        }
    }
}

#[test]
fn lift_of_characteristic_is_characteristic_of_matrices_over_i() {
    let base = zn(4).unwrap();
    for i in enumerate_crisp_ideals(&base, IdealKind::TwoSided, 100).unwrap() {
        let lifted = lift_fuzzy_to_matrix(&characteristic(&i), 2);
        let inside = CrispSubset::from_fn(256, |c| decode(c, 4, 4).into_iter().all(|e| i.contains(e)));
        assert_eq!(lifted, characteristic(&inside));
    }
}

#[test]
fn lift_constant_one() {
    let mu = gsl_core::FuzzySubset::constant(3, Grade::ONE);
    assert_eq!(lift_fuzzy_to_matrix(&mu, 2), gsl_core::FuzzySubset::constant(81, Grade::ONE));
}

#[test]
fn theorem_3_19() {
    for base in [boolean(), zn(2).unwrap()] {
        let rep = verify_theorem_3_19(&base, 2, &GradeChain::binary(), &caps()).unwrap();
        assert_eq!(rep.status, Status::Pass, "{:?}", rep.checks);
        let crisp = enumerate_crisp_ideals(&base, IdealKind::TwoSided, 100).unwrap().len() as u64;
        assert_eq!(rep.count("FI(S)"), Some(crisp));
        assert_eq!(rep.count("FI(S_n)"), Some(crisp));
    }
    let rep = verify_theorem_3_19(&boolean(), 2, &GradeChain::ternary(), &caps()).unwrap();
    assert_eq!(rep.status, Status::Pass);
    assert_eq!(rep.count("FI(S_n)"), Some(3));
    assert_eq!(rep.check("surjective").unwrap().status, Status::Pass);
}

#[test]
fn theorem_3_19_downgrade() {
    let rep = verify_theorem_3_19(&zn(4).unwrap(), 2, &GradeChain::ternary(), &caps()).unwrap();
    assert_eq!(rep.check("surjective").unwrap().status, Status::PreconditionUnmet);
    assert!(rep.check("surjective").unwrap().detail.as_ref().unwrap().starts_with("skipped (cap)"));
    assert_eq!(rep.check("injective").unwrap().status, Status::Pass);
    assert_eq!(rep.count("FI(S)"), Some(6));
}
