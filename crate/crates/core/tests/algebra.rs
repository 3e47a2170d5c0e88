mod common;

use common::{cd_mul, octonion_in, oracle_mul, rel_dist};
use octo_core::octonion::{associator, from_polar, polar_form};
use octo_core::Octonion;
use proptest::prelude::*;

#[test]
fn basis_table_matches_recursive_doubling() {
    for i in 0..8 {
        for j in 0..8 {
            let (a, b) = (Octonion::basis(i), Octonion::basis(j));
            assert_eq!((a * b).0.to_vec(), cd_mul(&a.0, &b.0), "e{i} e{j}");
        }
    }
}

#[test]
fn quaternion_subalgebra_and_doubling_unit() {
    let e = Octonion::basis;
    assert_eq!(e(1) * e(2), e(3));
    assert_eq!(e(1) * e(4), e(5));
    assert_eq!(e(2) * e(4), e(6));
    assert_eq!(e(3) * e(4), e(7));
    // the classic non-associative triple
    assert_eq!((e(1) * e(2)) * e(4), e(7));
    assert_eq!(e(1) * (e(2) * e(4)), -e(7));
}

#[test]
fn not_associative_in_general() {
    let e = Octonion::basis;
    assert_eq!(associator(e(1), e(2), e(4)).norm(), 2.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn product_matches_oracle(x in octonion_in(-10.0, 10.0), y in octonion_in(-10.0, 10.0)) {
        let scale = x.norm() * y.norm();
        prop_assert!((x * y - oracle_mul(x, y)).norm() <= 1e-14 * scale.max(1.0));
    }

    #[test]
    fn alternative_laws(x in octonion_in(-3.0, 3.0), y in octonion_in(-3.0, 3.0)) {
        let s = x.norm_sqr() * y.norm();
        prop_assert!(((x * x) * y - x * (x * y)).norm() <= 1e-12 * s);
        prop_assert!(((y * x) * x - y * (x * x)).norm() <= 1e-12 * s);
        // flexibility
        prop_assert!(((x * y) * x - x * (y * x)).norm() <= 1e-12 * s);
    }

    #[test]
    fn moufang_identities(
        x in octonion_in(-2.0, 2.0),
        y in octonion_in(-2.0, 2.0),
        z in octonion_in(-2.0, 2.0),
    ) {
        let s = x.norm_sqr() * y.norm() * z.norm();
        prop_assert!(((x * y) * (z * x) - x * ((y * z) * x)).norm() <= 1e-12 * s);
        prop_assert!((((x * y) * x) * z - x * (y * (x * z))).norm() <= 1e-12 * s);
        prop_assert!(((z * x) * y * x - z * (x * y * x)).norm() <= 1e-12 * s);
    }

    #[test]
    fn norm_is_multiplicative(x in octonion_in(-5.0, 5.0), y in octonion_in(-5.0, 5.0)) {
        let lhs = (x * y).norm();
        let rhs = x.norm() * y.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
    }

    #[test]
    fn conjugation_reverses_products(x in octonion_in(-3.0, 3.0), y in octonion_in(-3.0, 3.0)) {
        let lhs = (x * y).conj();
        prop_assert!((lhs - y.conj() * x.conj()).norm() <= 1e-13 * x.norm() * y.norm());
        prop_assert!((x * x.conj() - Octonion::real(x.norm_sqr())).norm() <= 1e-13 * x.norm_sqr());
    }

    #[test]
    fn associator_is_alternating(
        x in octonion_in(-2.0, 2.0),
        y in octonion_in(-2.0, 2.0),
        z in octonion_in(-2.0, 2.0),
    ) {
        let s = x.norm() * y.norm() * z.norm();
        prop_assert!((associator(x, y, z) + associator(y, x, z)).norm() <= 1e-12 * s);
        prop_assert!((associator(x, y, z) + associator(x, z, y)).norm() <= 1e-12 * s);
    }

    #[test]
    fn inverse_is_two_sided(x in octonion_in(-4.0, 4.0)) {
        prop_assume!(x.norm() > 1e-3);
        let inv = x.inverse().unwrap();
        prop_assert!((x * inv - Octonion::ONE).norm() < 1e-12);
        prop_assert!((inv * x - Octonion::ONE).norm() < 1e-12);
        // division from either side is consistent with alternativity
        let y = Octonion::new([0.3, -1.0, 0.2, 0.0, 1.5, -0.7, 0.1, 0.9]);
        prop_assert!(((y * inv) * x - y).norm() < 1e-11 * y.norm().max(1.0) * (1.0 + x.norm() * inv.norm()));
    }

    #[test]
    fn polar_roundtrip(x in octonion_in(-4.0, 4.0)) {
        prop_assume!(x.imag_norm() > 1e-6);
        let p = polar_form(x).unwrap();
        prop_assert!((0.0..=std::f64::consts::PI).contains(&p.angle));
        let back = from_polar(&p).unwrap();
        prop_assert!(rel_dist(back, x) < 1e-12);
    }
}
