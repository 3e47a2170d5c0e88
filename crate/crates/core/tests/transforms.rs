mod common;

use common::{borwein_zeta, embed, lanczos_gamma, project, simpson, unit_imag};
use num_complex::Complex64;
use octo_core::quadrature::{
    integrate_finite, integrate_semi_infinite, IntegrandProfile, QuadratureConfig,
};
use octo_core::transforms::{
    bilateral_laplace, laplace, oct_gamma, oct_zeta, OriginalSpec, ZetaMethod,
};
use octo_core::{Error, Octonion};
use proptest::prelude::*;
use std::f64::consts::PI;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn right_half(x0: std::ops::Range<f64>) -> impl Strategy<Value = Octonion> {
    (x0, proptest::array::uniform7(-1.5f64..1.5)).prop_map(|(r, v)| Octonion::from_parts(r, v))
}

#[test]
fn unit_step_at_real_argument_matches_simpson() {
    for s in [0.5, 1.0, 3.0] {
        let r = laplace(&OriginalSpec::unit_step(), Octonion::real(s), &cfg()).unwrap();
        let reference = simpson(|t| (-s * t).exp(), 0.0, 120.0, 200_000);
        assert!((r.value[0] - reference).abs() < 1e-9, "s = {s}");
        assert!((r.value[0] - 1.0 / s).abs() < 1e-10);
    }
}

#[test]
fn cosine_transform_on_a_complex_slice() {
    let u = unit_imag([0.3, -0.2, 0.5, 0.1, 0.0, 0.7, -0.4]);
    for (z, w) in [
        (Complex64::new(0.7, 1.3), 1.0),
        (Complex64::new(1.5, -2.0), 2.0),
    ] {
        let r = laplace(&OriginalSpec::cosine(w), embed(z, u), &cfg()).unwrap();
        let expected = z / (z * z + w * w);
        let (got, rest) = project(r.value, u);
        assert!((got - expected).norm() < 1e-8 * expected.norm());
        assert!(rest < 1e-12);
    }
}

#[test]
fn region_of_convergence_is_enforced() {
    let err = laplace(&OriginalSpec::cosine(1.0), Octonion::real(-0.1), &cfg()).unwrap_err();
    assert!(matches!(err, Error::RegionOfConvergence { .. }));
    let power = OriginalSpec::power(1.0).unwrap();
    assert!(laplace(&power, Octonion::real(0.2), &cfg()).is_err());
}

#[test]
fn gamma_known_values() {
    let g = |x: f64| oct_gamma(Octonion::real(x), &cfg()).unwrap()[0];
    assert!((g(0.5) - PI.sqrt()).abs() < 1e-8);
    assert!((g(1.0) - 1.0).abs() < 1e-9);
    assert!((g(2.5) - 1.329_340_388_179_137).abs() < 1e-9);
    assert!((g(0.1) - 9.513_507_698_668_732).abs() < 1e-7);
    assert!(oct_gamma(Octonion::real(-0.5), &cfg()).is_err());
}

#[test]
fn zeta_known_values() {
    for method in [ZetaMethod::Series, ZetaMethod::Integral] {
        let z = |x: f64| oct_zeta(Octonion::real(x), &cfg(), method).unwrap()[0];
        assert!((z(2.0) - PI * PI / 6.0).abs() < 1e-8, "{method:?}");
        assert!(
            (z(3.0) - 1.202_056_903_159_594_2).abs() < 1e-8,
            "{method:?}"
        );
        assert!((z(1.5) - 2.612_375_348_685_488).abs() < 1e-7, "{method:?}");
        assert!((z(4.0) - PI.powi(4) / 90.0).abs() < 1e-8, "{method:?}");
    }
    assert!(oct_zeta(Octonion::real(1.0), &cfg(), ZetaMethod::Series).is_err());
}

#[test]
fn gamma_kernel_bilateral_transform() {
    // int exp(-x s) exp(-e^s) ds = Gamma(-x) for x0 < 0
    let x = Octonion::new([-1.5, 0.4, 0.0, 0.0, 0.0, 0.0, -0.3, 0.0]);
    let r = bilateral_laplace(&OriginalSpec::gamma_kernel(), x, &cfg()).unwrap();
    let g = oct_gamma(-x, &cfg()).unwrap();
    assert!((r.value - g).norm() < 1e-8 * g.norm());
}

#[test]
fn finite_and_semi_infinite_quadrature() {
    let q = integrate_finite(|t: f64| Octonion::real(t.sin()), 0.0, PI, &cfg()).unwrap();
    assert!((q.value[0] - 2.0).abs() < 1e-12);
    let p = IntegrandProfile::new(1.0).with_oscillation(3.0);
    let q = integrate_semi_infinite(
        |t: f64| Octonion::real((-t).exp() * (3.0 * t).cos()),
        &p,
        &cfg(),
    )
    .unwrap();
    assert!((q.value[0] - 0.1).abs() < 1e-10);
    assert!(q.est_error < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn examples_match_closed_forms(x in right_half(0.5..3.0), which in 0usize..7) {
        let orig = match which {
            0 => OriginalSpec::unit_step(),
            1 => OriginalSpec::cosine(0.5),
            2 => OriginalSpec::cosine(1.0),
            3 => OriginalSpec::cosine(2.0),
            4 => OriginalSpec::power(0.5).unwrap(),
            5 => OriginalSpec::power(1.0).unwrap(),
            _ => OriginalSpec::power(2.5).unwrap(),
        };
        let r = laplace(&orig, x, &cfg()).unwrap();
        let exact = (orig.closed_form.as_ref().unwrap())(x).unwrap();
        let err = (r.value - exact).norm();
        prop_assert!(err <= 1e-7 * exact.norm(), "{}: err {err:e}", orig.name);
        // the reported bound is honest up to a small safety factor
        prop_assert!(err <= 10.0 * r.est_error + 1e-13, "{}: err {err:e} est {:e}", orig.name, r.est_error);
    }

    #[test]
    fn gamma_on_a_slice_matches_lanczos(
        re in 0.3f64..3.0,
        im in -2.0f64..2.0,
        v in proptest::array::uniform7(-1.0f64..1.0),
    ) {
        prop_assume!(v.iter().map(|c| c * c).sum::<f64>() > 1e-2 && im.abs() > 1e-3);
        let u = unit_imag(v);
        let z = Complex64::new(re, im);
        let (got, rest) = project(oct_gamma(embed(z, u), &cfg()).unwrap(), u);
        let expected = lanczos_gamma(z);
        prop_assert!((got - expected).norm() < 1e-8 * expected.norm().max(1.0));
        prop_assert!(rest < 1e-12);
    }

    #[test]
    fn gamma_recurrence(x in right_half(0.5..3.0)) {
        let g = oct_gamma(x, &cfg()).unwrap();
        let g1 = oct_gamma(x + Octonion::ONE, &cfg()).unwrap();
        prop_assert!((g1 - x * g).norm() < 1e-7 * g1.norm().max(1.0));
    }

    #[test]
    fn zeta_on_a_slice_matches_borwein(
        re in 1.5f64..4.0,
        im in -3.0f64..3.0,
        v in proptest::array::uniform7(-1.0f64..1.0),
        integral in any::<bool>(),
    ) {
        prop_assume!(v.iter().map(|c| c * c).sum::<f64>() > 1e-2 && im.abs() > 1e-3);
        let method = if integral { ZetaMethod::Integral } else { ZetaMethod::Series };
        let u = unit_imag(v);
        let z = Complex64::new(re, im);
        let (got, rest) = project(oct_zeta(embed(z, u), &cfg(), method).unwrap(), u);
        let expected = borwein_zeta(z);
        prop_assert!((got - expected).norm() < 1e-8 * expected.norm(), "{got} vs {expected}");
        prop_assert!(rest < 1e-12);
    }
}
