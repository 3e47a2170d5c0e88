//! Elementary functions of an octonionic variable.
//!
//! Every function here maps `x` into its own slice `span{1, I(x)}`, which is a copy of
//! the complex plane, so the usual complex formulas apply with `i` replaced by `I(x)`.

use crate::error::{Error, Result};
use crate::octonion::Octonion;

fn checked(x: Octonion) -> Result<Octonion> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Overflow)
    }
}

/// `e^x = e^{x0} (cos rho + I(x) sin rho)` with `rho` the imaginary norm.
pub fn oct_exp(x: Octonion) -> Result<Octonion> {
    let scale = x.re().exp();
    if !scale.is_finite() {
        return Err(Error::Overflow);
    }
    let rho = x.imag_norm();
    let (s, c) = rho.sin_cos();
    // sin(rho)/rho along the raw imaginary part avoids normalizing tiny vectors.
    let sinc = if rho == 0.0 { 1.0 } else { s / rho };
    checked(Octonion::from_parts(
        scale * c,
        x.imag().map(|v| v * sinc * scale),
    ))
}

/// Principal logarithm `ln|x| + I(x) phi`, `0 < phi < pi`.
pub fn oct_ln(x: Octonion) -> Result<Octonion> {
    let modulus = x.norm();
    if modulus == 0.0 {
        return Err(Error::ZeroInput);
    }
    let rho = x.imag_norm();
    if rho == 0.0 {
        if x.re() < 0.0 {
            return Err(Error::NegativeRealAxis(x.re()));
        }
        return Ok(Octonion::real(x.re().ln()));
    }
    let phi = rho.atan2(x.re());
    let k = phi / rho;
    Ok(Octonion::from_parts(modulus.ln(), x.imag().map(|v| v * k)))
}

/// Integer power by De Moivre on the polar form; real inputs use real exponentiation.
pub fn oct_powi(x: Octonion, n: i32) -> Result<Octonion> {
    if n == 0 {
        return Ok(Octonion::ONE);
    }
    if x.norm_sqr() == 0.0 {
        return if n < 0 {
            Err(Error::ZeroDivision)
        } else {
            Ok(Octonion::ZERO)
        };
    }
    let rho = x.imag_norm();
    if rho == 0.0 {
        return checked(Octonion::real(x.re().powi(n)));
    }
    let modulus = x.norm();
    let phi = rho.atan2(x.re());
    let r = modulus.powi(n);
    let (s, c) = (f64::from(n) * phi).sin_cos();
    let k = r * s / rho;
    checked(Octonion::from_parts(r * c, x.imag().map(|v| v * k)))
}

/// Principal real power `exp(a ln x)`.
///
/// This extends the integer De Moivre formula to real exponents along the principal
/// branch; it is not defined on the non-positive real axis.
pub fn oct_powf(x: Octonion, a: f64) -> Result<Octonion> {
    let ln = oct_ln(x)?;
    oct_exp(ln.scale(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn e(i: usize) -> Octonion {
        Octonion::basis(i)
    }

    fn assert_close(a: Octonion, b: Octonion, tol: f64) {
        assert!((a - b).norm() <= tol, "{a} vs {b}");
    }

    #[test]
    fn exp_examples() {
        assert_eq!(oct_exp(Octonion::ZERO).unwrap(), Octonion::ONE);
        assert_close(oct_exp(e(1).scale(PI)).unwrap(), -Octonion::ONE, 1e-15);
        assert_close(
            oct_exp(Octonion::ONE + e(7).scale(FRAC_PI_2)).unwrap(),
            e(7).scale(E),
            1e-15,
        );
        assert_eq!(oct_exp(Octonion::real(800.0)), Err(Error::Overflow));
    }

    #[test]
    fn ln_examples() {
        assert_eq!(oct_ln(Octonion::ONE).unwrap(), Octonion::ZERO);
        assert_close(oct_ln(e(1)).unwrap(), e(1).scale(FRAC_PI_2), 1e-15);
        assert_eq!(oct_ln(Octonion::ZERO), Err(Error::ZeroInput));
        assert_eq!(
            oct_ln(Octonion::real(-2.0)),
            Err(Error::NegativeRealAxis(-2.0))
        );
    }

    #[test]
    fn powi_examples() {
        let x = Octonion::new([0.2, 1.0, -3.0, 0.0, 0.5, 0.0, 0.0, 1.0]);
        assert_eq!(oct_powi(x, 0).unwrap(), Octonion::ONE);
        assert_close(
            oct_powi(Octonion::ONE + e(1), 2).unwrap(),
            e(1).scale(2.0),
            1e-15,
        );
        assert_close(
            oct_powi(e(1) + e(2), 2).unwrap(),
            Octonion::real(-2.0),
            1e-15,
        );
        assert_eq!(
            oct_powi(Octonion::real(-2.0), 3).unwrap(),
            Octonion::real(-8.0)
        );
        assert_eq!(oct_powi(Octonion::ZERO, -1), Err(Error::ZeroDivision));
        assert_eq!(oct_powi(Octonion::ZERO, 2).unwrap(), Octonion::ZERO);
    }

    #[test]
    fn powf_examples() {
        let x = Octonion::new([0.2, 1.0, -3.0, 0.0, 0.5, 0.0, 0.0, 1.0]);
        assert_close(oct_powf(x, 1.0).unwrap(), x, 1e-14);
        assert_close(
            oct_powf(Octonion::real(4.0), 0.5).unwrap(),
            Octonion::real(2.0),
            1e-15,
        );
        assert_close(
            oct_powf(e(1), 0.5).unwrap(),
            (Octonion::ONE + e(1)).scale(FRAC_1_SQRT_2),
            1e-15,
        );
        assert_eq!(
            oct_powf(Octonion::real(-1.0), 0.5),
            Err(Error::NegativeRealAxis(-1.0))
        );
    }

    #[test]
    fn tiny_imaginary_part_stays_accurate() {
        let x = Octonion::real(2.0) + e(3).scale(1e-20);
        let l = oct_ln(x).unwrap();
        assert!((l[3] - 0.5e-20).abs() < 1e-35);
        let ex = oct_exp(x).unwrap();
        assert!((ex[3] - 2f64.exp() * 1e-20).abs() < 1e-33);
    }
}
