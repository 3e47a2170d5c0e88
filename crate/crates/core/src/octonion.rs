//! Octonion value type and the algebra layer.
//!
//! Coefficients are stored as `(c0, ..., c7)` for `x = c0 + c1 e1 + ... + c7 e7`.
//! The product is the Cayley-Dickson doubling of the quaternions `{1, e1, e2, e3}`
//! with `e4` as the doubling unit:
//!
//! ```text
//! (a + b e4)(c + d e4) = (a c - conj(d) b) + (d a + b conj(c)) e4
//! ```
//!
//! which yields `e3 = e1 e2`, `e5 = e1 e4`, `e6 = e2 e4` and `e7 = e3 e4`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative threshold below which an imaginary part is treated as zero by [`polar_form`].
pub const REAL_AXIS_EPS: f64 = 1e-14;

/// Tolerance on `|unit_imag| - 1` accepted by [`from_polar`].
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// An element of the octonion algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Octonion(pub [f64; 8]);

type Quat = [f64; 4];

fn quat_mul(a: Quat, b: Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn quat_conj(a: Quat) -> Quat {
    [a[0], -a[1], -a[2], -a[3]]
}

impl Octonion {
    pub const ZERO: Octonion = Octonion([0.0; 8]);
    pub const ONE: Octonion = Octonion([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

    pub const fn new(coeffs: [f64; 8]) -> Self {
        Octonion(coeffs)
    }

    /// Builds an octonion, rejecting NaN or infinite coefficients.
    pub fn try_new(coeffs: [f64; 8]) -> Result<Self> {
        if coeffs.iter().all(|c| c.is_finite()) {
            Ok(Octonion(coeffs))
        } else {
            Err(Error::Overflow)
        }
    }

    pub const fn real(a: f64) -> Self {
        Octonion([a, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    /// The basis unit `e_i` (`e_0 = 1`).
    ///
    /// # Panics
    /// If `i > 7`.
    pub fn basis(i: usize) -> Self {
        assert!(i < 8, "octonion basis index {i} out of range");
        let mut c = [0.0; 8];
        c[i] = 1.0;
        Octonion(c)
    }

    pub fn from_parts(re: f64, imag: [f64; 7]) -> Self {
        let mut c = [0.0; 8];
        c[0] = re;
        c[1..].copy_from_slice(&imag);
        Octonion(c)
    }

    pub fn coeffs(&self) -> [f64; 8] {
        self.0
    }

    pub fn re(&self) -> f64 {
        self.0[0]
    }

    pub fn imag(&self) -> [f64; 7] {
        let mut v = [0.0; 7];
        v.copy_from_slice(&self.0[1..]);
        v
    }

    /// Euclidean norm of the seven imaginary coefficients (the `rho` of the Euler relation).
    pub fn imag_norm(&self) -> f64 {
        self.0[1..].iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Self {
        let mut c = self.0;
        for v in &mut c[1..] {
            *v = -*v;
        }
        Octonion(c)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroDivision);
        }
        let inv = self.conj() / n2;
        if inv.is_finite() {
            Ok(inv)
        } else {
            Err(Error::Overflow)
        }
    }

    pub fn is_real(&self) -> bool {
        self.0[1..].iter().all(|&c| c == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn scale(&self, s: f64) -> Self {
        Octonion(self.0.map(|c| c * s))
    }

    fn halves(&self) -> (Quat, Quat) {
        let c = &self.0;
        ([c[0], c[1], c[2], c[3]], [c[4], c[5], c[6], c[7]])
    }

    fn from_halves(lo: Quat, hi: Quat) -> Self {
        Octonion([lo[0], lo[1], lo[2], lo[3], hi[0], hi[1], hi[2], hi[3]])
    }
}

impl Index<usize> for Octonion {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Octonion {
    type Output = Octonion;

    fn add(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(rhs.0) {
            *a += b;
        }
        Octonion(c)
    }
}

impl AddAssign for Octonion {
    fn add_assign(&mut self, rhs: Octonion) {
        *self = *self + rhs;
    }
}

impl Sub for Octonion {
    type Output = Octonion;

    fn sub(self, rhs: Octonion) -> Octonion {
        self + (-rhs)
    }
}

impl Neg for Octonion {
    type Output = Octonion;

    fn neg(self) -> Octonion {
        Octonion(self.0.map(|c| -c))
    }
}

impl Mul for Octonion {
    type Output = Octonion;

    fn mul(self, rhs: Octonion) -> Octonion {
        let (a, b) = self.halves();
        let (c, d) = rhs.halves();
        let ac = quat_mul(a, c);
        let db = quat_mul(quat_conj(d), b);
        let da = quat_mul(d, a);
        let bc = quat_mul(b, quat_conj(c));
        let lo = [ac[0] - db[0], ac[1] - db[1], ac[2] - db[2], ac[3] - db[3]];
        let hi = [da[0] + bc[0], da[1] + bc[1], da[2] + bc[2], da[3] + bc[3]];
        Octonion::from_halves(lo, hi)
    }
}

impl Mul<f64> for Octonion {
    type Output = Octonion;

    fn mul(self, rhs: f64) -> Octonion {
        self.scale(rhs)
    }
}

impl Mul<Octonion> for f64 {
    type Output = Octonion;

    fn mul(self, rhs: Octonion) -> Octonion {
        rhs.scale(self)
    }
}

impl Div<f64> for Octonion {
    type Output = Octonion;

    fn div(self, rhs: f64) -> Octonion {
        Octonion(self.0.map(|c| c / rhs))
    }
}

impl From<f64> for Octonion {
    fn from(a: f64) -> Self {
        Octonion::real(a)
    }
}

/// Writes the literal form `a0+a1e1+...+a7e7`, omitting zero imaginary terms.
impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0[0])?;
        for (i, &c) in self.0.iter().enumerate().skip(1) {
            if c == 0.0 {
                continue;
            }
            if c.is_sign_negative() {
                write!(f, "{c}e{i}")?;
            } else {
                write!(f, "+{c}e{i}")?;
            }
        }
        Ok(())
    }
}

pub fn multiply(a: Octonion, b: Octonion) -> Octonion {
    a * b
}

pub fn conjugate(x: Octonion) -> Octonion {
    x.conj()
}

pub fn norm(x: Octonion) -> f64 {
    x.norm()
}

pub fn inverse(x: Octonion) -> Result<Octonion> {
    x.inverse()
}

/// `(ab)c - a(bc)`; zero exactly when the triple associates.
pub fn associator(a: Octonion, b: Octonion, c: Octonion) -> Octonion {
    (a * b) * c - a * (b * c)
}

/// Polar form `x = |x| (cos phi + I(x) sin phi)` of a non-real octonion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarDecomposition {
    pub modulus: f64,
    /// The unit imaginary direction `I(x)`, as coefficients of `e1..e7`.
    pub unit_imag: [f64; 7],
    /// Angle in the open interval `(0, pi)`.
    pub angle: f64,
}

impl PolarDecomposition {
    /// `I(x)` embedded as a pure imaginary octonion; it squares to `-1`.
    pub fn unit_imag_octonion(&self) -> Octonion {
        Octonion::from_parts(0.0, self.unit_imag)
    }
}

pub fn polar_form(x: Octonion) -> Result<PolarDecomposition> {
    polar_form_with_eps(x, REAL_AXIS_EPS)
}

/// [`polar_form`] with an explicit real-axis threshold: inputs whose imaginary norm is below
/// `rel_eps * max(1, |x|)` are rejected.
pub fn polar_form_with_eps(x: Octonion, rel_eps: f64) -> Result<PolarDecomposition> {
    let modulus = x.norm();
    let rho = x.imag_norm();
    if rho < rel_eps * modulus.max(1.0) || rho == 0.0 {
        return Err(Error::RealAxisInput { imag_norm: rho });
    }
    let unit_imag = x.imag().map(|c| c / rho);
    // atan2 equals arccos(x0/|x|) for rho > 0 and stays accurate near 0 and pi.
    let angle = rho.atan2(x.re());
    Ok(PolarDecomposition {
        modulus,
        unit_imag,
        angle,
    })
}

pub fn from_polar(p: &PolarDecomposition) -> Result<Octonion> {
    let unit_norm = p.unit_imag.iter().map(|c| c * c).sum::<f64>().sqrt();
    if !((unit_norm - 1.0).abs() <= UNIT_NORM_TOL) {
        return Err(Error::InvalidPolar(format!(
            "unit_imag has norm {unit_norm}, expected 1"
        )));
    }
    if !(p.modulus.is_finite() && p.modulus >= 0.0) || !p.angle.is_finite() {
        return Err(Error::InvalidPolar(format!(
            "modulus {} / angle {} out of range",
            p.modulus, p.angle
        )));
    }
    let (s, c) = p.angle.sin_cos();
    let rs = p.modulus * s;
    Ok(Octonion::from_parts(
        p.modulus * c,
        p.unit_imag.map(|u| u * rs),
    ))
}
