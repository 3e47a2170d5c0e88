//! Test-side oracles, written independently of the library code they check.
#![allow(dead_code)]

use num_complex::Complex64;
use octo_core::Octonion;
use proptest::prelude::*;

/// Generic Cayley-Dickson product on `2^k` real coefficients:
/// `(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`.
pub fn cd_mul(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n == 1 {
        return vec![x[0] * y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let db = cd_mul(&cd_conj(d), b);
    let da = cd_mul(d, a);
    let bc = cd_mul(b, &cd_conj(c));
    ac.iter()
        .zip(&db)
        .map(|(p, q)| p - q)
        .chain(da.iter().zip(&bc).map(|(p, q)| p + q))
        .collect()
}

pub fn cd_conj(x: &[f64]) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(i, v)| if i == 0 { *v } else { -v })
        .collect()
}

pub fn oracle_mul(x: Octonion, y: Octonion) -> Octonion {
    let v = cd_mul(&x.0, &y.0);
    let mut c = [0.0; 8];
    c.copy_from_slice(&v);
    Octonion::new(c)
}

pub fn dist(a: Octonion, b: Octonion) -> f64 {
    (a - b).norm()
}

pub fn rel_dist(a: Octonion, b: Octonion) -> f64 {
    dist(a, b) / b.norm().max(1e-300)
}

/// Embeds `z` into `span{1, u}` for a unit imaginary octonion `u`.
pub fn embed(z: Complex64, u: Octonion) -> Octonion {
    Octonion::real(z.re) + u.scale(z.im)
}

/// Projects onto `span{1, u}`: returns the complex coordinates and the orthogonal remainder.
pub fn project(x: Octonion, u: Octonion) -> (Complex64, f64) {
    let im: f64 = (1..8).map(|k| x[k] * u[k]).sum();
    let z = Complex64::new(x[0], im);
    (z, (x - embed(z, u)).norm())
}

pub fn unit_imag(v: [f64; 7]) -> Octonion {
    let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    Octonion::from_parts(0.0, v.map(|c| c / n))
}

/// Complex gamma via Lanczos (g = 7, 9 terms) with reflection.
pub fn lanczos_gamma(z: Complex64) -> Complex64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    let pi = std::f64::consts::PI;
    if z.re < 0.5 {
        return pi / ((z * pi).sin() * lanczos_gamma(1.0 - z));
    }
    let z = z - 1.0;
    let mut a = Complex64::new(C[0], 0.0);
    for (k, c) in C.iter().enumerate().skip(1) {
        a += c / (z + k as f64);
    }
    let t = z + G + 0.5;
    (2.0 * pi).sqrt() * t.powc(z + 0.5) * (-t).exp() * a
}

/// Complex zeta for `Re s > 0`, `s != 1`, from Borwein's accelerated eta series.
pub fn borwein_zeta(s: Complex64) -> Complex64 {
    let n = 60usize;
    let mut d = vec![0.0f64; n + 1];
    let mut term = 1.0 / n as f64;
    let mut sum = term;
    d[0] = n as f64 * sum;
    for (i, slot) in d.iter_mut().enumerate().skip(1) {
        let (nf, i_f) = (n as f64, i as f64);
        term *= (nf + i_f - 1.0) * 4.0 * (nf - i_f + 1.0) / ((2.0 * i_f) * (2.0 * i_f - 1.0));
        sum += term;
        *slot = n as f64 * sum;
    }
    let mut eta = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        eta += sign * (d[k] - d[n]) * Complex64::new((k + 1) as f64, 0.0).powc(-s);
    }
    eta = -eta / d[n];
    eta / (1.0 - Complex64::new(2.0, 0.0).powc(1.0 - s))
}

/// Composite Simpson rule with `2m` panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let n = 2 * m;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

pub fn octonion_in(lo: f64, hi: f64) -> impl Strategy<Value = Octonion> {
    proptest::array::uniform8(lo..hi).prop_map(Octonion::new)
}

/// Octonion with real part in `re` and imaginary norm at least `min_imag`.
pub fn off_axis(re: std::ops::Range<f64>, min_imag: f64) -> impl Strategy<Value = Octonion> {
    (re, proptest::array::uniform7(-1.5f64..1.5))
        .prop_filter("too close to the real axis", move |(_, v)| {
            v.iter().map(|c| c * c).sum::<f64>().sqrt() >= min_imag
        })
        .prop_map(|(r, v)| Octonion::from_parts(r, v))
}
