//! Octonionic Laplace transform, its two-sided variant, and the gamma and zeta
//! functions of an octonionic argument.
//!
//! Every integrand is `kernel(x, tau) * eta(tau)` with a real `eta`, so all values stay
//! in the commutative slice `span{1, I(x)}` and left/right multiplication coincide.

use std::fmt;
use std::sync::Arc;

use crate::elementary::{oct_exp, oct_powf};
use crate::error::{Error, Result};
use crate::octonion::Octonion;
use crate::quadrature::{
    integrate_bilateral, integrate_semi_infinite, IntegrandProfile, Quadrature, QuadratureConfig,
};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type OctonionFn = Arc<dyn Fn(Octonion) -> Result<Octonion> + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    NonnegativeAxis,
    FullLine,
}

/// `|eta(tau)| <= bound * exp(rate * |tau|)` on one half-line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthBound {
    pub bound: f64,
    pub rate: f64,
}

/// A real-valued original `eta(tau)` with the metadata the transforms need.
#[derive(Clone)]
pub struct OriginalSpec {
    pub name: String,
    pub eval: RealFn,
    pub support: Support,
    /// `B` in `|eta(tau)| <= B exp(x0 tau)` for `tau >= 0`.
    pub growth_bound: f64,
    /// `x0` in the same bound; negative values describe decaying originals.
    pub growth_rate: f64,
    /// Growth on `tau < 0`, required for full-line support.
    pub left_growth: Option<GrowthBound>,
    pub jump_points: Vec<f64>,
    /// Hoelder exponent, carried as metadata only.
    pub holder_exponent: f64,
    /// Intrinsic oscillation rate of `eta`, added to that of the kernel.
    pub frequency: f64,
    /// Power-law exponent of `eta` at `tau = 0`.
    pub singularity_exponent: f64,
    pub closed_form: Option<OctonionFn>,
}

impl fmt::Debug for OriginalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OriginalSpec")
            .field("name", &self.name)
            .field("support", &self.support)
            .field("growth_bound", &self.growth_bound)
            .field("growth_rate", &self.growth_rate)
            .field("left_growth", &self.left_growth)
            .field("jump_points", &self.jump_points)
            .field("closed_form", &self.closed_form.is_some())
            .finish()
    }
}

/// Bound constant for `exp(a s - e^s) <= C exp(-k s)` on `s >= 0`.
fn double_exp_envelope(a: f64, k: f64) -> f64 {
    let c = a + k;
    if c <= 1.0 {
        1.0
    } else {
        (c * (c.ln() - 1.0)).exp()
    }
}

const KERNEL_DECAY: f64 = 8.0;

impl OriginalSpec {
    /// An original with unit growth bound, zero growth rate and no closed form.
    pub fn custom(
        name: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        support: Support,
    ) -> Self {
        OriginalSpec {
            name: name.into(),
            eval: Arc::new(eval),
            support,
            growth_bound: 1.0,
            growth_rate: 0.0,
            left_growth: match support {
                Support::NonnegativeAxis => None,
                Support::FullLine => Some(GrowthBound {
                    bound: 1.0,
                    rate: 0.0,
                }),
            },
            jump_points: Vec::new(),
            holder_exponent: 1.0,
            frequency: 0.0,
            singularity_exponent: 0.0,
            closed_form: None,
        }
    }

    pub fn unit_step() -> Self {
        let mut o = Self::custom(
            "unit-step",
            |t| if t >= 0.0 { 1.0 } else { 0.0 },
            Support::NonnegativeAxis,
        );
        o.jump_points = vec![0.0];
        o.closed_form = Some(Arc::new(|x: Octonion| x.inverse()));
        o
    }

    /// `cos(omega tau)` for `tau >= 0`, with transform `x (x^2 + omega^2)^{-1}`.
    pub fn cosine(omega: f64) -> Self {
        let mut o = Self::custom(
            format!("cosine:{omega}"),
            move |t| if t >= 0.0 { (omega * t).cos() } else { 0.0 },
            Support::NonnegativeAxis,
        );
        o.frequency = omega.abs();
        o.closed_form = Some(Arc::new(move |x: Octonion| {
            let denom = x * x + Octonion::real(omega * omega);
            Ok(x * denom.inverse()?)
        }));
        o
    }

    /// `tau^a` for `tau >= 0`, `a > 0`, with transform `Gamma(a+1) x^{-a-1}`.
    ///
    /// The growth bound uses rate `1/4`: `tau^a <= (4a/e)^a exp(tau/4)`.
    pub fn power(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::DomainError(format!(
                "power original needs a > 0, got {a}"
            )));
        }
        let rate = 0.25;
        let mut o = Self::custom(
            format!("power:{a}"),
            move |t| if t > 0.0 { t.powf(a) } else { 0.0 },
            Support::NonnegativeAxis,
        );
        o.growth_rate = rate;
        o.growth_bound = (a / (rate * std::f64::consts::E)).powf(a).max(1.0);
        o.holder_exponent = a.min(1.0);
        o.singularity_exponent = a;
        o.closed_form = Some(Arc::new(move |x: Octonion| laplace_power(a, x)));
        Ok(o)
    }

    /// `exp(-e^tau)` on the whole line; the two-sided transform at `x` is `Gamma(-x)`.
    pub fn gamma_kernel() -> Self {
        let mut o = Self::custom("gamma-kernel", |t: f64| (-t.exp()).exp(), Support::FullLine);
        o.growth_rate = -KERNEL_DECAY;
        o.growth_bound = double_exp_envelope(0.0, KERNEL_DECAY);
        o
    }

    /// `1 / (exp(e^tau) - 1)` on the whole line; the two-sided transform at `x` is
    /// `Gamma(-x) zeta(-x)`.
    pub fn zeta_kernel() -> Self {
        let mut o = Self::custom(
            "zeta-kernel",
            |t: f64| 1.0 / t.exp().exp_m1(),
            Support::FullLine,
        );
        o.growth_rate = -KERNEL_DECAY;
        o.growth_bound = double_exp_envelope(0.0, KERNEL_DECAY) / (1.0 - (-1f64).exp());
        o.left_growth = Some(GrowthBound {
            bound: 1.0,
            rate: 1.0,
        });
        o
    }

    /// Registry lookup: `unit-step`, `cosine:<omega>`, `power:<a>`, `gamma-kernel`,
    /// `zeta-kernel`.
    pub fn by_name(name: &str) -> Result<Self> {
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::UnknownName(format!("bad parameter in original '{name}'")))
        };
        match name.split_once(':') {
            None => match name {
                "unit-step" => Ok(Self::unit_step()),
                "gamma-kernel" => Ok(Self::gamma_kernel()),
                "zeta-kernel" => Ok(Self::zeta_kernel()),
                _ => Err(Error::UnknownName(format!("original '{name}'"))),
            },
            Some(("cosine", w)) => Ok(Self::cosine(parse(w)?)),
            Some(("power", a)) => Self::power(parse(a)?),
            Some(_) => Err(Error::UnknownName(format!("original '{name}'"))),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(t)
    }

    /// Checks the growth bound on a 10^4-point grid over `[-span, span]` (or `[0, span]`)
    /// and causality for one-sided originals.
    pub fn validate(&self, span: f64) -> Result<()> {
        if !(self.growth_bound > 0.0) {
            return Err(Error::DomainError(format!(
                "{}: growth bound must be positive",
                self.name
            )));
        }
        if !(self.holder_exponent > 0.0 && self.holder_exponent <= 1.0) {
            return Err(Error::DomainError(format!(
                "{}: Hoelder exponent must lie in (0, 1]",
                self.name
            )));
        }
        const GRID: usize = 10_000;
        for k in 1..=GRID {
            let t = span * k as f64 / GRID as f64;
            let v = self.eval(t).abs();
            let cap = self.growth_bound * (self.growth_rate * t).exp();
            if v > cap * (1.0 + 1e-12) {
                return Err(Error::DomainError(format!(
                    "{}: |eta({t})| = {v} exceeds growth bound {cap}",
                    self.name
                )));
            }
            let s = -t;
            let v = self.eval(s).abs();
            match (self.support, self.left_growth) {
                (Support::NonnegativeAxis, _) if v != 0.0 => {
                    return Err(Error::DomainError(format!(
                        "{}: eta({s}) = {v} but support is the nonnegative axis",
                        self.name
                    )));
                }
                (Support::FullLine, None) => {
                    return Err(Error::DomainError(format!(
                        "{}: full-line original without a left growth bound",
                        self.name
                    )));
                }
                (Support::FullLine, Some(g)) => {
                    let cap = g.bound * (g.rate * t).exp();
                    if v > cap * (1.0 + 1e-12) {
                        return Err(Error::DomainError(format!(
                            "{}: |eta({s})| = {v} exceeds left growth bound {cap}",
                            self.name
                        )));
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TransformResult {
    pub value: Octonion,
    pub est_error: f64,
    pub evaluations: usize,
}

impl From<Quadrature> for TransformResult {
    fn from(q: Quadrature) -> Self {
        TransformResult {
            value: q.value,
            est_error: q.est_error,
            evaluations: q.evaluations,
        }
    }
}

/// `exp(-x tau) * eta` with the real factors combined in log space so that large
/// kernel and small original (or the reverse) never overflow separately.
fn damped_kernel(x: Octonion, unit: [f64; 7], tau: f64, eta: f64) -> Octonion {
    if eta == 0.0 {
        return Octonion::ZERO;
    }
    let amp = eta.signum() * (-x.re() * tau + eta.abs().ln()).exp();
    let (s, c) = (x.imag_norm() * tau).sin_cos();
    Octonion::from_parts(amp * c, unit.map(|u| -u * amp * s))
}

fn unit_imag(x: Octonion) -> [f64; 7] {
    let rho = x.imag_norm();
    if rho == 0.0 {
        [0.0; 7]
    } else {
        x.imag().map(|v| v / rho)
    }
}

/// `L[eta](x) = int_0^inf exp(-x tau) eta(tau) dtau`, valid for `x0 > growth_rate`.
pub fn laplace(
    orig: &OriginalSpec,
    x: Octonion,
    cfg: &QuadratureConfig,
) -> Result<TransformResult> {
    let decay = x.re() - orig.growth_rate;
    if !(decay > 0.0) {
        return Err(Error::RegionOfConvergence {
            x0: x.re(),
            bound: orig.growth_rate,
        });
    }
    let profile = IntegrandProfile::new(decay)
        .with_envelope(orig.growth_bound)
        .with_oscillation(x.imag_norm() + orig.frequency)
        .with_singularity(orig.singularity_exponent.min(0.0))
        .with_jumps(orig.jump_points.clone());
    let unit = unit_imag(x);
    let q = integrate_semi_infinite(
        |t: f64| damped_kernel(x, unit, t, orig.eval(t)),
        &profile,
        cfg,
    )?;
    Ok(q.into())
}

/// Closed form `Gamma(a+1) x^{-a-1}` of the transform of `tau^a`.
pub fn laplace_power(a: f64, x: Octonion) -> Result<Octonion> {
    if !(a > 0.0) {
        return Err(Error::DomainError(format!(
            "laplace_power needs a > 0, got {a}"
        )));
    }
    if !(x.re() > 0.0) {
        return Err(Error::RegionOfConvergence {
            x0: x.re(),
            bound: 0.0,
        });
    }
    Ok(oct_powf(x, -a - 1.0)?.scale(libm::tgamma(a + 1.0)))
}

/// Two-sided transform `int_{-inf}^{inf} exp(-x tau) eta(tau) dtau`.
pub fn bilateral_laplace(
    orig: &OriginalSpec,
    x: Octonion,
    cfg: &QuadratureConfig,
) -> Result<TransformResult> {
    if orig.support == Support::NonnegativeAxis {
        return laplace(orig, x, cfg);
    }
    let left = orig
        .left_growth
        .ok_or_else(|| Error::DomainError(format!("{}: missing left growth bound", orig.name)))?;
    let right_decay = x.re() - orig.growth_rate;
    if !(right_decay > 0.0) {
        return Err(Error::RegionOfConvergence {
            x0: x.re(),
            bound: orig.growth_rate,
        });
    }
    // On tau = -s the integrand is bounded by B_left exp((x0 + r_left) s).
    let left_decay = -(x.re() + left.rate);
    if !(left_decay > 0.0) {
        return Err(Error::RegionOfConvergence {
            x0: x.re(),
            bound: -left.rate,
        });
    }
    let osc = x.imag_norm() + orig.frequency;
    let mut jumps_right = Vec::new();
    let mut jumps_left = Vec::new();
    for &j in &orig.jump_points {
        if j >= 0.0 {
            jumps_right.push(j);
        } else {
            jumps_left.push(-j);
        }
    }
    let right = IntegrandProfile::new(right_decay)
        .with_envelope(orig.growth_bound)
        .with_oscillation(osc)
        .with_jumps(jumps_right);
    let left = IntegrandProfile::new(left_decay)
        .with_envelope(left.bound)
        .with_oscillation(osc)
        .with_jumps(jumps_left);
    let unit = unit_imag(x);
    let q = integrate_bilateral(
        |t: f64| damped_kernel(x, unit, t, orig.eval(t)),
        &left,
        &right,
        cfg,
    )?;
    Ok(q.into())
}

/// `exp(x s) * g` for real `g >= 0`, combined in log space.
fn growing_kernel(x: Octonion, unit: [f64; 7], s: f64, log_g: f64) -> Octonion {
    let amp = (x.re() * s + log_g).exp();
    if amp == 0.0 {
        return Octonion::ZERO;
    }
    let (sn, c) = (x.imag_norm() * s).sin_cos();
    Octonion::from_parts(amp * c, unit.map(|u| u * amp * sn))
}

/// `int_{-inf}^{inf} exp(x s) w(s) ds` for the log-substituted gamma and zeta integrals,
/// where `log_weight(s) = ln w(s)` decays doubly exponentially for `s -> inf` and like
/// `left_shift * s` for `s -> -inf`.
fn log_substituted(
    x: Octonion,
    log_weight: impl Fn(f64) -> f64,
    left_decay: f64,
    right_extra: f64,
    cfg: &QuadratureConfig,
) -> Result<Quadrature> {
    let osc = x.imag_norm();
    let right = IntegrandProfile::new(KERNEL_DECAY)
        .with_envelope(double_exp_envelope(x.re(), KERNEL_DECAY) * right_extra)
        .with_oscillation(osc);
    let left = IntegrandProfile::new(left_decay).with_oscillation(osc);
    let unit = unit_imag(x);
    integrate_bilateral(
        |s: f64| growing_kernel(x, unit, s, log_weight(s)),
        &left,
        &right,
        cfg,
    )
}

/// `Gamma(x) = int_{-inf}^{inf} exp(x s) exp(-e^s) ds` (the substitution `tau = e^s`
/// of Euler's integral).
fn gamma_log_form(x: Octonion, cfg: &QuadratureConfig) -> Result<Quadrature> {
    log_substituted(x, |s: f64| -s.exp(), x.re(), 1.0, cfg)
}

/// Euler's integral on `[0, inf)` for a real argument; the `tau^{x0-1}` singularity at
/// zero goes to tanh-sinh when `x0 < 1`.
fn gamma_real_axis(x0: f64, cfg: &QuadratureConfig) -> Result<Quadrature> {
    let c = x0 - 1.0;
    let decay = 0.5;
    // tau^c e^{-tau} <= (2c/e)^c e^{-tau/2} for tau >= 0 and c > 0.
    let envelope = if c > 0.0 {
        (2.0 * c / std::f64::consts::E).powf(c).max(1.0)
    } else {
        1.0
    };
    let profile = IntegrandProfile::new(decay)
        .with_envelope(envelope)
        .with_singularity(c.min(0.0));
    integrate_semi_infinite(
        |t: f64| {
            if t <= 0.0 {
                Octonion::ZERO
            } else {
                Octonion::real((c * t.ln() - t).exp())
            }
        },
        &profile,
        cfg,
    )
}

/// Octonionic gamma function, `x0 > 0`.
pub fn oct_gamma(x: Octonion, cfg: &QuadratureConfig) -> Result<Octonion> {
    oct_gamma_detailed(x, cfg).map(|r| r.value)
}

pub fn oct_gamma_detailed(x: Octonion, cfg: &QuadratureConfig) -> Result<TransformResult> {
    if !(x.re() > 0.0) {
        return Err(Error::DomainError(format!(
            "gamma requires x0 > 0, got {}",
            x.re()
        )));
    }
    let q = if x.is_real() {
        gamma_real_axis(x.re(), cfg)?
    } else {
        gamma_log_form(x, cfg)?
    };
    Ok(q.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZetaMethod {
    Series,
    Integral,
}

impl std::str::FromStr for ZetaMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "series" => Ok(ZetaMethod::Series),
            "integral" => Ok(ZetaMethod::Integral),
            _ => Err(Error::UnknownName(format!("zeta method '{s}'"))),
        }
    }
}

// B_{2k} for k = 1..=15.
const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// `n^{-x}` for a positive integer `n`, using the real logarithm of `n`.
fn int_pow_neg(n: f64, x: Octonion) -> Result<Octonion> {
    oct_exp(x.scale(-n.ln()))
}

/// Direct sum of `n^{-x}` up to `N - 1` with an Euler-Maclaurin tail at `N`.
fn zeta_series(x: Octonion, cfg: &QuadratureConfig) -> Result<TransformResult> {
    let n_cut = (16.0 + x.norm().ceil()).min(1e6);
    let mut head = Octonion::ZERO;
    let mut n = 1.0;
    while n < n_cut {
        head += int_pow_neg(n, x)?;
        n += 1.0;
    }
    let n_pow = int_pow_neg(n_cut, x)?;
    let xm1 = x - Octonion::ONE;
    // N^{1-x}/(x-1) + N^{-x}/2
    let mut total = head + (n_pow.scale(n_cut)) * xm1.inverse()? + n_pow.scale(0.5);
    let evaluations = n_cut as usize;

    // Rising factorial (x)_{2k-1} and factorials built incrementally.
    let mut rising = x;
    let mut fact = 2.0;
    let mut power = n_pow.scale(1.0 / n_cut);
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = (rising * power).scale(b / fact);
        total += term;
        let tol = cfg.abs_tol.max(cfg.rel_tol * total.norm());
        let two_k1 = 2.0 * (k as f64 + 1.0) + 1.0;
        let bound = term.norm() * (x + Octonion::real(two_k1)).norm() / (x.re() + two_k1);
        if bound < 0.5 * tol {
            return Ok(TransformResult {
                value: total,
                est_error: bound,
                evaluations: evaluations + k + 1,
            });
        }
        let j = 2.0 * (k as f64 + 1.0);
        rising = rising * (x + Octonion::real(j - 1.0)) * (x + Octonion::real(j));
        fact *= (j + 1.0) * (j + 2.0);
        power = power.scale(1.0 / (n_cut * n_cut));
    }
    Err(Error::NoConvergence(format!(
        "zeta series tail did not settle for x = {x}"
    )))
}

/// `Gamma(x)^{-1} int_0^inf tau^{x-1} / (e^tau - 1) dtau`, integrated in `s = ln tau`.
fn zeta_integral(x: Octonion, cfg: &QuadratureConfig) -> Result<TransformResult> {
    let inner = log_substituted(
        x,
        |s: f64| -s.exp().exp_m1().ln(),
        x.re() - 1.0,
        1.0 / (1.0 - (-1f64).exp()),
        cfg,
    )?;
    let gamma = oct_gamma_detailed(x, cfg)?;
    let inv = gamma.value.inverse()?;
    let value = inv * inner.value;
    let est_error = inv.norm() * inner.est_error + value.norm() * inv.norm() * gamma.est_error;
    Ok(TransformResult {
        value,
        est_error,
        evaluations: inner.evaluations + gamma.evaluations,
    })
}

/// Octonionic Riemann zeta function, `x0 > 1`.
pub fn oct_zeta(x: Octonion, cfg: &QuadratureConfig, method: ZetaMethod) -> Result<Octonion> {
    oct_zeta_detailed(x, cfg, method).map(|r| r.value)
}

pub fn oct_zeta_detailed(
    x: Octonion,
    cfg: &QuadratureConfig,
    method: ZetaMethod,
) -> Result<TransformResult> {
    if !(x.re() > 1.0) {
        return Err(Error::DomainError(format!(
            "zeta requires x0 > 1, got {}",
            x.re()
        )));
    }
    cfg.validate()?;
    match method {
        ZetaMethod::Series => zeta_series(x, cfg),
        ZetaMethod::Integral => zeta_integral(x, cfg),
    }
}
