//! Finite-difference residuals of the generalized Cauchy-Riemann systems.
//!
//! A field `(u_0, ..., u_n)` on `R^{n+1}` is tested against
//!
//! * the axially symmetric system `A_n`:
//!   `rho^2 (du0/dx0 - sum dum/dxm) + (n-1) sum xm um = 0`,
//! * the asymmetric system `H_n`:
//!   `xn (du0/dx0 - sum dum/dxm) + (n-1) un = 0`,
//!
//! both completed by `du0/dxm + dum/dx0 = 0` and `dul/dxm - dum/dxl = 0`, where
//! `rho^2 = x1^2 + ... + xn^2`. Fields are gradients `u0 = dh/dx0`, `um = -dh/dxm`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::octonion::Octonion;

/// Axial weights or hyperplane coordinates below this are treated as singular.
pub const SINGULAR_EPS: f64 = 1e-12;

pub type FieldFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;
pub type PotentialFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// `(n+1)` component functions on `R^{n+1}`.
#[derive(Clone)]
pub struct VectorField {
    pub dimension_n: usize,
    eval: FieldFn,
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField(n = {})", self.dimension_n)
    }
}

impl VectorField {
    pub fn new(
        dimension_n: usize,
        eval: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        VectorField {
            dimension_n,
            eval: Arc::new(eval),
        }
    }

    pub fn eval(&self, point: &[f64]) -> Vec<f64> {
        (self.eval)(point)
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: f64, other: &VectorField, beta: f64) -> VectorField {
        let (f, g) = (self.eval.clone(), other.eval.clone());
        VectorField::new(self.dimension_n, move |p| {
            f(p).iter()
                .zip(g(p))
                .map(|(a, b)| alpha * a + beta * b)
                .collect()
        })
    }
}

#[derive(Clone)]
pub struct ScalarPotential {
    pub dimension_n: usize,
    eval: PotentialFn,
}

impl fmt::Debug for ScalarPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarPotential(n = {})", self.dimension_n)
    }
}

impl ScalarPotential {
    pub fn new(dimension_n: usize, eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        ScalarPotential {
            dimension_n,
            eval: Arc::new(eval),
        }
    }

    pub fn eval(&self, point: &[f64]) -> f64 {
        (self.eval)(point)
    }
}

/// Field `u_m(x) = [f(x)]_m` of an octonionic function on `R^8`.
pub fn field_from_octonion_fn(
    f: impl Fn(Octonion) -> Result<Octonion> + Send + Sync + 'static,
) -> VectorField {
    field_from_octonion_fn_dim(f, 7)
}

/// Restriction of an octonionic function to `span{1, e1, ..., en}`, `1 <= n <= 7`.
///
/// Points where `f` fails evaluate to NaN components.
pub fn field_from_octonion_fn_dim(
    f: impl Fn(Octonion) -> Result<Octonion> + Send + Sync + 'static,
    n: usize,
) -> VectorField {
    assert!((1..=7).contains(&n), "octonion fields need 1 <= n <= 7");
    VectorField::new(n, move |p| {
        let mut c = [0.0; 8];
        c[..=n].copy_from_slice(&p[..=n]);
        match f(Octonion::new(c)) {
            Ok(v) => v.0[..=n].to_vec(),
            Err(_) => vec![f64::NAN; n + 1],
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FdScheme {
    Central,
    Richardson,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FdConfig {
    pub step: f64,
    pub scheme: FdScheme,
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig {
            step: 1e-5,
            scheme: FdScheme::Central,
        }
    }
}

impl FdConfig {
    pub fn validate(&self) -> Result<()> {
        if self.step > 0.0 && self.step.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!(
                "finite-difference step must be positive, got {}",
                self.step
            )))
        }
    }

    /// Step for second differences; a hundred times the first-derivative step keeps
    /// the `eps / h^2` rounding term near 1e-10 at the default step.
    fn second_step(&self) -> f64 {
        100.0 * self.step
    }
}

fn shifted(point: &[f64], axis: usize, delta: f64) -> Vec<f64> {
    let mut p = point.to_vec();
    p[axis] += delta;
    p
}

/// First derivative along `axis` of a vector-valued map.
fn diff_vec(f: &dyn Fn(&[f64]) -> Vec<f64>, point: &[f64], axis: usize, fd: &FdConfig) -> Vec<f64> {
    let central = |h: f64| -> Vec<f64> {
        let (pu, pd) = (shifted(point, axis, h), shifted(point, axis, -h));
        // divide by the step actually taken, so linear maps differentiate exactly
        let width = pu[axis] - pd[axis];
        let (up, down) = (f(&pu), f(&pd));
        up.iter().zip(down).map(|(a, b)| (a - b) / width).collect()
    };
    match fd.scheme {
        FdScheme::Central => central(fd.step),
        FdScheme::Richardson => {
            let coarse = central(fd.step);
            let fine = central(0.5 * fd.step);
            fine.iter()
                .zip(coarse)
                .map(|(f, c)| (4.0 * f - c) / 3.0)
                .collect()
        }
    }
}

fn diff_scalar(f: &dyn Fn(&[f64]) -> f64, point: &[f64], axis: usize, fd: &FdConfig) -> f64 {
    diff_vec(&|p: &[f64]| vec![f(p)], point, axis, fd)[0]
}

fn second_diff(f: &dyn Fn(&[f64]) -> f64, point: &[f64], axis: usize, fd: &FdConfig) -> f64 {
    let centre = f(point);
    let central = |h: f64| {
        (f(&shifted(point, axis, h)) - 2.0 * centre + f(&shifted(point, axis, -h))) / (h * h)
    };
    let h = fd.second_step();
    match fd.scheme {
        FdScheme::Central => central(h),
        FdScheme::Richardson => (4.0 * central(0.5 * h) - central(h)) / 3.0,
    }
}

/// `jac[i][j] = du_i / dx_j`.
fn jacobian(field: &VectorField, point: &[f64], fd: &FdConfig) -> Vec<Vec<f64>> {
    let n1 = field.dimension_n + 1;
    let f = |p: &[f64]| field.eval(p);
    let mut jac = vec![vec![0.0; n1]; n1];
    for j in 0..n1 {
        let col = diff_vec(&f, point, j, fd);
        for (i, v) in col.into_iter().enumerate().take(n1) {
            jac[i][j] = v;
        }
    }
    jac
}

fn check_point(dimension_n: usize, point: &[f64]) -> Result<()> {
    if point.len() != dimension_n + 1 {
        return Err(Error::InvalidConfig(format!(
            "point has {} coordinates, field lives in R^{}",
            point.len(),
            dimension_n + 1
        )));
    }
    if point.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidConfig(
            "point has non-finite coordinates".into(),
        ));
    }
    Ok(())
}

fn axial_weight(point: &[f64]) -> f64 {
    point[1..].iter().map(|x| x * x).sum()
}

fn relative(abs: f64, scale: f64) -> f64 {
    if abs == 0.0 {
        0.0
    } else {
        abs / scale
    }
}

/// Residual vector of a first-order system at one point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemResidual {
    pub first_equation: f64,
    /// Size of the terms the first equation balances; used for relative residuals.
    pub first_equation_scale: f64,
    /// `du0/dxm + dum/dx0`, `m = 1..n`.
    pub skew: Vec<f64>,
    /// `dul/dxm - dum/dxl` for `1 <= l < m <= n`, row-major in `(l, m)`.
    pub symmetric: Vec<f64>,
    /// Largest Jacobian entry magnitude at the point.
    pub derivative_scale: f64,
}

impl SystemResidual {
    pub fn max_abs(&self) -> f64 {
        self.skew
            .iter()
            .chain(&self.symmetric)
            .fold(self.first_equation.abs(), |m, v| m.max(v.abs()))
    }

    pub fn first_equation_rel(&self) -> f64 {
        relative(self.first_equation.abs(), self.first_equation_scale)
    }

    pub fn max_rel(&self) -> f64 {
        self.worst_component().1
    }

    /// Label and relative size of the largest residual component.
    pub fn worst_component(&self) -> (String, f64) {
        let mut worst = ("first".to_string(), self.first_equation_rel());
        for (m, v) in self.skew.iter().enumerate() {
            let r = relative(v.abs(), self.derivative_scale);
            if r > worst.1 {
                worst = (format!("skew[{}]", m + 1), r);
            }
        }
        let n = self.skew.len();
        let mut k = 0;
        for l in 1..=n {
            for m in (l + 1)..=n {
                let r = relative(self.symmetric[k].abs(), self.derivative_scale);
                if r > worst.1 {
                    worst = (format!("sym[{l},{m}]"), r);
                }
                k += 1;
            }
        }
        worst
    }
}

struct LocalData {
    u: Vec<f64>,
    /// du0/dx0 - sum dum/dxm
    divergence: f64,
    skew: Vec<f64>,
    symmetric: Vec<f64>,
    derivative_scale: f64,
}

fn local_data(field: &VectorField, point: &[f64], fd: &FdConfig) -> Result<LocalData> {
    fd.validate()?;
    let n = field.dimension_n;
    let u = field.eval(point);
    let jac = jacobian(field, point, fd);
    if u.len() != n + 1 || u.iter().chain(jac.iter().flatten()).any(|v| !v.is_finite()) {
        return Err(Error::SingularPoint(format!(
            "field is not finite around {point:?}"
        )));
    }
    let divergence = jac[0][0] - (1..=n).map(|m| jac[m][m]).sum::<f64>();
    let skew = (1..=n).map(|m| jac[0][m] + jac[m][0]).collect();
    let mut symmetric = Vec::with_capacity(n * (n - 1) / 2);
    for l in 1..=n {
        for m in (l + 1)..=n {
            symmetric.push(jac[l][m] - jac[m][l]);
        }
    }
    let derivative_scale = jac.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(LocalData {
        u,
        divergence,
        skew,
        symmetric,
        derivative_scale,
    })
}

/// Residuals of the axially symmetric system `A_n`.
pub fn residual_an(field: &VectorField, point: &[f64], fd: &FdConfig) -> Result<SystemResidual> {
    let n = field.dimension_n;
    check_point(n, point)?;
    let weight = axial_weight(point);
    if weight < SINGULAR_EPS {
        return Err(Error::SingularPoint(format!(
            "axial weight {weight:e} at {point:?}"
        )));
    }
    let d = local_data(field, point, fd)?;
    let moment: f64 = (1..=n).map(|m| point[m] * d.u[m]).sum();
    let k = (n - 1) as f64;
    Ok(SystemResidual {
        first_equation: weight * d.divergence + k * moment,
        first_equation_scale: weight * d.derivative_scale + k * moment.abs(),
        skew: d.skew,
        symmetric: d.symmetric,
        derivative_scale: d.derivative_scale,
    })
}

/// Residuals of the asymmetric system `H_n`.
pub fn residual_hn(field: &VectorField, point: &[f64], fd: &FdConfig) -> Result<SystemResidual> {
    let n = field.dimension_n;
    check_point(n, point)?;
    let xn = point[n];
    if xn.abs() < SINGULAR_EPS {
        return Err(Error::SingularPoint(format!(
            "x_{n} = {xn:e} lies on the singular hyperplane"
        )));
    }
    let d = local_data(field, point, fd)?;
    let k = (n - 1) as f64;
    Ok(SystemResidual {
        first_equation: xn * d.divergence + k * d.u[n],
        first_equation_scale: xn.abs() * d.derivative_scale + k * d.u[n].abs(),
        skew: d.skew,
        symmetric: d.symmetric,
        derivative_scale: d.derivative_scale,
    })
}

/// `x_m (du0/dx0 - sum duk/dxk) + (n-1) u_m` for each `m = 1..n`, the relation that
/// solutions of `A_n` with the symmetry conditions satisfy in every `(x0, xm)` plane.
pub fn residual_slice_relations(
    field: &VectorField,
    point: &[f64],
    fd: &FdConfig,
) -> Result<Vec<f64>> {
    let n = field.dimension_n;
    check_point(n, point)?;
    if axial_weight(point) < SINGULAR_EPS {
        return Err(Error::SingularPoint("point on the real axis".into()));
    }
    let d = local_data(field, point, fd)?;
    let k = (n - 1) as f64;
    Ok((1..=n)
        .map(|m| point[m] * d.divergence + k * d.u[m])
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryResidual {
    /// `x_l u_m - x_m u_l` for `1 <= l < m <= n`.
    pub residuals: Vec<f64>,
    /// `|x| |u|`.
    pub scale: f64,
}

impl SymmetryResidual {
    pub fn max_abs(&self) -> f64 {
        self.residuals.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn max_rel(&self) -> f64 {
        relative(self.max_abs(), self.scale)
    }
}

/// The algebraic conditions `x_l u_m = x_m u_l`; no derivatives involved.
pub fn check_symmetry_conditions(field: &VectorField, point: &[f64]) -> Result<SymmetryResidual> {
    let n = field.dimension_n;
    check_point(n, point)?;
    let u = field.eval(point);
    if u.len() != n + 1 || u.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularPoint(format!(
            "field not finite at {point:?}"
        )));
    }
    let mut residuals = Vec::with_capacity(n * (n - 1) / 2);
    for l in 1..=n {
        for m in (l + 1)..=n {
            residuals.push(point[l] * u[m] - point[m] * u[l]);
        }
    }
    let norm = |v: &[f64]| v.iter().map(|c| c * c).sum::<f64>().sqrt();
    Ok(SymmetryResidual {
        residuals,
        scale: norm(point) * norm(&u),
    })
}

fn laplacian(h: &ScalarPotential, point: &[f64], fd: &FdConfig) -> f64 {
    let f = |p: &[f64]| h.eval(p);
    (0..point.len())
        .map(|k| second_diff(&f, point, k, fd))
        .sum()
}

/// `x_n Lap h - (n-1) dh/dx_n`.
pub fn residual_potential_hn(h: &ScalarPotential, point: &[f64], fd: &FdConfig) -> Result<f64> {
    fd.validate()?;
    let n = h.dimension_n;
    check_point(n, point)?;
    let xn = point[n];
    if xn.abs() < SINGULAR_EPS {
        return Err(Error::SingularPoint(format!("x_{n} = {xn:e}")));
    }
    let f = |p: &[f64]| h.eval(p);
    let r = xn * laplacian(h, point, fd) - (n - 1) as f64 * diff_scalar(&f, point, n, fd);
    finite(r, point)
}

/// `rho^2 Lap h - (n-1) sum x_m dh/dx_m`.
pub fn residual_potential_an(h: &ScalarPotential, point: &[f64], fd: &FdConfig) -> Result<f64> {
    fd.validate()?;
    let n = h.dimension_n;
    check_point(n, point)?;
    let weight = axial_weight(point);
    if weight < SINGULAR_EPS {
        return Err(Error::SingularPoint(format!("axial weight {weight:e}")));
    }
    let f = |p: &[f64]| h.eval(p);
    let moment: f64 = (1..=n)
        .map(|m| point[m] * diff_scalar(&f, point, m, fd))
        .sum();
    let r = weight * laplacian(h, point, fd) - (n - 1) as f64 * moment;
    finite(r, point)
}

fn finite(r: f64, point: &[f64]) -> Result<f64> {
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::SingularPoint(format!(
            "non-finite residual at {point:?}"
        )))
    }
}

/// Conductivity weight of a divergence-form equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conductivity {
    /// `chi = x_n^{1-n}`
    Asymmetric,
    /// `chi = (x_1^2 + ... + x_n^2)^{(1-n)/2}`
    Axial,
}

impl Conductivity {
    pub fn eval(self, n: usize, point: &[f64]) -> f64 {
        let e = 1.0 - n as f64;
        match self {
            Conductivity::Asymmetric => point[n].powf(e),
            Conductivity::Axial => axial_weight(point).powf(0.5 * e),
        }
    }

    fn singular(self, n: usize, point: &[f64]) -> bool {
        match self {
            Conductivity::Asymmetric => point[n].abs() < SINGULAR_EPS,
            Conductivity::Axial => axial_weight(point) < SINGULAR_EPS,
        }
    }
}

/// `div(chi grad h)` with `grad h = (u_0, -u_1, ..., -u_n)`, by finite differences of
/// the flux `chi * grad h`.
pub fn residual_divergence_form(
    field: &VectorField,
    point: &[f64],
    weight: Conductivity,
    fd: &FdConfig,
) -> Result<f64> {
    fd.validate()?;
    let n = field.dimension_n;
    check_point(n, point)?;
    if weight.singular(n, point) {
        return Err(Error::SingularPoint(format!(
            "conductivity {weight:?} singular at {point:?}"
        )));
    }
    let mut total = 0.0;
    for k in 0..=n {
        let flux = |p: &[f64]| {
            let u = field.eval(p);
            let g = if k == 0 { u[0] } else { -u[k] };
            vec![weight.eval(n, p) * g]
        };
        total += diff_vec(&flux, point, k, fd)[0];
    }
    finite(total, point)
}

/// Equation families understood by [`verify_grid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    H,
    Symmetry,
    DivAxial,
    DivAsymmetric,
}

impl Family {
    pub fn label(self, n: usize) -> String {
        match self {
            Family::A => format!("A_{n}"),
            Family::H => format!("H_{n}"),
            Family::Symmetry => "symmetry".into(),
            Family::DivAxial => "div-axial".into(),
            Family::DivAsymmetric => "div-asym".into(),
        }
    }

    /// Default pass threshold: relative for the systems and symmetry conditions,
    /// absolute for divergence forms.
    pub fn default_tolerance(self) -> f64 {
        match self {
            Family::A | Family::H => 1e-6,
            Family::Symmetry => 1e-12,
            Family::DivAxial | Family::DivAsymmetric => 1e-5,
        }
    }

    pub fn uses_relative(self) -> bool {
        // x_n^{1-n} spans many decades near the hyperplane, so only the axial weight
        // is judged in absolute terms.
        !matches!(self, Family::DivAxial)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "H" | "h" => Ok(Family::H),
            "sym" | "symmetry" => Ok(Family::Symmetry),
            "div-axial" => Ok(Family::DivAxial),
            "div-asym" => Ok(Family::DivAsymmetric),
            _ => Err(Error::UnknownName(format!("equation family '{s}'"))),
        }
    }
}

/// Seeded rejection sampler over a box, keeping clear of the singular sets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSampler {
    pub dimension_n: usize,
    pub half_width: f64,
    /// Minimum distance from the real axis.
    pub axial_margin: f64,
    /// Minimum `|x_n|` when set.
    pub hyperplane_margin: Option<f64>,
    pub seed: u64,
}

impl PointSampler {
    pub fn new(dimension_n: usize, seed: u64) -> Self {
        PointSampler {
            dimension_n,
            half_width: 1.5,
            axial_margin: 0.1,
            hyperplane_margin: None,
            seed,
        }
    }

    /// Margins suited to the requested families: `|x_n| >= 0.1` for the asymmetric
    /// equations and axial radius `>= 0.5` for the axial divergence form.
    pub fn for_families(dimension_n: usize, families: &[Family], seed: u64) -> Self {
        let mut s = Self::new(dimension_n, seed);
        if families
            .iter()
            .any(|f| matches!(f, Family::H | Family::DivAsymmetric))
        {
            s.hyperplane_margin = Some(0.1);
        }
        if families.contains(&Family::DivAxial) {
            s.axial_margin = 0.5;
        }
        s
    }

    pub fn sample(&self, count: usize) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let p: Vec<f64> = (0..=self.dimension_n)
                .map(|_| rng.gen_range(-self.half_width..self.half_width))
                .collect();
            if axial_weight(&p).sqrt() < self.axial_margin {
                continue;
            }
            if let Some(m) = self.hyperplane_margin {
                if p[self.dimension_n].abs() < m {
                    continue;
                }
            }
            out.push(p);
        }
        out
    }
}

/// Aggregate residual statistics of one equation family over a point sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub equation_family: String,
    pub points_tested: usize,
    pub excluded: usize,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    pub mean_abs_residual: f64,
    pub mean_rel_residual: f64,
    pub worst_point: Vec<f64>,
    pub worst_component: String,
    pub tolerance: f64,
    pub passed: bool,
}

struct PointOutcome {
    abs: f64,
    rel: f64,
    component: String,
}

fn evaluate(
    field: &VectorField,
    family: Family,
    point: &[f64],
    fd: &FdConfig,
) -> Result<PointOutcome> {
    let n = field.dimension_n;
    match family {
        Family::A | Family::H => {
            let r = if family == Family::A {
                residual_an(field, point, fd)?
            } else {
                residual_hn(field, point, fd)?
            };
            let (component, rel) = r.worst_component();
            Ok(PointOutcome {
                abs: r.max_abs(),
                rel,
                component,
            })
        }
        Family::Symmetry => {
            let r = check_symmetry_conditions(field, point)?;
            Ok(PointOutcome {
                abs: r.max_abs(),
                rel: r.max_rel(),
                component: "x_l u_m - x_m u_l".into(),
            })
        }
        Family::DivAxial | Family::DivAsymmetric => {
            let weight = if family == Family::DivAxial {
                Conductivity::Axial
            } else {
                Conductivity::Asymmetric
            };
            let abs = residual_divergence_form(field, point, weight, fd)?.abs();
            let d = local_data(field, point, fd)?;
            let chi = weight.eval(n, point);
            let scale = chi * d.derivative_scale * (n + 1) as f64;
            Ok(PointOutcome {
                abs,
                rel: relative(abs, scale),
                component: "div".into(),
            })
        }
    }
}

/// Per-family residual statistics over `count` sampled points.
///
/// Points are evaluated in parallel; aggregation runs in sample order, so reports
/// depend only on the sampler seed.
pub fn verify_grid(
    field: &VectorField,
    families: &[Family],
    sampler: &PointSampler,
    count: usize,
    fd: &FdConfig,
) -> Result<Vec<ResidualReport>> {
    fd.validate()?;
    if sampler.dimension_n != field.dimension_n {
        return Err(Error::InvalidConfig(format!(
            "sampler dimension {} does not match field dimension {}",
            sampler.dimension_n, field.dimension_n
        )));
    }
    let points = sampler.sample(count);
    let mut reports = Vec::with_capacity(families.len());
    for &family in families {
        let outcomes: Vec<Result<PointOutcome>> = points
            .par_iter()
            .map(|p| evaluate(field, family, p, fd))
            .collect();
        let tolerance = family.default_tolerance();
        let mut report = ResidualReport {
            equation_family: family.label(field.dimension_n),
            points_tested: 0,
            excluded: 0,
            max_abs_residual: 0.0,
            max_rel_residual: 0.0,
            mean_abs_residual: 0.0,
            mean_rel_residual: 0.0,
            worst_point: Vec::new(),
            worst_component: String::new(),
            tolerance,
            passed: false,
        };
        let mut worst_key = -1.0;
        for (p, outcome) in points.iter().zip(outcomes) {
            let Ok(o) = outcome else {
                report.excluded += 1;
                continue;
            };
            report.points_tested += 1;
            report.mean_abs_residual += o.abs;
            report.mean_rel_residual += o.rel;
            report.max_abs_residual = report.max_abs_residual.max(o.abs);
            report.max_rel_residual = report.max_rel_residual.max(o.rel);
            let key = if family.uses_relative() { o.rel } else { o.abs };
            if key > worst_key {
                worst_key = key;
                report.worst_point = p.clone();
                report.worst_component = o.component;
            }
        }
        if report.excluded * 10 > count {
            return Err(Error::TooManyExclusions {
                excluded: report.excluded,
                requested: count,
            });
        }
        if report.points_tested > 0 {
            report.mean_abs_residual /= report.points_tested as f64;
            report.mean_rel_residual /= report.points_tested as f64;
        }
        let measured = if family.uses_relative() {
            report.max_rel_residual
        } else {
            report.max_abs_residual
        };
        report.passed = report.points_tested > 0 && measured < tolerance;
        reports.push(report);
    }
    Ok(reports)
}
