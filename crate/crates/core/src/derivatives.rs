//! `rho`-derivatives of `F_{d,z}` and the derivative bounds
//!
//! `|d^n F_{d,z}(rho)| <= (n!)^s (n+1)^{s-1} rho^{-s(n+1)}`           (d >= 2),
//! `|d^n F_{1,z}(rho)| <= C (n!)^s (n+1)^{s/2-1/2} rho^{-s(n+1)}`      (d = 1),
//!
//! for `Re z <= 0`, `0 <= s <= 1`.

use crate::error::{Error, Result};
use crate::numeric::{c, cr, factorial, C64};
use crate::symbol::{
    eval, eval_series_derivative, laplace_moment, EvalResult, Method, MethodChoice, ProblemPoint,
    DEFAULT_MAX_TERMS,
};
use rayon::prelude::*;

/// Relative slack allowed in [`BoundCheck::passed`].
pub const BOUND_SLACK: f64 = 1e-12;

/// `n`-th derivative in `rho`. `n = 0` is [`eval`] in auto mode; otherwise the
/// differentiated integral is used for `Re z < d` and the termwise
/// differentiated series elsewhere.
pub fn derivative(p: &ProblemPoint, n: usize) -> Result<EvalResult> {
    if n == 0 {
        return eval(p, MethodChoice::Auto);
    }
    if p.z().re < p.d() as f64 {
        let (v, e) = laplace_moment(p.d(), p.z(), p.rho(), n as u32)?;
        Ok(EvalResult::new(v, e, Method::Quadrature))
    } else {
        eval_series_derivative(p, n, DEFAULT_MAX_TERMS)
    }
}

/// One evaluation of the derivative bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    pub d: u32,
    pub z: C64,
    pub n: usize,
    pub s: f64,
    pub rho: f64,
    /// `|d^n F|`.
    pub lhs: f64,
    /// Right-hand side; for `d = 1` without the unknown constant `C`.
    pub rhs: f64,
    /// `lhs <= rhs (1 + 1e-12)` for `d >= 2`. For `d = 1` only finiteness of
    /// the ratio is asserted; see [`BoundCheck::ratio`].
    pub passed: bool,
}

impl BoundCheck {
    /// `lhs / rhs`; for `d = 1` a lower bound for the constant `C`.
    pub fn ratio(&self) -> f64 {
        self.lhs / self.rhs
    }
}

/// Right-hand side of the bound (with `C = 1` for `d = 1`).
pub fn bound_rhs(d: u32, n: usize, s: f64, rho: f64) -> f64 {
    let nf = n as f64;
    let power = if d == 1 { 0.5 * s - 0.5 } else { s - 1.0 };
    let log = s * factorial(n as u64).ln() + power * (nf + 1.0).ln() - s * (nf + 1.0) * rho.ln();
    log.exp()
}

/// Compares `|d^n F_{d,z}(rho)|` with the bound.
pub fn check_bounds(d: u32, z: C64, n: usize, s: f64, rho: f64) -> Result<BoundCheck> {
    if z.re > 0.0 {
        return Err(Error::Domain(format!("derivative bounds need Re z <= 0, got {z}")));
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("interpolation exponent must lie in [0, 1], got {s}")));
    }
    if !(rho > 0.0) {
        return Err(Error::Domain("derivative bounds need rho > 0".into()));
    }
    ProblemPoint::new(d, z, rho)?;
    let (v, _) = laplace_moment(d, z, rho, n as u32)?;
    let lhs = v.norm();
    let rhs = bound_rhs(d, n, s, rho);
    let passed = if d == 1 {
        (lhs / rhs).is_finite()
    } else {
        lhs <= rhs * (1.0 + BOUND_SLACK)
    };
    Ok(BoundCheck { d, z, n, s, rho, lhs, rhs, passed })
}

/// Interpolation exponents of the published grid.
pub const BOUND_S: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// Largest derivative order of the published grid.
pub const BOUND_MAX_N: usize = 20;

/// Spectral parameters of the published grid (all with `Re z <= 0`).
pub fn bound_z() -> [C64; 4] {
    [cr(0.0), cr(-1.0), cr(-5.0), c(-1.0, 2.0)]
}

/// `per_decade` log-spaced points on `[0.1, 100]`, endpoints included.
pub fn bound_rho(per_decade: usize) -> Vec<f64> {
    let count = 3 * per_decade + 1;
    (0..count)
        .map(|i| 10f64.powf(-1.0 + i as f64 / per_decade as f64))
        .collect()
}

/// Every bound check on the grid `z x n x s x rho` for dimension `d`.
pub fn bound_grid(d: u32, zs: &[C64], max_n: usize, ss: &[f64], rhos: &[f64]) -> Result<Vec<BoundCheck>> {
    let mut points = Vec::new();
    for &z in zs {
        for n in 0..=max_n {
            for &s in ss {
                for &rho in rhos {
                    points.push((z, n, s, rho));
                }
            }
        }
    }
    points
        .into_par_iter()
        .map(|(z, n, s, rho)| check_bounds(d, z, n, s, rho))
        .collect()
}

/// Empirical constant for `d = 1` and its change under grid refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantReport {
    /// `sup lhs/rhs` on the coarse grid.
    pub coarse: f64,
    /// Same on the refined grid.
    pub fine: f64,
}

impl ConstantReport {
    pub fn relative_change(&self) -> f64 {
        (self.fine - self.coarse).abs() / self.coarse
    }

    /// Finite and within `tol` relative change.
    pub fn stable(&self, tol: f64) -> bool {
        self.coarse.is_finite() && self.fine.is_finite() && self.relative_change() <= tol
    }
}

fn sup_ratio(checks: &[BoundCheck]) -> f64 {
    checks.iter().map(BoundCheck::ratio).fold(0.0, f64::max)
}

/// Sup of `lhs/rhs` for `d = 1` on the published grid with `per_decade` and
/// `2 per_decade` points per decade in `rho`.
pub fn d1_constant(per_decade: usize) -> Result<ConstantReport> {
    let zs = bound_z();
    let coarse = bound_grid(1, &zs, BOUND_MAX_N, &BOUND_S, &bound_rho(per_decade))?;
    let fine = bound_grid(1, &zs, BOUND_MAX_N, &BOUND_S, &bound_rho(2 * per_decade))?;
    Ok(ConstantReport {
        coarse: sup_ratio(&coarse),
        fine: sup_ratio(&fine),
    })
}
