//! Report types and the property suites used by the verification harness.

use crate::asymptotics::{asymptotic_sum, MAX_ORDER};
use crate::derivatives::derivative;
use crate::error::{Error, Result};
use crate::numeric::{c, cr, EPS};
use crate::oracle::{heat_kernel_certify, spectral_certify};
use crate::symbol::{
    applicable_methods, eval, eval_series_derivative, eval_with, EvalResult, MethodChoice, ProblemPoint, CONFLUENT_RHO_MAX,
    DEFAULT_MAX_TERMS,
};
use rayon::prelude::*;
use crate::numeric::C64;
use crate::symbol::Method;
use std::fmt;

/// One method's value at a point (or for one level `n`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodValue {
    pub method: Method,
    pub value: C64,
    pub abs_error_estimate: f64,
}

/// A single pass/fail comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub measured: f64,
    pub limit: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `measured <= limit`; NaN never passes.
    pub fn new(label: impl Into<String>, measured: f64, limit: f64) -> Self {
        Check {
            label: label.into(),
            measured,
            limit,
            passed: measured <= limit,
        }
    }

    /// `measured / limit`, the margin used to rank checks.
    pub fn severity(&self) -> f64 {
        if self.limit > 0.0 {
            self.measured / self.limit
        } else if self.measured == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {:.3e} (limit {:.3e})",
            if self.passed { "ok  " } else { "FAIL" },
            self.label,
            self.measured,
            self.limit
        )
    }
}

/// Values collected at one point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct PointValues {
    pub d: u32,
    pub z: C64,
    pub rho: Option<f64>,
    /// Level index, for spectral certification.
    pub n: Option<u32>,
    pub target: Option<C64>,
    pub values: Vec<MethodValue>,
}

/// Per-method values, pairwise discrepancies and pass/fail results of one
/// verification run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MethodReport {
    pub name: String,
    pub points: Vec<PointValues>,
    pub checks: Vec<Check>,
}

impl MethodReport {
    pub fn new(name: impl Into<String>) -> Self {
        MethodReport {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Largest `measured / limit` over all checks.
    pub fn worst(&self) -> Option<&Check> {
        self.checks
            .iter()
            .max_by(|a, b| a.severity().total_cmp(&b.severity()))
    }

    /// Largest measured value over all checks.
    pub fn max_measured(&self) -> f64 {
        self.checks.iter().map(|c| c.measured).fold(0.0, f64::max)
    }

    pub fn merge(&mut self, other: MethodReport) {
        self.points.extend(other.points);
        self.checks.extend(other.checks);
    }
}

/// Dimensions of the default verification grid.
pub const GRID_D: [u32; 5] = [1, 2, 3, 4, 6];

/// Spectral parameters of the default verification grid.
pub fn grid_z() -> [C64; 5] {
    [cr(0.0), cr(-1.0), cr(0.5), c(0.0, 0.9), c(-2.0, 3.0)]
}

/// `count` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count <= 1 {
        return vec![lo; count];
    }
    let (a, b) = (lo.ln(), hi.ln());
    let mut g: Vec<f64> = (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect();
    g[0] = lo;
    g[count - 1] = hi;
    g
}

/// `rho` points of the default verification grid: half-decades from 1e-3 to 1e2.
pub fn grid_rho() -> Vec<f64> {
    log_grid(1e-3, 1e2, 11)
}

/// Whether an error from `m` at `p` counts as a failure. Methods whose
/// stated preconditions hold must succeed; the power series and the
/// asymptotic expansion decide their own range and may decline.
fn must_succeed(p: &ProblemPoint, m: Method) -> bool {
    match m {
        Method::Series | Method::Asymptotic => false,
        Method::Confluent => p.rho() > 0.0 && p.rho() <= CONFLUENT_RHO_MAX,
        _ => true,
    }
}

fn label(p: &ProblemPoint) -> String {
    format!("d={} z={} rho={:e}", p.d(), p.z(), p.rho())
}

/// Evaluates every applicable method at `p` and compares each valid pair:
/// `|v1 - v2| <= 10 (e1 + e2)`. Results flagged outside their validity
/// domain do not take part.
pub fn cross_check_point(p: &ProblemPoint) -> MethodReport {
    let mut report = MethodReport::new(label(p));
    let mut valid: Vec<EvalResult> = Vec::new();
    for m in applicable_methods(p) {
        match eval_with(p, m) {
            Ok(r) if r.in_validity_domain => valid.push(r),
            Ok(_) => {}
            Err(e) => {
                if must_succeed(p, m) {
                    report.checks.push(Check {
                        label: format!("{m} at {}: {e}", label(p)),
                        measured: f64::INFINITY,
                        limit: 0.0,
                        passed: false,
                    });
                }
            }
        }
    }
    for i in 0..valid.len() {
        for j in i + 1..valid.len() {
            let (a, b) = (&valid[i], &valid[j]);
            report.checks.push(Check::new(
                format!("{} vs {} at {}", a.method, b.method, label(p)),
                (a.value - b.value).norm(),
                10.0 * (a.abs_error_estimate + b.abs_error_estimate),
            ));
        }
    }
    report.points.push(PointValues {
        d: p.d(),
        z: p.z(),
        rho: Some(p.rho()),
        n: None,
        target: None,
        values: valid
            .iter()
            .map(|r| MethodValue {
                method: r.method,
                value: r.value,
                abs_error_estimate: r.abs_error_estimate,
            })
            .collect(),
    });
    report
}

/// All grid points `d x z x rho`, skipping those on the spectrum.
pub fn grid_points(ds: &[u32], zs: &[C64], rhos: &[f64]) -> Vec<ProblemPoint> {
    let mut out = Vec::new();
    for &d in ds {
        for &z in zs {
            for &rho in rhos {
                if let Ok(p) = ProblemPoint::new(d, z, rho) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Cross-method agreement over a list of points (evaluated in parallel,
/// reported in input order).
pub fn cross_method(points: &[ProblemPoint]) -> MethodReport {
    let parts: Vec<MethodReport> = points.par_iter().map(cross_check_point).collect();
    let mut report = MethodReport::new("cross-method agreement");
    for r in parts {
        report.merge(r);
    }
    report
}

/// `F_{d, conj z}(rho) = conj F_{d,z}(rho)` to `1e-12 max(1, |F|)`.
pub fn conjugation_symmetry(points: &[ProblemPoint]) -> Result<MethodReport> {
    let checks: Vec<Check> = points
        .par_iter()
        .map(|p| {
            let q = ProblemPoint::new(p.d(), p.z().conj(), p.rho())?;
            let a = eval(p, MethodChoice::Auto)?;
            let b = eval(&q, MethodChoice::Auto)?;
            Ok(Check::new(
                format!("conjugation at {}", label(p)),
                (a.value.conj() - b.value).norm() / a.value.norm().max(1.0),
                1e-12,
            ))
        })
        .collect::<Result<_>>()?;
    Ok(MethodReport {
        name: "conjugation symmetry".into(),
        points: Vec::new(),
        checks,
    })
}

/// For real `z < d`: `(-1)^n d^n F >= 0` for `n <= max_n`, and `F` positive
/// and decreasing along the (sorted) `rho` list.
pub fn complete_monotonicity(ds: &[u32], zs: &[f64], rhos: &[f64], max_n: usize) -> Result<MethodReport> {
    let mut report = MethodReport::new("complete monotonicity");
    for &d in ds {
        for &z in zs {
            if z >= d as f64 {
                continue;
            }
            let mut prev: Option<f64> = None;
            for &rho in rhos {
                let p = ProblemPoint::new(d, cr(z), rho)?;
                let rows: Vec<EvalResult> = (0..=max_n)
                    .into_par_iter()
                    .map(|n| derivative(&p, n))
                    .collect::<Result<_>>()?;
                for (n, r) in rows.iter().enumerate() {
                    let signed = if n % 2 == 0 { r.value.re } else { -r.value.re };
                    // a negative value within the error estimate counts as zero
                    report.checks.push(Check::new(
                        format!("(-1)^{n} F^({n}) >= 0 at {}", label(&p)),
                        (-signed - r.abs_error_estimate).max(0.0),
                        0.0,
                    ));
                }
                let f = rows[0].value.re;
                if let Some(pv) = prev {
                    report.checks.push(Check::new(format!("F decreasing at {}", label(&p)), (f - pv).max(0.0), 0.0));
                }
                report.checks.push(Check::new(format!("F > 0 at {}", label(&p)), if f > 0.0 { 0.0 } else { 1.0 }, 0.0));
                prev = Some(f);
            }
        }
    }
    Ok(report)
}

/// Residual of `-F'' - (d/rho) F' - (z/rho) F + F = 1/rho` relative to
/// `1/rho`, with derivatives from the termwise differentiated series.
pub fn ode_residual(p: &ProblemPoint) -> Result<f64> {
    let rho = p.rho();
    if !(rho > 0.0) {
        return Err(Error::Domain("radial ODE residual needs rho > 0".into()));
    }
    let f0 = eval_series_derivative(p, 0, DEFAULT_MAX_TERMS)?.value;
    let f1 = eval_series_derivative(p, 1, DEFAULT_MAX_TERMS)?.value;
    let f2 = eval_series_derivative(p, 2, DEFAULT_MAX_TERMS)?.value;
    let d = p.d() as f64;
    let lhs = -f2 - f1 * (d / rho) - p.z() * f0 / rho + f0;
    Ok((lhs - 1.0 / rho).norm() * rho)
}

/// Radial ODE residual `<= tol` at every point.
pub fn radial_ode(points: &[ProblemPoint], tol: f64) -> Result<MethodReport> {
    let checks: Vec<Check> = points
        .par_iter()
        .map(|p| Ok(Check::new(format!("ODE residual at {}", label(p)), ode_residual(p)?, tol)))
        .collect::<Result<_>>()?;
    Ok(MethodReport {
        name: "radial ODE".into(),
        points: Vec::new(),
        checks,
    })
}

/// `derivative(p, n)` against a central difference of `derivative(p, n-1)`,
/// within ten times the difference scheme's own error (step-halving
/// estimate plus rounding).
pub fn finite_difference_check(p: &ProblemPoint, n: usize) -> Result<Check> {
    if n == 0 {
        return Err(Error::Domain("finite-difference check needs n >= 1".into()));
    }
    let rho = p.rho();
    let h = 1e-2 * rho.max(1e-1).min(1.0);
    let at = |x: f64| -> Result<EvalResult> { derivative(&ProblemPoint::new(p.d(), p.z(), x)?, n - 1) };
    let diff = |h: f64| -> Result<(C64, f64)> {
        let a = at(rho + h)?;
        let b = at(rho - h)?;
        Ok(((a.value - b.value) / (2.0 * h), (a.abs_error_estimate + b.abs_error_estimate) / (2.0 * h)))
    };
    let (fd_h, round) = diff(h)?;
    let (fd_2h, _) = diff(2.0 * h)?;
    // Richardson: the O(h^2) term of fd_h is about (fd_2h - fd_h)/3
    let scheme = (fd_2h - fd_h).norm() / 3.0;
    let exact = derivative(p, n)?;
    Ok(Check::new(
        format!("d^{n}F vs central difference at {}", label(p)),
        (exact.value - fd_h).norm(),
        10.0 * (scheme + round + exact.abs_error_estimate) + 1e3 * EPS * fd_h.norm(),
    ))
}

/// Truncation remainder of the optimally truncated asymptotic expansion
/// against quadrature (or the confluent route when `Re z >= d`), at points where the minimum term is reached within
/// the order cap. The limit is the first omitted term plus the endpoint
/// scale (and the quadrature error).
pub fn asymptotic_remainder(points: &[ProblemPoint]) -> Result<MethodReport> {
    let mut report = MethodReport::new("asymptotic remainder");
    for p in points {
        let s = match asymptotic_sum(p, MAX_ORDER) {
            Ok(s) => s,
            Err(Error::DivergentRegime { .. }) => continue,
            Err(e) => return Err(e),
        };
        if !s.optimal {
            continue;
        }
        let reference = if p.z().re < p.d() as f64 {
            Method::Quadrature
        } else if p.rho() <= CONFLUENT_RHO_MAX {
            Method::Confluent
        } else {
            continue;
        };
        let q = eval_with(p, reference)?;
        report.checks.push(Check::new(
            format!("asymptotic remainder at {}", label(p)),
            (s.value - q.value).norm(),
            s.first_omitted + s.endpoint + q.abs_error_estimate,
        ));
    }
    Ok(report)
}

/// Options of a full verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub ds: Vec<u32>,
    pub zs: Vec<C64>,
    pub rhos: Vec<f64>,
    /// Extra points (e.g. random) added to the cross-method sweep.
    pub extra: Vec<ProblemPoint>,
    /// Required relative error estimate of the auto-dispatched value.
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            ds: GRID_D.to_vec(),
            zs: grid_z().to_vec(),
            rhos: grid_rho(),
            extra: Vec::new(),
            tol: 1e-8,
        }
    }
}

/// Runs the cross-method sweep and every property suite.
pub fn run_verification(cfg: &VerifyConfig) -> Result<Vec<MethodReport>> {
    let mut points = grid_points(&cfg.ds, &cfg.zs, &cfg.rhos);
    points.extend(cfg.extra.iter().copied());
    let mut reports = vec![cross_method(&points)];

    let mut tol_report = MethodReport::new(format!("auto dispatch meets tol {:e}", cfg.tol));
    let auto: Vec<Result<EvalResult>> = points.par_iter().map(|p| eval(p, MethodChoice::Auto)).collect();
    for (p, r) in points.iter().zip(auto) {
        let check = match r {
            Ok(r) => Check::new(format!("auto at {}", label(p)), r.relative_error_estimate(), cfg.tol),
            Err(e) => Check {
                label: format!("auto at {}: {e}", label(p)),
                measured: f64::INFINITY,
                limit: cfg.tol,
                passed: false,
            },
        };
        tol_report.checks.push(check);
    }
    reports.push(tol_report);

    reports.push(conjugation_symmetry(&points)?);

    let real_z: Vec<f64> = cfg.zs.iter().filter(|z| z.im == 0.0).map(|z| z.re).collect();
    let mono_rho: Vec<f64> = cfg.rhos.iter().copied().filter(|r| *r <= 50.0).collect();
    reports.push(complete_monotonicity(&cfg.ds, &real_z, &mono_rho, 10)?);

    let ode_points = grid_points(&cfg.ds, &cfg.zs, &log_grid(0.1, 10.0, 9));
    reports.push(radial_ode(&ode_points, 1e-6)?);

    let mut fd = MethodReport::new("derivatives vs finite differences");
    let fd_points = grid_points(&cfg.ds, &cfg.zs, &[0.3, 2.0, 9.0]);
    let fd_checks: Vec<Check> = fd_points
        .par_iter()
        .flat_map_iter(|p| (1..=4).map(move |n| finite_difference_check(p, n)))
        .collect::<Result<_>>()?;
    fd.checks = fd_checks;
    reports.push(fd);

    let asym_points = grid_points(&cfg.ds, &cfg.zs, &[5.0, 10.0, 20.0, 50.0]);
    reports.push(asymptotic_remainder(&asym_points)?);

    let mut heat = MethodReport::new("heat-kernel pairing");
    for &d in &cfg.ds {
        heat.merge(heat_kernel_certify(d, &[0.1, 1.0], 5, 1e-8)?);
    }
    reports.push(heat);

    let mut cert = MethodReport::new("spectral certification");
    for &d in cfg.ds.iter().filter(|d| **d <= 3) {
        for z in [cr(0.0), cr(-1.0), c(0.0, 0.9)] {
            cert.merge(spectral_certify(d, z, 10, 1e-6)?);
        }
    }
    reports.push(cert);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_semantics() {
        assert!(Check::new("a", 1.0, 2.0).passed);
        assert!(!Check::new("a", f64::NAN, 2.0).passed);
        assert!(Check::new("a", 0.0, 0.0).passed);
        assert_eq!(Check::new("a", 0.0, 0.0).severity(), 0.0);
    }

    #[test]
    fn cross_check_a_few_points() {
        for &(d, z, rho) in &[(2, cr(0.0), 1.0), (1, c(0.0, 0.9), 1e-3), (6, c(-2.0, 3.0), 100.0), (3, cr(0.5), 10.0)] {
            let r = cross_check_point(&ProblemPoint::new(d, z, rho).unwrap());
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
            assert!(r.points[0].values.len() >= 2, "{r:?}");
        }
    }

    #[test]
    fn ode_residual_small() {
        for &(d, z, rho) in &[(2, cr(0.0), 1.0), (1, cr(0.5), 3.0), (4, c(-2.0, 3.0), 10.0), (3, c(0.0, 0.9), 0.1)] {
            let r = ode_residual(&ProblemPoint::new(d, z, rho).unwrap()).unwrap();
            assert!(r < 1e-9, "d={d} z={z} rho={rho}: {r}");
        }
    }

    #[test]
    fn finite_differences_agree() {
        for n in 1..=4 {
            let c = finite_difference_check(&ProblemPoint::new(3, c(-1.0, 0.5), 1.3).unwrap(), n).unwrap();
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e-3, 1e2, 11);
        assert_eq!(g.len(), 11);
        assert!((g[0] - 1e-3).abs() < 1e-18 && (g[10] - 1e2).abs() < 1e-12);
        assert!((g[2] - 1e-2).abs() < 1e-15);
    }
}
