//! One function per subcommand; each returns a report.

use crate::args::{RunConfig, UsageError};
use crate::report::{Report, Row};
use crate::row;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use weylosc::asymptotics::{asymptotic_coeffs, asymptotic_sum, MAX_ORDER};
use weylosc::derivatives::{check_bounds, derivative};
use weylosc::oracle::spectral_certify;
use weylosc::projections::projection_symbol;
use weylosc::symbol::series_expansion;
use weylosc::verify::{grid_z, run_verification, VerifyConfig, GRID_D};
use weylosc::{eval, EvalResult, MethodChoice, MethodReport, ProblemPoint, ProjectionIndex, C64};

fn z_json(z: C64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn method_name(m: MethodChoice) -> String {
    match m {
        MethodChoice::Auto => "auto".into(),
        MethodChoice::Explicit(m) => m.to_string(),
    }
}

fn base_inputs(report: &mut Report, cfg: &RunConfig) {
    let i = &mut report.inputs;
    if let Some(d) = &cfg.dims {
        i.insert("d".into(), json!(d));
    }
    if let Some(z) = cfg.z {
        i.insert("z".into(), z_json(z));
    }
    if let Some(r) = &cfg.rho {
        i.insert("rho".into(), json!(r));
    }
    i.insert("method".into(), method_name(cfg.method).into());
    for (k, v) in [("n", cfg.n.map(|v| v as f64)), ("k", cfg.k.map(|v| v as f64)), ("s", cfg.s)] {
        if let Some(v) = v {
            i.insert(k.into(), json!(v));
        }
    }
    i.insert("tol".into(), json!(cfg.tol));
    i.insert("seed".into(), json!(cfg.seed));
}

/// Every `(d, rho)` pair in input order.
fn grid(cfg: &RunConfig) -> Result<Vec<(u32, f64)>, UsageError> {
    let rhos = cfg.rho()?;
    Ok(cfg
        .dims()?
        .iter()
        .flat_map(|&d| rhos.iter().map(move |&r| (d, r)))
        .collect())
}

fn value_row(d: u32, z: C64, rho: f64, r: &EvalResult) -> Row {
    row! {
        "d" => d, "z_re" => z.re, "z_im" => z.im, "rho" => rho,
        "value_re" => r.value.re, "value_im" => r.value.im,
        "err_est" => r.abs_error_estimate, "method" => r.method.name(),
        "in_validity_domain" => r.in_validity_domain,
    }
}

fn error_row(d: u32, z: C64, rho: f64, e: &dyn std::fmt::Display) -> Row {
    row! {"d" => d, "z_re" => z.re, "z_im" => z.im, "rho" => rho, "error" => e.to_string()}
}

/// Turns per-point results into rows, recording failures: errors, results
/// outside their validity domain, and relative error estimates above `tol`.
fn collect(report: &mut Report, results: Vec<(u32, C64, f64, weylosc::Result<EvalResult>)>, tol: f64) {
    for (d, z, rho, r) in results {
        match r {
            Ok(r) => {
                let at = format!("d={d} z={z} rho={rho}");
                if !r.in_validity_domain {
                    report.failures.push(format!("{at}: {} outside its validity domain", r.method));
                } else if r.relative_error_estimate() > tol {
                    report.failures.push(format!(
                        "{at}: relative error estimate {:.3e} exceeds tol {tol:e}",
                        r.relative_error_estimate()
                    ));
                }
                report.rows.push(value_row(d, z, rho, &r));
            }
            Err(e) => {
                report.failures.push(format!("d={d} z={z} rho={rho}: {e}"));
                report.rows.push(error_row(d, z, rho, &e));
            }
        }
    }
}

pub fn eval_cmd(cfg: &RunConfig) -> Result<Report, UsageError> {
    let mut report = Report::new("eval");
    base_inputs(&mut report, cfg);
    let z = cfg.z_or_zero();
    let method = cfg.method;
    let results = grid(cfg)?
        .into_par_iter()
        .map(|(d, rho)| (d, z, rho, ProblemPoint::new(d, z, rho).and_then(|p| eval(&p, method))))
        .collect();
    collect(&mut report, results, cfg.tol);
    Ok(report)
}

pub fn series_coeffs_cmd(cfg: &RunConfig) -> Result<Report, UsageError> {
    let mut report = Report::new("series-coeffs");
    base_inputs(&mut report, cfg);
    let z = cfg.z_or_zero();
    let k = cfg.k.unwrap_or(10);
    for &d in cfg.dims()? {
        match series_expansion(d, z, k) {
            Ok(s) => {
                for (j, (v, e)) in s.coefficients.iter().zip(&s.coefficient_errors).enumerate().take(k + 1) {
                    report.rows.push(row! {
                        "d" => d, "k" => j, "value_re" => v.re, "value_im" => v.im, "err_est" => e,
                    });
                }
            }
            Err(e) => report.failures.push(format!("d={d} z={z}: {e}")),
        }
    }
    Ok(report)
}

pub fn asymptotic_cmd(cfg: &RunConfig) -> Result<Report, UsageError> {
    let mut report = Report::new("asymptotic");
    base_inputs(&mut report, cfg);
    let z = cfg.z_or_zero();
    let n = cfg.n.map_or(MAX_ORDER, |n| n as usize);
    if n == 0 || n > MAX_ORDER {
        return Err(UsageError(format!("--n must lie in 1..={MAX_ORDER}")));
    }
    if cfg.rho.is_none() {
        for &d in cfg.dims()? {
            match asymptotic_coeffs(d, z, n) {
                Ok(e) => {
                    for j in 1..=n {
                        let v = e.coeff(j);
                        report.rows.push(row! {"d" => d, "j" => j, "value_re" => v.re, "value_im" => v.im});
                    }
                }
                Err(e) => report.failures.push(format!("d={d} z={z}: {e}")),
            }
        }
        return Ok(report);
    }
    let rows: Vec<(Row, Option<String>)> = grid(cfg)?
        .into_par_iter()
        .map(|(d, rho)| {
            match ProblemPoint::new(d, z, rho).and_then(|p| asymptotic_sum(&p, n)) {
                Ok(s) => {
                    let err = s.error_estimate();
                    let mut r = row! {
                        "d" => d, "z_re" => z.re, "z_im" => z.im, "rho" => rho,
                        "value_re" => s.value.re, "value_im" => s.value.im,
                        "err_est" => err, "method" => "asymptotic",
                        "terms" => s.terms, "optimal" => s.optimal,
                        "first_omitted" => s.first_omitted, "endpoint" => s.endpoint,
                    };
                    let fail = (!(err <= cfg.tol * s.value.norm())).then(|| {
                        format!("d={d} z={z} rho={rho}: error estimate {err:.3e} exceeds tol relative to |F|")
                    });
                    r.insert("within_tol".into(), fail.is_none().into());
                    (r, fail)
                }
                Err(e) => (error_row(d, z, rho, &e), Some(format!("d={d} z={z} rho={rho}: {e}"))),
            }
        })
        .collect();
    for (r, f) in rows {
        report.rows.push(r);
        report.failures.extend(f);
    }
    Ok(report)
}

pub fn derivative_cmd(cfg: &RunConfig) -> Result<Report, UsageError> {
    let mut report = Report::new("derivative");
    base_inputs(&mut report, cfg);
    let z = cfg.z_or_zero();
    let n = cfg.n.unwrap_or(1) as usize;
    let s = cfg.s;
    let rows: Vec<(Row, Vec<String>)> = grid(cfg)?
        .into_par_iter()
        .map(|(d, rho)| {
            let at = format!("d={d} z={z} n={n} rho={rho}");
            let r = match ProblemPoint::new(d, z, rho).and_then(|p| derivative(&p, n)) {
                Ok(r) => r,
                Err(e) => return (error_row(d, z, rho, &e), vec![format!("{at}: {e}")]),
            };
            let mut row = value_row(d, z, rho, &r);
            row.insert("n".into(), n.into());
            let mut fails = Vec::new();
            if let Some(s) = s {
                match check_bounds(d, z, n, s, rho) {
                    Ok(b) => {
                        row.insert("s".into(), json!(s));
                        row.insert("bound_rhs".into(), json!(b.rhs));
                        row.insert("ratio".into(), json!(b.ratio()));
                        row.insert("bound_passed".into(), b.passed.into());
                        if !b.passed {
                            fails.push(format!("{at} s={s}: bound violated, ratio {}", b.ratio()));
                        }
                    }
                    Err(e) => fails.push(format!("{at} s={s}: {e}")),
                }
            }
            (row, fails)
        })
        .collect();
    for (r, f) in rows {
        report.rows.push(r);
        report.failures.extend(f);
    }
    Ok(report)
}

pub fn projection_cmd(cfg: &RunConfig) -> Result<Report, UsageError> {
    let mut report = Report::new("projection");
    base_inputs(&mut report, cfg);
    let n = cfg.n()?;
    for (d, rho) in grid(cfg)? {
        let idx = ProjectionIndex::new(d, n).map_err(|e| UsageError(e.to_string()))?;
        let v = projection_symbol(idx, rho);
        report.rows.push(row! {
            "d" => d, "n" => n, "rho" => rho, "value_re" => v, "value_im" => 0.0,
            "err_est" => 0.0, "method" => "laguerre",
            "eigenvalue" => idx.eigenvalue(), "multiplicity" => idx.multiplicity(),
        });
    }
    Ok(report)
}

fn report_rows(report: &mut Report, reports: &[MethodReport]) {
    for r in reports {
        for p in &r.points {
            for v in &p.values {
                let mut row = row! {
                    "d" => p.d, "z_re" => p.z.re, "z_im" => p.z.im, "rho" => p.rho, "n" => p.n,
                    "value_re" => v.value.re, "value_im" => v.value.im,
                    "err_est" => v.abs_error_estimate, "method" => v.method.name(),
                };
                if let Some(t) = p.target {
                    row.insert("target_re".into(), json!(t.re));
                    row.insert("target_im".into(), json!(t.im));
                }
                report.rows.push(row);
            }
        }
        report.failures.extend(r.failures().map(|c| format!("{}: {c}", r.name)));
    }
    report.summary = Some(Value::Array(
        reports
            .iter()
            .map(|r| {
                json!({
                    "suite": r.name,
                    "checks": r.checks.len(),
                    "failed": r.failures().count(),
                    "worst": r.worst().map(|c| c.to_string()),
                })
            })
            .collect(),
    ));
}

/// Seeded random points added to the cross-method sweep.
pub fn random_points(dims: &[u32], seed: u64, count: usize) -> Vec<ProblemPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = dims[rng.gen_range(0..dims.len())];
        let re = rng.gen_range(-6.0..d as f64 + 6.0);
        let im = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(-3.0..3.0) };
        let rho = 10f64.powf(rng.gen_range(-3.0..2.0));
        if let Ok(p) = ProblemPoint::new(d, weylosc::c(re, im), rho) {
            out.push(p);
        }
    }
    out
}

pub const RANDOM_POINTS: usize = 24;

pub fn verify_cmd(cfg: &RunConfig) -> Result<Report, UsageError> {
    let mut report = Report::new("verify");
    let mut vc = VerifyConfig {
        tol: cfg.tol,
        ..VerifyConfig::default()
    };
    if let Some(d) = &cfg.dims {
        vc.ds = d.clone();
    }
    if let Some(z) = cfg.z {
        vc.zs = vec![z];
    }
    if let Some(r) = &cfg.rho {
        vc.rhos = r.clone();
    }
    vc.extra = random_points(&vc.ds, cfg.seed, RANDOM_POINTS);
    base_inputs(&mut report, cfg);
    report.inputs.insert("d".into(), json!(vc.ds));
    report.inputs.insert("z".into(), Value::Array(vc.zs.iter().map(|z| z_json(*z)).collect()));
    report.inputs.insert("rho".into(), json!(vc.rhos));
    report.inputs.insert("random_points".into(), json!(RANDOM_POINTS));
    match run_verification(&vc) {
        Ok(reports) => report_rows(&mut report, &reports),
        Err(e) => report.failures.push(format!("verification aborted: {e}")),
    }
    Ok(report)
}

pub fn certify_cmd(cfg: &RunConfig) -> Result<Report, UsageError> {
    let mut report = Report::new("certify");
    base_inputs(&mut report, cfg);
    let n = cfg.n.unwrap_or(10);
    let zs: Vec<C64> = match cfg.z {
        Some(z) => vec![z],
        None => grid_z().to_vec(),
    };
    let dims = cfg.dims.clone().unwrap_or_else(|| GRID_D.to_vec());
    let mut reports = Vec::new();
    for &d in &dims {
        for &z in &zs {
            match spectral_certify(d, z, n, cfg.tol) {
                Ok(r) => reports.push(r),
                Err(e) => report.failures.push(format!("d={d} z={z}: {e}")),
            }
        }
    }
    report_rows(&mut report, &reports);
    Ok(report)
}
