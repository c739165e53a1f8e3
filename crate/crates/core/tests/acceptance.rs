//! Acceptance run: one pass/fail line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};
use weylosc::asymptotics::asymptotic_coeffs;
use weylosc::derivatives::{bound_grid, bound_rho, bound_z, d1_constant, BOUND_MAX_N, BOUND_S};
use weylosc::numeric::{c, cr};
use weylosc::oracle::spectral_certify;
use weylosc::projections::{projection_symbol, residue_limit, ProjectionIndex};
use weylosc::symbol::{applicable_methods, eval_with, Method, ProblemPoint};
use weylosc::verify::{
    asymptotic_remainder, cross_method, grid_points, grid_rho, grid_z, log_grid, run_verification, Check,
    MethodReport, VerifyConfig, GRID_D,
};
use weylosc::Result;

struct Outcome {
    passed: bool,
    detail: String,
}

fn summarize(reports: &[MethodReport]) -> Outcome {
    let checks: Vec<&Check> = reports.iter().flat_map(|r| r.checks.iter()).collect();
    let failed: Vec<&&Check> = checks.iter().filter(|c| !c.passed).collect();
    let worst = checks
        .iter()
        .max_by(|a, b| a.severity().total_cmp(&b.severity()))
        .map(|c| c.to_string())
        .unwrap_or_default();
    let mut detail = format!("{} checks, {} failed; worst: {worst}", checks.len(), failed.len());
    for f in failed.iter().take(5) {
        detail.push_str(&format!("\n      {f}"));
    }
    Outcome {
        passed: !checks.is_empty() && failed.is_empty(),
        detail,
    }
}

fn closed_form_golden() -> Result<Outcome> {
    let mut report = MethodReport::new("golden");
    let mut evaluated = 0;
    for rho in log_grid(1e-3, 1e2, 25) {
        let p = ProblemPoint::new(2, cr(0.0), rho)?;
        let exact = -(-rho).exp_m1() / rho;
        for m in applicable_methods(&p) {
            let r = match eval_with(&p, m) {
                Ok(r) if r.in_validity_domain => r,
                // the series and the expansion decide their own range
                Ok(_) | Err(_) if matches!(m, Method::Series | Method::Asymptotic) => continue,
                Ok(r) => r,
                Err(e) => {
                    report.checks.push(Check::new(format!("{m} at rho={rho:e}: {e}"), f64::INFINITY, 0.0));
                    continue;
                }
            };
            evaluated += 1;
            let limit = if m == Method::Confluent { 1e-7 } else { 1e-9 };
            report
                .checks
                .push(Check::new(format!("{m} at rho={rho:e}"), (r.value - exact).norm() / exact, limit));
        }
    }
    let mut out = summarize(&[report]);
    out.detail = format!("{evaluated} method evaluations, {}", out.detail);
    Ok(out)
}

fn cross_method_grid() -> Result<Outcome> {
    let points = grid_points(&GRID_D, &grid_z(), &grid_rho());
    Ok(summarize(&[cross_method(&points)]))
}

fn spectral_certification() -> Result<Outcome> {
    let mut reports = Vec::new();
    for d in 1..=3 {
        for z in [cr(0.0), cr(-1.0), c(0.0, 0.9)] {
            reports.push(spectral_certify(d, z, 10, 1e-6)?);
        }
    }
    Ok(summarize(&reports))
}

fn residue_projection() -> Result<Outcome> {
    let mut report = MethodReport::new("residue");
    for d in 1..=2 {
        for n in 0..=3 {
            let idx = ProjectionIndex::new(d, n)?;
            for rho in [0.5, 1.0, 5.0] {
                let r = residue_limit(idx, rho, 1e-3)?;
                report.checks.push(Check::new(
                    format!("d={d} n={n} rho={rho}"),
                    (r.value - projection_symbol(idx, rho)).norm(),
                    1e-5,
                ));
            }
        }
    }
    Ok(summarize(&[report]))
}

fn asymptotics() -> Result<Outcome> {
    let mut report = MethodReport::new("asymptotics");
    for &d in &GRID_D {
        for z in grid_z() {
            let e = asymptotic_coeffs(d, z, 2)?;
            report.checks.push(Check::new(
                format!("d_1 = 1 for d={d} z={z}"),
                if e.coeff(1) == cr(1.0) { 0.0 } else { 1.0 },
                0.0,
            ));
        }
    }
    for (d, z) in [(3, 1.0), (2, -2.0)] {
        let rho = 1e3;
        let f = eval_with(&ProblemPoint::new(d, cr(z), rho)?, Method::Quadrature)?;
        let lead = (f.value - 1.0 / rho) * rho * rho;
        report.checks.push(Check::new(
            format!("rho^2 (F - 1/rho) -> z at d={d} z={z}: {lead}"),
            (lead - z).norm() / z.abs(),
            0.01,
        ));
    }
    let mut rhos = grid_rho();
    rhos.extend([5.0, 20.0, 50.0]);
    let remainder = asymptotic_remainder(&grid_points(&GRID_D, &grid_z(), &rhos))?;
    let mut out = summarize(&[report, remainder]);
    out.detail = format!("remainder at points where the minimum term is reached; {}", out.detail);
    Ok(out)
}

fn derivative_bounds() -> Result<Outcome> {
    let mut report = MethodReport::new("bounds");
    let rhos = bound_rho(8);
    for d in 2..=4 {
        for b in bound_grid(d, &bound_z(), BOUND_MAX_N, &BOUND_S, &rhos)? {
            report.checks.push(Check::new(
                format!("d={d} z={} n={} s={} rho={:e}", b.z, b.n, b.s, b.rho),
                if b.passed { 0.0 } else { b.ratio() },
                0.0,
            ));
        }
    }
    let k = d1_constant(16)?;
    report.checks.push(Check::new(
        format!("d=1 constant {:.6} (16/decade) vs {:.6} (32/decade)", k.coarse, k.fine),
        if k.coarse.is_finite() && k.fine.is_finite() { k.relative_change() } else { f64::INFINITY },
        0.05,
    ));
    Ok(summarize(&[report]))
}

fn property_suites() -> Result<Outcome> {
    let reports = run_verification(&VerifyConfig::default())?;
    let mut out = summarize(&reports);
    let names: Vec<String> = reports
        .iter()
        .map(|r| format!("{} {}", r.name, if r.passed() { "ok" } else { "FAIL" }))
        .collect();
    out.detail = format!("[{}] {}", names.join(", "), out.detail);
    Ok(out)
}

type Criterion = (&'static str, Option<Duration>, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("closed-form golden test", Some(Duration::from_secs(5)), closed_form_golden),
        ("cross-method grid", Some(Duration::from_secs(60)), cross_method_grid),
        ("spectral certification", Some(Duration::from_secs(60)), spectral_certification),
        ("residue/projection", Some(Duration::from_secs(30)), residue_projection),
        ("asymptotics", None, asymptotics),
        ("derivative bounds", None, derivative_bounds),
        ("property suites (full verify)", Some(Duration::from_secs(300)), property_suites),
    ];
    let mut all = true;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = budget.map_or(true, |b| elapsed < b);
        let ok = passed && in_time;
        all &= ok;
        let limit = budget.map_or(String::new(), |b| format!(" (limit {:.0?})", b));
        println!(
            "{} {name}: {elapsed:.2?}{limit}{}\n    {detail}",
            if ok { "PASS" } else { "FAIL" },
            if in_time { "" } else { " TOO SLOW" }
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
