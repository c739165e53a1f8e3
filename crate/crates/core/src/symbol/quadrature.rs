//! `F_{d,z}(rho) = int_0^1 (1-s)^{alpha-1} (1+s)^{beta-1} e^{-s rho} ds` for
//! `Re z < d`, with `alpha = (d-z)/2`, `beta = (d+z)/2`.
//!
//! The endpoint factor `(1-s)^{alpha-1}` is handled analytically on
//! `[1-delta, 1]` (term-by-term integration of the Taylor expansion of the
//! smooth cofactor), and adaptive Gauss–Kronrod covers `[0, 1-delta]`.

use super::{EvalResult, Method, ProblemPoint};
use crate::error::{Error, Result};
use crate::numeric::{cr, endpoint_power_integral, Taylor, C64};
use crate::quad::{integrate, Tolerance};

const TAYLOR_ORDER: usize = 48;
const QUAD_TOL: Tolerance = Tolerance::relative(1e-14);

/// `int_0^1 g(s) (-s)^n e^{-s rho} ds`, i.e. the n-th rho-derivative of the
/// integral representation. Returns value and absolute error estimate.
pub fn laplace_moment(d: u32, z: C64, rho: f64, n: u32) -> Result<(C64, f64)> {
    let df = d as f64;
    if !(z.re < df) {
        return Err(Error::Domain(format!(
            "integral representation needs Re z < d (z = {z}, d = {d})"
        )));
    }
    let alpha = (df - z) * 0.5;
    let beta = (df + z) * 0.5;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };

    let mut delta = 0.125f64.min(0.5 / (n as f64 + 1.0));
    if rho > 0.0 {
        delta = delta.min(2.0 / rho);
    }

    // near s = 1: t = 1 - s, g (-s)^n e^{-s rho}
    //   = t^{alpha-1} (-1)^n e^{-rho} 2^{beta-1} (1 - t/2)^{beta-1} (1-t)^n e^{rho t}
    let mut h = Taylor::binomial(beta - 1.0, cr(-0.5), TAYLOR_ORDER)
        .mul(&Taylor::exp(cr(rho), TAYLOR_ORDER));
    if n > 0 {
        h = h.mul(&Taylor::binomial(cr(n as f64), cr(-1.0), TAYLOR_ORDER));
    }
    let (head, head_err) = endpoint_power_integral(alpha, &h, delta);
    let pre = ((beta - 1.0) * std::f64::consts::LN_2 - rho).exp() * sign;
    let endpoint = head * pre;
    let endpoint_err = head_err * pre.norm();

    let am1 = alpha - 1.0;
    let bm1 = beta - 1.0;
    let nf = n as f64;
    let upper = 1.0 - delta;
    let integrand = |s: f64| {
        let log = am1 * (-s).ln_1p() + bm1 * s.ln_1p() - s * rho;
        let pow = if n == 0 { 1.0 } else { s.powf(nf) };
        Ok(log.exp() * (pow * sign))
    };
    let mut breaks = Vec::new();
    if rho > 0.0 {
        let peak = nf / rho;
        let cut = (30.0 + nf) / rho;
        breaks.extend([peak, cut].into_iter().filter(|x| *x > 0.0 && *x < upper));
    }
    let bulk = integrate(integrand, 0.0, upper, &breaks, QUAD_TOL)?;
    Ok((bulk.value + endpoint, bulk.error + endpoint_err))
}

/// Integral representation, valid for `Re z < d`.
pub fn eval_quadrature(p: &ProblemPoint) -> Result<EvalResult> {
    let (v, e) = laplace_moment(p.d(), p.z(), p.rho(), 0)?;
    Ok(EvalResult::new(v, e, Method::Quadrature))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;
    use std::f64::consts::PI;

    fn f(d: u32, z: C64, rho: f64) -> EvalResult {
        eval_quadrature(&ProblemPoint::new(d, z, rho).unwrap()).unwrap()
    }

    #[test]
    fn closed_form_d2() {
        let r = f(2, cr(0.0), 1.0);
        assert!((r.value.re - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        assert!((f(2, cr(0.0), 0.0).value.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn values_at_zero() {
        // d=1: int (1-s^2)^(-1/2) = pi/2; d=3: quarter disc = pi/4
        let r = f(1, cr(0.0), 0.0);
        assert!((r.value.re - PI / 2.0).abs() < 1e-14, "{r:?}");
        assert!((f(3, cr(0.0), 0.0).value.re - PI / 4.0).abs() < 1e-14);
    }

    #[test]
    fn singular_and_oscillatory_endpoint() {
        // d=1, z=0.5: exponent -3/4 at s=1; check against Beta-function value at rho=0:
        // int_0^1 (1-s)^{-3/4} (1+s)^{-1/4} ds, oracle by substitution s = 1 - u^4
        let r = f(1, cr(0.5), 0.0);
        let oracle = integrate(
            |u: f64| Ok(cr(4.0 * (2.0 - u.powi(4)).powf(-0.25))),
            0.0,
            1.0,
            &[],
            QUAD_TOL,
        )
        .unwrap()
        .value
        .re;
        assert!((r.value.re - oracle).abs() < 1e-13, "{} vs {}", r.value.re, oracle);
        // complex exponent: finite, error estimate small
        let r = f(1, c(0.0, 0.9), 3.0);
        assert!(r.abs_error_estimate < 1e-12 && r.value.norm() > 0.0);
    }

    #[test]
    fn incomplete_exponential_by_quadrature() {
        // int_0^1 v^2 e^{-v} dv = 2 (1 - 2.5 e^-1)
        let q = integrate(|v: f64| Ok(cr(v * v * (-v).exp())), 0.0, 1.0, &[], QUAD_TOL).unwrap();
        assert!((q.value.re - 2.0 * (1.0 - 2.5 * (-1.0f64).exp())).abs() < 1e-15);
        assert!((q.value.re - super::super::incomplete_exponential_integral(2, 1.0)).abs() < 1e-15);
    }

    #[test]
    fn domain_error_outside_half_plane() {
        assert!(matches!(laplace_moment(2, cr(2.5), 1.0, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn first_derivative_closed_form() {
        let (v, _) = laplace_moment(2, cr(0.0), 1.0, 1).unwrap();
        assert!((v.re - (2.0 * (-1.0f64).exp() - 1.0)).abs() < 1e-15);
    }
}
