//! Green's-function representation through Kummer's `M` and Tricomi's `U`:
//!
//! `F = 2^{d-1} Gamma(alpha)/(d-1)! e^{-rho} [ M(2 rho) int_rho^inf eta^{d-1} e^{-eta} U(2 eta) d eta
//!                                         + U(2 rho) int_0^rho  eta^{d-1} e^{-eta} M(2 eta) d eta ]`
//!
//! with `M = M(alpha, d; .)`, `U = U(alpha, d; .)`, `alpha = (d - z)/2`.
//!
//! For `Re alpha > 0` the tail integral of `U` is taken through the Laplace
//! form of `U` with the order of integration swapped, which leaves a single
//! integral with an elementary inner part. Otherwise `U` is continued by
//! contiguous relations and the tail integral is done directly.

use super::{EvalResult, Method, ProblemPoint};
use crate::error::{Error, Result};
use crate::numeric::{cr, endpoint_power_integral, factorial, Taylor, C64, EPS};
use crate::quad::{integrate, integrate_to_infinity, PanelMarch, Tolerance};
use crate::specfun::{gamma, kummer_m_with_error, tricomi_u_with_error, ConfluentParams};

const TAYLOR_ORDER: usize = 48;
const TOL: Tolerance = Tolerance::relative(1e-13);

/// Largest rho accepted; beyond it `M(2 rho)` leaves the floating-point range.
pub const CONFLUENT_RHO_MAX: f64 = 300.0;

/// `int_0^rho eta^{d-1} e^{-eta} M(alpha, d; 2 eta) d eta`.
fn kummer_head(p: ConfluentParams, d: u32, rho: f64) -> Result<(C64, f64)> {
    let dm1 = d as i32 - 1;
    let mut m_rel: f64 = 0.0;
    let q = integrate(
        |eta| {
            let (m, e) = kummer_m_with_error(p, cr(2.0 * eta))?;
            m_rel = m_rel.max(e / m.norm().max(f64::MIN_POSITIVE));
            Ok(m * (eta.powi(dm1) * (-eta).exp()))
        },
        0.0,
        rho,
        &[],
        TOL,
    )?;
    Ok((q.value, q.error + m_rel * q.abs_integral))
}

/// `Gamma(alpha) int_rho^inf eta^{d-1} e^{-eta} U(alpha, d; 2 eta) d eta / (d-1)!`
/// for `Re alpha > 0`, via
/// `int_0^inf t^{alpha-1} (1+t)^{d-alpha-1} e^{-rho w} sum_{j<d} rho^j w^{j-d} / j! dt`,
/// `w = 1 + 2t`.
fn tricomi_tail_swapped(alpha: C64, d: u32, rho: f64) -> Result<(C64, f64)> {
    let df = d as f64;
    let q = df - alpha - 1.0;
    let delta = (1.0 / 16.0f64).min(1.0 / rho);

    let mut inner = Taylor(vec![C64::default(); TAYLOR_ORDER]);
    let mut rj = 1.0;
    for j in 0..d {
        let term = Taylor::binomial(cr(j as f64 - df), cr(2.0), TAYLOR_ORDER).scale(cr(rj));
        inner.add_assign(&term);
        rj *= rho / (j as f64 + 1.0);
    }
    let h = Taylor::binomial(q, cr(1.0), TAYLOR_ORDER)
        .mul(&Taylor::exp(cr(-2.0 * rho), TAYLOR_ORDER))
        .mul(&inner)
        .scale(cr((-rho).exp()));
    let (head, head_err) = endpoint_power_integral(alpha, &h, delta);

    let am1 = alpha - 1.0;
    let coeffs: Vec<f64> = (0..d)
        .scan(1.0, |acc, j| {
            let v = *acc;
            *acc *= rho / (j as f64 + 1.0);
            Some(v)
        })
        .collect();
    let march = PanelMarch {
        start: delta,
        width: 1.0f64.min(0.5 / rho),
        uniform_until: delta,
    };
    let tail = integrate_to_infinity(
        |t| {
            let w = 1.0 + 2.0 * t;
            let mut s = 0.0;
            for (j, cj) in coeffs.iter().enumerate() {
                s += cj * w.powi(j as i32 - d as i32);
            }
            Ok((am1 * t.ln() + q * t.ln_1p() - rho * w).exp() * s)
        },
        march,
        TOL,
    )?;
    Ok((head + tail.value, head_err + tail.error))
}

/// `int_rho^inf eta^{d-1} e^{-eta} U(alpha, d; 2 eta) d eta` by direct nested
/// quadrature (used when `U` needs contiguous continuation).
fn tricomi_tail_direct(p: ConfluentParams, d: u32, rho: f64) -> Result<(C64, f64)> {
    let dm1 = d as i32 - 1;
    let mut u_rel: f64 = 0.0;
    let march = PanelMarch {
        start: rho,
        width: 1.0,
        uniform_until: rho + 8.0,
    };
    let q = integrate_to_infinity(
        |eta| {
            let (u, e) = tricomi_u_with_error(p, 2.0 * eta)?;
            u_rel = u_rel.max(e / u.norm().max(f64::MIN_POSITIVE));
            Ok(u * (eta.powi(dm1) * (-eta).exp()))
        },
        march,
        TOL,
    )?;
    Ok((q.value, q.error + u_rel * q.abs_integral))
}

/// Confluent (Green's function) representation; needs `rho > 0`.
pub fn eval_confluent(p: &ProblemPoint) -> Result<EvalResult> {
    let rho = p.rho();
    if !(rho > 0.0) || rho > CONFLUENT_RHO_MAX {
        return Err(Error::Domain(format!(
            "confluent representation needs 0 < rho <= {CONFLUENT_RHO_MAX}, got {rho}"
        )));
    }
    let d = p.d();
    let alpha = p.alpha();
    let params = ConfluentParams::new(alpha, d)?;
    let dfact = factorial(d as u64 - 1);
    let pre = 2f64.powi(d as i32 - 1) * (-rho).exp();

    let (m, m_err) = kummer_m_with_error(params, cr(2.0 * rho))?;
    let (u, u_err) = tricomi_u_with_error(params, 2.0 * rho)?;
    let (head, head_err) = kummer_head(params, d, rho)?;
    let g = gamma(alpha)?;

    let (first, first_err, second, second_err) = if alpha.re > 0.0 {
        let (tail, tail_err) = tricomi_tail_swapped(alpha, d, rho)?;
        let gu = g * u / dfact;
        let gu_err = (g * u_err / dfact).norm() + 4.0 * EPS * gu.norm();
        (
            m * tail,
            m_err * tail.norm() + m.norm() * tail_err,
            gu * head,
            gu_err * head.norm() + gu.norm() * head_err,
        )
    } else {
        let (tail, tail_err) = tricomi_tail_direct(params, d, rho)?;
        let k = g / dfact;
        (
            k * m * tail,
            k.norm() * (m_err * tail.norm() + m.norm() * tail_err),
            k * u * head,
            k.norm() * (u_err * head.norm() + u.norm() * head_err),
        )
    };
    let value = (first + second) * pre;
    let abs_parts = (first.norm() + second.norm()) * pre;
    let err = (first_err + second_err) * pre + 16.0 * EPS * abs_parts;
    let mut r = EvalResult::new(value, err, Method::Confluent);
    r.precision_loss = abs_parts > 1e4 * value.norm();
    Ok(r)
}
