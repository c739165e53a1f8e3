//! Representation at `z = 0` through modified Bessel functions of order
//! `m = (d - 1)/2`:
//!
//! `F = rho^{-m} [ K_m(rho) int_0^rho eta^m I_m(eta) d eta + I_m(rho) int_rho^inf eta^m K_m(eta) d eta ]`.

use super::{EvalResult, Method};
use crate::error::{Error, Result};
use crate::numeric::{cr, EPS};
use crate::quad::{integrate, integrate_to_infinity, PanelMarch, Tolerance};
use crate::specfun::{bessel_i_with_error, bessel_k_with_error, BesselOrder};

const TOL: Tolerance = Tolerance::relative(1e-13);

/// Largest rho accepted; `I_m(rho)` overflows shortly after.
pub const BESSEL_RHO_MAX: f64 = 600.0;

/// `F_{d,0}(rho)` for `0 < rho <= 600`.
pub fn eval_bessel_inverse(d: u32, rho: f64) -> Result<EvalResult> {
    if d == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    if !(rho > 0.0) || rho > BESSEL_RHO_MAX {
        return Err(Error::Domain(format!(
            "Bessel representation needs 0 < rho <= {BESSEL_RHO_MAX}, got {rho}"
        )));
    }
    let order = BesselOrder::for_dimension(d);
    let m = order.value();

    let mut i_rel: f64 = 0.0;
    let head = integrate(
        |eta| {
            if eta == 0.0 {
                return Ok(cr(0.0));
            }
            let (v, e) = bessel_i_with_error(order, eta)?;
            i_rel = i_rel.max(e / v.abs().max(f64::MIN_POSITIVE));
            Ok(cr(eta.powf(m) * v))
        },
        0.0,
        rho,
        &[],
        TOL,
    )?;

    let mut k_rel: f64 = 0.0;
    let tail = integrate_to_infinity(
        |eta| {
            let (v, e) = bessel_k_with_error(order, eta)?;
            k_rel = k_rel.max(e / v.abs().max(f64::MIN_POSITIVE));
            Ok(cr(eta.powf(m) * v))
        },
        PanelMarch {
            start: rho,
            width: 2.0,
            uniform_until: rho + 16.0,
        },
        TOL,
    )?;

    let (ki, ki_err) = bessel_k_with_error(order, rho)?;
    let (ii, ii_err) = bessel_i_with_error(order, rho)?;
    let scale = rho.powf(-m);
    let a = ki * head.value.re;
    let b = ii * tail.value.re;
    let value = scale * (a + b);
    let err = scale
        * (ki_err * head.value.re.abs()
            + ki.abs() * (head.error + i_rel * head.abs_integral)
            + ii_err * tail.value.re.abs()
            + ii.abs() * (tail.error + k_rel * tail.abs_integral))
        + 8.0 * EPS * scale * (a.abs() + b.abs());
    Ok(EvalResult::new(cr(value), err, Method::BesselInverse))
}
