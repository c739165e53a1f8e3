//! Closed form for even `d = 2p` and `z = 0`:
//! `F = sum_{k<p} C(p-1,k) (-1)^k (2k)! rho^{-2k-1} (1 - p_{2k}(rho) e^{-rho})`,
//! where `p_j` is the degree-j partial sum of the exponential series.

use super::{EvalResult, Method};
use crate::error::{Error, Result};
use crate::numeric::{binomial, factorial, ComplexSum, NeumaierSum, C64, EPS};

/// `1 - p_j(rho) e^{-rho} = e^{-rho} sum_{l > j} rho^l / l!`.
///
/// Below `rho ~ 2j` the tail series is summed directly (all terms positive);
/// above it the subtraction is harmless.
pub fn partial_exp_tail(j: u32, rho: f64) -> f64 {
    if rho <= 0.0 {
        return 0.0;
    }
    let jf = j as f64;
    if rho > 2.0 * jf + 20.0 {
        let mut p = NeumaierSum::default();
        let mut t = 1.0;
        for l in 0..=j {
            p.add(t);
            t *= rho / (l as f64 + 1.0);
        }
        return 1.0 - p.value() * (-rho).exp();
    }
    // first term e^-rho rho^{j+1} / (j+1)! in log form
    let ln_first = (jf + 1.0) * rho.ln() - rho - (1..=j + 1).map(|l| (l as f64).ln()).sum::<f64>();
    let mut t = ln_first.exp();
    let mut s = NeumaierSum::default();
    let mut l = jf + 1.0;
    loop {
        s.add(t);
        t *= rho / (l + 1.0);
        l += 1.0;
        if t <= 0.25 * EPS * s.value() || t == 0.0 {
            s.add(t);
            return s.value();
        }
    }
}

/// `int_0^rho v^n e^{-v} dv = n! (1 - p_n(rho) e^{-rho})`, evaluated through
/// the positive tail series.
pub fn incomplete_exponential_integral(n: u32, rho: f64) -> f64 {
    factorial(n as u64) * partial_exp_tail(n, rho)
}

/// Elementary formula for even `d`, `z = 0`, `rho > 0`.
pub fn eval_elementary_even(d: u32, rho: f64) -> Result<EvalResult> {
    if d == 0 || d % 2 != 0 {
        return Err(Error::Domain(format!("elementary formula needs even d, got {d}")));
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::Domain(format!("elementary formula needs rho > 0, got {rho}")));
    }
    let p = d / 2;
    let mut sum = ComplexSum::default();
    let mut abs_sum = 0.0;
    for k in 0..p {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let mag = binomial((p - 1) as u64, k as u64)
            * factorial(2 * k as u64)
            * rho.powi(-(2 * k as i32) - 1)
            * partial_exp_tail(2 * k, rho);
        sum.add(C64::from(sign * mag));
        abs_sum += mag;
    }
    let value = sum.value();
    let mut r = EvalResult::new(value, 8.0 * EPS * abs_sum, Method::ElementaryEven);
    r.precision_loss = abs_sum > 1e4 * value.norm();
    Ok(r)
}
