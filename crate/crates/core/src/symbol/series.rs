//! Taylor expansion of the entire function `F_{d,z}` at `rho = 0`.
//!
//! The k-th Taylor coefficient (`k`-th derivative at zero) is
//! `c_k = (-1)^k Gamma(k+1) Gamma(alpha) / Gamma(k+1+alpha)
//!        * 2F1(1 - beta, k+1; k+1+alpha; -1)`,
//! with `alpha = (d-z)/2`, `beta = (d+z)/2`. The Gamma ratio is built by a
//! running product so that large `k` never overflows.

use super::{EvalResult, Method, ProblemPoint};
use crate::error::{Error, Result};
use crate::numeric::{cr, ComplexSum, C64, EPS, TERM_BUDGET};
use crate::specfun::gauss_2f1_minus1_with_error;

/// Default cap on the number of series terms used by [`eval_series`].
pub const DEFAULT_MAX_TERMS: usize = 2000;

/// Relative error-estimate level above which a series value is flagged as
/// outside its validity domain.
const VALIDITY_REL: f64 = 1e-8;

/// Coefficients `c_0..=c_K` of the expansion `F = sum_k c_k rho^k / k!`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesExpansion {
    pub coefficients: Vec<C64>,
    /// Absolute error estimate of each coefficient.
    pub coefficient_errors: Vec<f64>,
    pub d: u32,
    pub z: C64,
    pub truncation_k: usize,
    /// Bound on `sup_{k > K} |c_k|` used for the truncation tail.
    pub tail_bound: f64,
}

fn check_pole(d: u32, z: C64) -> Result<C64> {
    let alpha = (d as f64 - z) * 0.5;
    if alpha.im == 0.0 && alpha.re <= 0.0 && alpha.re.fract() == 0.0 {
        return Err(Error::Pole {
            function: "c_k",
            at: z.re,
            residue_sign: -1,
        });
    }
    Ok(alpha)
}

/// Generates `(c_k, err_k)` for `k = 0, 1, ...`.
struct CoefficientStream {
    alpha: C64,
    one_minus_beta: C64,
    ratio: C64,
    k: usize,
}

impl CoefficientStream {
    fn new(d: u32, z: C64) -> Result<Self> {
        let alpha = check_pole(d, z)?;
        let beta = (d as f64 + z) * 0.5;
        Ok(CoefficientStream {
            alpha,
            one_minus_beta: 1.0 - beta,
            ratio: 1.0 / alpha,
            k: 0,
        })
    }

    fn next(&mut self) -> Result<(C64, f64)> {
        let k = self.k as f64;
        if self.k > 0 {
            self.ratio *= k / (k + self.alpha);
        }
        let (f, fe) =
            gauss_2f1_minus1_with_error(self.one_minus_beta, cr(k + 1.0), k + 1.0 + self.alpha)?;
        let sign = if self.k % 2 == 0 { 1.0 } else { -1.0 };
        self.k += 1;
        let v = self.ratio * f * sign;
        Ok((v, self.ratio.norm() * fe + 4.0 * EPS * v.norm() * (k + 1.0)))
    }
}

/// The Taylor coefficient `c_k = F^{(k)}(0)`.
pub fn coeff_ck(d: u32, z: C64, k: usize) -> Result<C64> {
    let alpha = check_pole(d, z)?;
    let beta = (d as f64 + z) * 0.5;
    let mut ratio = 1.0 / alpha;
    for j in 1..=k {
        ratio *= j as f64 / (j as f64 + alpha);
    }
    let f = gauss_2f1_minus1_with_error(1.0 - beta, cr(k as f64 + 1.0), k as f64 + 1.0 + alpha)?.0;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    Ok(ratio * f * sign)
}

/// Coefficients `c_0..=c_K`.
pub fn series_expansion(d: u32, z: C64, k_max: usize) -> Result<SeriesExpansion> {
    let mut stream = CoefficientStream::new(d, z)?;
    let mut coefficients = Vec::with_capacity(k_max + 1);
    let mut coefficient_errors = Vec::with_capacity(k_max + 1);
    for _ in 0..=k_max {
        let (v, e) = stream.next()?;
        coefficients.push(v);
        coefficient_errors.push(e);
    }
    let tail_bound = 2.0
        * coefficients
            .iter()
            .rev()
            .take(3)
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    Ok(SeriesExpansion {
        coefficients,
        coefficient_errors,
        d,
        z,
        truncation_k: k_max,
        tail_bound,
    })
}

impl SeriesExpansion {
    /// `sum_k c_{k+n} rho^k / k!` over the stored coefficients.
    pub fn evaluate_derivative(&self, rho: f64, n: usize) -> C64 {
        let mut sum = ComplexSum::default();
        let mut w = 1.0;
        for (k, c) in self.coefficients.iter().skip(n).enumerate() {
            sum.add(c * w);
            w *= rho / (k as f64 + 1.0);
        }
        sum.value()
    }
}

/// `sum_{k > K} x^k / k!` bound, valid for `x < K + 2`.
fn exp_tail(x: f64, k_last: usize) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let k1 = k_last as f64 + 1.0;
    let lead = (k1 * x.ln() - ln_factorial(k_last + 1)).exp();
    let q = x / (k1 + 1.0);
    if q < 1.0 {
        lead / (1.0 - q)
    } else {
        f64::INFINITY
    }
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|j| (j as f64).ln()).sum()
}

fn sum_series(p: &ProblemPoint, n: usize, max_terms: usize) -> Result<EvalResult> {
    let budget = max_terms.min(TERM_BUDGET);
    let mut stream = CoefficientStream::new(p.d(), p.z())?;
    for _ in 0..n {
        stream.next()?;
    }
    let rho = p.rho();
    let mut sum = ComplexSum::default();
    let mut abs_sum = 0.0;
    let mut coef_err = 0.0;
    let mut quiet = 0;
    let mut w = 1.0;
    let mut recent = [0.0f64; 3];
    for k in 0..budget {
        let (c, ce) = stream.next()?;
        let t = c * w;
        sum.add(t);
        abs_sum += t.norm();
        coef_err += ce * w;
        recent[k % 3] = c.norm();
        if t.norm() <= 0.5 * EPS * sum.value().norm() {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= 3 || (rho == 0.0 && k >= 2) {
            let value = sum.value();
            let tail = 2.0 * recent.iter().cloned().fold(0.0, f64::max) * exp_tail(rho, k);
            let err = tail + coef_err + 4.0 * EPS * abs_sum;
            let mut r = EvalResult::new(value, err, Method::Series);
            r.in_validity_domain = r.abs_error_estimate <= VALIDITY_REL * value.norm();
            r.precision_loss = abs_sum > 1e4 * value.norm();
            return Ok(r);
        }
        w *= rho / (k as f64 + 1.0);
    }
    Err(Error::NonConvergence {
        what: "Taylor series of F",
        budget,
    })
}

/// Power series evaluation with at most `max_terms` terms.
pub fn eval_series(p: &ProblemPoint, max_terms: usize) -> Result<EvalResult> {
    sum_series(p, 0, max_terms)
}

/// n-th rho-derivative by termwise differentiation: `sum_k c_{k+n} rho^k / k!`.
pub fn eval_series_derivative(p: &ProblemPoint, n: usize, max_terms: usize) -> Result<EvalResult> {
    sum_series(p, n, max_terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{c, factorial};
    use crate::quad::{integrate, Tolerance};
    use std::f64::consts::PI;

    #[test]
    fn z_zero_values() {
        assert!((coeff_ck(2, cr(0.0), 0).unwrap() - cr(1.0)).norm() < 1e-15);
        assert!((coeff_ck(2, cr(0.0), 1).unwrap() - cr(-0.5)).norm() < 1e-15);
        assert!((coeff_ck(1, cr(0.0), 2).unwrap() - cr(PI / 4.0)).norm() < 1e-15);
    }

    #[test]
    fn d2_coefficients_match_exponential_taylor() {
        // (1 - e^-rho)/rho = sum (-1)^k rho^k / (k+1)!  =>  c_k = (-1)^k / (k+1)
        let s = series_expansion(2, cr(0.0), 10).unwrap();
        for (k, ck) in s.coefficients.iter().enumerate() {
            let expect = if k % 2 == 0 { 1.0 } else { -1.0 } / (k as f64 + 1.0);
            assert!((ck.re - expect).abs() < 1e-15, "k={k}");
            assert!(((ck.re / factorial(k as u64)) - expect / factorial(k as u64)).abs() < 1e-15);
        }
    }

    #[test]
    fn hypergeometric_form_matches_euler_integral() {
        // (d, z, k) = (3, 1, 2): c_2 = int_0^1 (1-s)^0 (1+s)^1 s^2 ds = 1/3 + 1/4
        let v = coeff_ck(3, cr(1.0), 2).unwrap();
        let oracle = integrate(
            |s: f64| Ok(cr((1.0 + s) * s * s)),
            0.0,
            1.0,
            &[],
            Tolerance::default(),
        )
        .unwrap()
        .value;
        assert!((v - oracle).norm() < 1e-14);
        assert!((v.re - 7.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn double_factorial_coefficients_at_z_zero() {
        // c_{2k} = (d!!/d) a (2k-1)!!/(2k+d-1)!!, a = pi/2 (odd d) or 1 (even d),
        // c_{2k+1} = -(d!!/d) (2k)!!/(2k+d)!!
        let df = |n: i64| -> f64 { (1..=n).rev().step_by(2).map(|x| x as f64).product() };
        for d in [1u32, 2, 3, 4, 5, 6, 7] {
            let s = series_expansion(d, cr(0.0), 9).unwrap();
            let alpha = if d % 2 == 1 { PI / 2.0 } else { 1.0 };
            let dd = d as i64;
            for k in 0..5i64 {
                let even = (df(dd) / dd as f64) * alpha * df(2 * k - 1) / df(2 * k + dd - 1);
                let odd = -(df(dd) / dd as f64) * df(2 * k) / df(2 * k + dd);
                assert!((s.coefficients[2 * k as usize].re - even).abs() < 1e-14, "d={d} k={k}");
                assert!((s.coefficients[2 * k as usize + 1].re - odd).abs() < 1e-14, "d={d} k={k}");
            }
        }
    }

    #[test]
    fn series_reproduces_closed_form() {
        let p = ProblemPoint::new(2, cr(0.0), 1.0).unwrap();
        let r = eval_series(&p, DEFAULT_MAX_TERMS).unwrap();
        assert!((r.value.re - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        assert!(r.abs_error_estimate < 1e-10);
        assert!(r.in_validity_domain);
    }

    #[test]
    fn large_rho_is_flagged() {
        let p = ProblemPoint::new(2, cr(0.0), 100.0).unwrap();
        let r = eval_series(&p, DEFAULT_MAX_TERMS).unwrap();
        assert!(!r.in_validity_domain);
    }

    #[test]
    fn budget_exhaustion() {
        let p = ProblemPoint::new(2, cr(0.0), 50.0).unwrap();
        assert!(matches!(eval_series(&p, 10), Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn pole_at_spectrum() {
        assert!(matches!(coeff_ck(1, cr(3.0), 2), Err(Error::Pole { .. })));
        // away from the pole the coefficient is finite even for Re z > d
        assert!(coeff_ck(1, c(3.0, 0.1), 0).unwrap().norm().is_finite());
    }
}
