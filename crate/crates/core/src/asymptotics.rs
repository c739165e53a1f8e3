//! Large-`rho` expansion `F ~ sum_j d_j / rho^j` from the Taylor coefficients
//! of `g(s) = (1-s)^{alpha-1} (1+s)^{beta-1}` at `s = 0` (Watson's lemma):
//! `d_{j+1} = j! g_j`.
//!
//! `g` satisfies `(1 - s^2) g' = (z - (d-2) s) g`, which gives the recurrence
//! `(j+1) g_{j+1} = z g_j + (j+1-d) g_{j-1}`.

use crate::error::{Error, Result};
use crate::numeric::{cr, C64, EPS};
use crate::specfun::gamma;
use crate::symbol::{EvalResult, Method, ProblemPoint};

/// Largest supported expansion order.
pub const MAX_ORDER: usize = 20;

/// Order used by the dispatcher and the CLI when none is given.
pub const DEFAULT_ORDER: usize = MAX_ORDER;

/// Coefficients `d_1, ..., d_n` of the large-`rho` expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticExpansion {
    /// `d_coeffs[j - 1] = d_j`.
    pub d_coeffs: Vec<C64>,
    pub d: u32,
    pub z: C64,
}

impl AsymptoticExpansion {
    /// `d_j` (1-based).
    pub fn coeff(&self, j: usize) -> C64 {
        self.d_coeffs[j - 1]
    }

    pub fn len(&self) -> usize {
        self.d_coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d_coeffs.is_empty()
    }

    /// `sum_{j <= n} d_j / rho^j` with no truncation logic.
    pub fn partial_sum(&self, rho: f64, n: usize) -> C64 {
        let mut s = C64::default();
        let mut rp = 1.0;
        for dj in self.d_coeffs.iter().take(n) {
            rp /= rho;
            s += dj * rp;
        }
        s
    }
}

fn taylor_g(d: u32, z: C64, len: usize) -> Vec<C64> {
    let mut g = Vec::with_capacity(len);
    if len > 0 {
        g.push(cr(1.0));
    }
    if len > 1 {
        g.push(z);
    }
    for j in 1..len.saturating_sub(1) {
        let next = (z * g[j] + (j as f64 + 1.0 - d as f64) * g[j - 1]) / (j as f64 + 1.0);
        g.push(next);
    }
    g
}

fn coeffs_unchecked(d: u32, z: C64, n: usize) -> Vec<C64> {
    let mut fact = 1.0;
    taylor_g(d, z, n)
        .into_iter()
        .enumerate()
        .map(|(j, gj)| {
            if j > 0 {
                fact *= j as f64;
            }
            gj * fact
        })
        .collect()
}

/// `d_1, ..., d_n`; `d_1 = 1` exactly.
pub fn asymptotic_coeffs(d: u32, z: C64, n: usize) -> Result<AsymptoticExpansion> {
    if d == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    if n > MAX_ORDER {
        return Err(Error::Domain(format!("expansion order {n} exceeds {MAX_ORDER}")));
    }
    Ok(AsymptoticExpansion {
        d_coeffs: coeffs_unchecked(d, z, n),
        d,
        z,
    })
}

/// Magnitude scale of the `s = 1` endpoint contribution, which the power
/// expansion cannot see: the envelope of its own expansion
/// `e^{-rho} sum_k |Gamma(alpha+k) C(beta-1,k)| 2^{beta-1-k} rho^{-alpha-k}`,
/// summed in full when it terminates and up to its smallest term otherwise.
/// Doubled for safety. Infinite when that expansion diverges from the start.
fn endpoint_scale(p: &ProblemPoint) -> Result<f64> {
    const MAX_ENDPOINT_TERMS: usize = 40;
    let alpha = p.alpha();
    let bm1 = p.beta() - 1.0;
    let rho = p.rho();
    let g = gamma(alpha)?;
    let mut term = (g.norm().ln() + bm1.re * std::f64::consts::LN_2 - rho - alpha.re * rho.ln()).exp();
    let mut total = term;
    for k in 0..MAX_ENDPOINT_TERMS {
        let kf = k as f64;
        let ratio = (alpha + kf).norm() * (bm1 - kf).norm() / ((kf + 1.0) * 2.0 * rho);
        if ratio == 0.0 {
            return Ok(2.0 * total);
        }
        if ratio >= 1.0 {
            if k == 0 {
                return Ok(f64::INFINITY);
            }
            // optimal truncation of the endpoint series: add the smallest term again
            return Ok(2.0 * (total + term));
        }
        term *= ratio;
        total += term;
    }
    Ok(2.0 * (total + term))
}

/// Outcome of a truncated evaluation of the expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticSum {
    pub value: C64,
    /// Number of terms summed, `J`.
    pub terms: usize,
    /// `|t_{J+1}|`, `t_j = d_j / rho^j`.
    pub first_omitted: f64,
    /// `max(|t_{J+1}|, |t_{J+2}|)`; the terms of complex-`z` expansions
    /// alternate between two magnitude envelopes, so a single term can be
    /// accidentally small.
    pub omitted_envelope: f64,
    /// Magnitude scale of the exponentially small `s = 1` endpoint contribution.
    pub endpoint: f64,
    /// `true` if the summation stopped at the smallest envelope rather than at
    /// the requested order.
    pub optimal: bool,
    last_envelope: f64,
}

impl AsymptoticSum {
    /// Error estimate: the omitted envelope plus the endpoint scale. When the
    /// order cap was hit before the minimum, the envelope is replaced by a
    /// geometric bound on the remaining pairs of terms.
    pub fn error_estimate(&self) -> f64 {
        let mut trunc = self.omitted_envelope;
        if !self.optimal {
            let r = self.omitted_envelope / self.last_envelope;
            trunc = if r < 1.0 { 2.0 * trunc / (1.0 - r) } else { 2.0 * trunc };
        }
        trunc + self.endpoint + 4.0 * EPS * self.value.norm()
    }
}

fn truncated_sum(p: &ProblemPoint, n: usize) -> Result<AsymptoticSum> {
    let rho = p.rho();
    if !(rho > 0.0) {
        return Err(Error::Domain("asymptotic expansion needs rho > 0".into()));
    }
    if n == 0 || n > MAX_ORDER {
        return Err(Error::Domain(format!("expansion order must be in 1..={MAX_ORDER}")));
    }
    let coeffs = coeffs_unchecked(p.d(), p.z(), n + 2);
    let terms: Vec<C64> = coeffs
        .iter()
        .enumerate()
        .map(|(j, dj)| dj * rho.powi(-(j as i32 + 1)))
        .collect();
    if terms[1].norm() > terms[0].norm() {
        return Err(Error::DivergentRegime { rho });
    }
    let env = |j: usize| terms[j].norm().max(terms[j + 1].norm());
    // an expansion that terminates (g a polynomial) is summed in full
    let exact = terms[n..].iter().all(|t| t.norm() == 0.0);
    let (used, optimal) = if exact {
        (n, true)
    } else {
        let mut min_j = 1;
        for j in 2..=n {
            if env(j) < env(min_j) {
                min_j = j;
            }
        }
        if env(n) <= env(min_j) {
            (n, false)
        } else {
            (min_j, true)
        }
    };
    let sum: C64 = terms[..used].iter().sum();
    let last_envelope = if used >= 2 { env(used - 2) } else { 0.0 };
    Ok(AsymptoticSum {
        value: sum,
        terms: used,
        first_omitted: terms[used].norm(),
        omitted_envelope: env(used),
        endpoint: endpoint_scale(p)?,
        optimal,
        last_envelope,
    })
}

/// Optimally truncated expansion using at most `n` terms, with its truncation
/// diagnostics.
///
/// The sum stops just before the smallest two-term envelope
/// `max(|t_j|, |t_{j+1}|)`, `j <= n`.
pub fn asymptotic_sum(p: &ProblemPoint, n: usize) -> Result<AsymptoticSum> {
    truncated_sum(p, n)
}

/// Optimally truncated expansion as an [`EvalResult`]; see [`AsymptoticSum::error_estimate`].
pub fn eval_asymptotic(p: &ProblemPoint, n: usize) -> Result<EvalResult> {
    let s = truncated_sum(p, n)?;
    let err = s.error_estimate();
    let mut r = EvalResult::new(s.value, err, Method::Asymptotic);
    r.in_validity_domain = err <= 1e-8 * s.value.norm();
    Ok(r)
}
