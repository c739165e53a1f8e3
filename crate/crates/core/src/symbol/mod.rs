//! Evaluators for the radial profile `F_{d,z}(rho)`.
//!
//! Every evaluator returns an [`EvalResult`] carrying its own a posteriori
//! error estimate, so that results from different representations can be
//! compared at a point.

mod bessel;
mod confluent;
mod elementary;
mod quadrature;
mod series;

pub use bessel::eval_bessel_inverse;
pub use bessel::BESSEL_RHO_MAX;
pub use confluent::{eval_confluent, CONFLUENT_RHO_MAX};
pub use elementary::{eval_elementary_even, incomplete_exponential_integral, partial_exp_tail};
pub use quadrature::{eval_quadrature, laplace_moment};
pub use series::{
    coeff_ck, eval_series, eval_series_derivative, series_expansion, SeriesExpansion,
    DEFAULT_MAX_TERMS,
};

use crate::asymptotics::eval_asymptotic;
use crate::error::{Error, Result};
use crate::numeric::{C64, EPS};
use std::fmt;
use std::str::FromStr;

/// Distance below which `z` is treated as lying on the spectrum `{d + 2n}`.
pub const SPECTRUM_GUARD: f64 = 1e-10;

/// `rho` at or below which the dispatcher prefers the power series, above
/// which it prefers the closed form or quadrature.
pub fn series_crossover(d: u32) -> f64 {
    8.0f64.max(d as f64)
}

/// One evaluation point `(d, z, rho)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemPoint {
    d: u32,
    z: C64,
    rho: f64,
}

impl ProblemPoint {
    /// Validates the point. `z` within [`SPECTRUM_GUARD`] of an eigenvalue
    /// `d + 2n` is rejected with [`Error::Pole`].
    pub fn new(d: u32, z: C64, rho: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite spectral parameter {z}")));
        }
        if !(rho.is_finite() && rho >= 0.0) {
            return Err(Error::Domain(format!("rho must be finite and >= 0, got {rho}")));
        }
        if let Some(n) = nearest_level(d, z) {
            return Err(Error::Pole {
                function: "F_{d,z}",
                at: eigenvalue(d, n),
                residue_sign: -1,
            });
        }
        Ok(ProblemPoint { d, z, rho })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn z(&self) -> C64 {
        self.z
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn with_rho(&self, rho: f64) -> Result<Self> {
        ProblemPoint::new(self.d, self.z, rho)
    }

    /// `(d - z) / 2`, the first confluent parameter.
    pub fn alpha(&self) -> C64 {
        (self.d as f64 - self.z) * 0.5
    }

    /// `(d + z) / 2`.
    pub fn beta(&self) -> C64 {
        (self.d as f64 + self.z) * 0.5
    }
}

/// Eigenvalue `E_n = d + 2n`.
pub fn eigenvalue(d: u32, n: u32) -> f64 {
    d as f64 + 2.0 * n as f64
}

/// Level `n` whose eigenvalue lies within the guard distance of `z`, if any.
fn nearest_level(d: u32, z: C64) -> Option<u32> {
    let n = ((z.re - d as f64) / 2.0).round();
    if n < 0.0 {
        return None;
    }
    let e = d as f64 + 2.0 * n;
    ((z - e).norm() < SPECTRUM_GUARD).then_some(n as u32)
}

/// Representation used to produce a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Quadrature,
    Series,
    Confluent,
    BesselInverse,
    ElementaryEven,
    Asymptotic,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Quadrature,
        Method::Series,
        Method::Confluent,
        Method::BesselInverse,
        Method::ElementaryEven,
        Method::Asymptotic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::Series => "series",
            Method::Confluent => "confluent",
            Method::BesselInverse => "bessel",
            Method::ElementaryEven => "elementary",
            Method::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown method '{s}'")))
    }
}

/// Method selection for [`eval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    #[default]
    Auto,
    Explicit(Method),
}

/// A value of `F_{d,z}(rho)` (or of one of its derivatives) together with an
/// absolute error estimate and the method that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: C64,
    pub abs_error_estimate: f64,
    pub method: Method,
    /// `false` when the method ran outside the region where its result can be
    /// trusted (e.g. a series whose rounding error swamps the value).
    pub in_validity_domain: bool,
    /// Set when the evaluation suffered significant cancellation.
    pub precision_loss: bool,
}

impl EvalResult {
    pub(crate) fn new(value: C64, err: f64, method: Method) -> Self {
        EvalResult {
            value,
            abs_error_estimate: err.max(2.0 * EPS * value.norm()),
            method,
            in_validity_domain: true,
            precision_loss: false,
        }
    }

    pub fn relative_error_estimate(&self) -> f64 {
        self.abs_error_estimate / self.value.norm().max(f64::MIN_POSITIVE)
    }
}

fn applicable(p: &ProblemPoint, m: Method) -> bool {
    let z_zero = p.z == C64::default();
    match m {
        Method::Quadrature => p.z.re < p.d as f64,
        Method::Series => p.rho <= series_crossover(p.d),
        Method::Confluent => p.rho > 0.0,
        Method::BesselInverse => z_zero && p.rho > 0.0,
        Method::ElementaryEven => z_zero && p.d % 2 == 0 && p.rho > 0.0,
        Method::Asymptotic => p.rho > 0.0,
    }
}

/// Evaluates `p` with one explicit method.
pub fn eval_with(p: &ProblemPoint, m: Method) -> Result<EvalResult> {
    match m {
        Method::Quadrature => eval_quadrature(p),
        Method::Series => eval_series(p, DEFAULT_MAX_TERMS),
        Method::Confluent => eval_confluent(p),
        Method::BesselInverse => {
            if p.z != C64::default() {
                return Err(Error::Domain("the Bessel representation needs z = 0".into()));
            }
            eval_bessel_inverse(p.d, p.rho)
        }
        Method::ElementaryEven => {
            if p.z != C64::default() {
                return Err(Error::Domain("the elementary formula needs z = 0".into()));
            }
            eval_elementary_even(p.d, p.rho)
        }
        Method::Asymptotic => eval_asymptotic(p, crate::asymptotics::DEFAULT_ORDER),
    }
}

/// Evaluates `F_{d,z}(rho)`.
///
/// In auto mode the order of preference is: the elementary closed form (even
/// `d`, `z = 0`, `rho` above [`series_crossover`]), quadrature (`Re z < d`),
/// the power series (`rho` up to the crossover), then the confluent
/// representation. A method whose precondition fails falls through to the
/// next one.
pub fn eval(p: &ProblemPoint, choice: MethodChoice) -> Result<EvalResult> {
    match choice {
        MethodChoice::Explicit(m) => eval_with(p, m),
        MethodChoice::Auto => {
            let z_zero = p.z == C64::default();
            let mut order = Vec::with_capacity(4);
            if z_zero && p.d % 2 == 0 && p.rho >= series_crossover(p.d) {
                order.push(Method::ElementaryEven);
            }
            order.extend([Method::Quadrature, Method::Series, Method::Confluent]);
            let mut last_err = None;
            for m in order {
                if !applicable(p, m) {
                    continue;
                }
                match eval_with(p, m) {
                    Ok(r) => return Ok(r),
                    Err(e) => last_err = Some(e),
                }
            }
            Err(Error::NoValidMethod(match last_err {
                Some(e) => format!("every applicable method failed; last error: {e}"),
                None => format!("no method applies at d={}, z={}, rho={}", p.d, p.z, p.rho),
            }))
        }
    }
}

/// Methods whose preconditions hold at `p` (the candidates for cross-checks).
pub fn applicable_methods(p: &ProblemPoint) -> Vec<Method> {
    Method::ALL
        .iter()
        .copied()
        .filter(|m| match m {
            // the series is tried everywhere; its own error estimate decides
            Method::Series => true,
            _ => applicable(p, *m),
        })
        .collect()
}
