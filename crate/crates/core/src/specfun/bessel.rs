//! Modified Bessel functions of half-integer order through their confluent
//! representations
//! `I_m(x) = (x/2)^m e^-x / Gamma(1+m) M(m+1/2, 2m+1; 2x)` and
//! `K_m(x) = sqrt(pi) (2x)^m e^-x U(m+1/2, 2m+1; 2x)`.

use super::confluent::{kummer_m_with_error, tricomi_u_with_error, ConfluentParams};
use super::gamma::gamma_real;
use crate::error::{Error, Result};
use crate::numeric::cr;

/// Order `m >= 0` stored as the integer `2m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BesselOrder {
    pub twice: u32,
}

impl BesselOrder {
    pub fn from_twice(twice: u32) -> Self {
        BesselOrder { twice }
    }

    /// `m = (d - 1) / 2` for dimension `d >= 1`.
    pub fn for_dimension(d: u32) -> Self {
        assert!(d >= 1, "dimension must be positive");
        BesselOrder { twice: d - 1 }
    }

    pub fn value(&self) -> f64 {
        self.twice as f64 / 2.0
    }

    fn confluent(&self) -> ConfluentParams {
        ConfluentParams {
            a: cr(self.value() + 0.5),
            c: self.twice + 1,
        }
    }
}

fn check(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("Bessel argument must be positive, got {x}")))
    }
}

/// `I_m(x)` with an absolute error estimate.
pub fn bessel_i_with_error(m: BesselOrder, x: f64) -> Result<(f64, f64)> {
    check(x)?;
    let mu = m.value();
    let (v, e) = kummer_m_with_error(m.confluent(), cr(2.0 * x))?;
    let pre = ((0.5 * x).ln() * mu - x).exp() / gamma_real(1.0 + mu)?;
    Ok((pre * v.re, pre * e))
}

/// `K_m(x)` with an absolute error estimate.
pub fn bessel_k_with_error(m: BesselOrder, x: f64) -> Result<(f64, f64)> {
    check(x)?;
    let mu = m.value();
    let (v, e) = tricomi_u_with_error(m.confluent(), 2.0 * x)?;
    let pre = std::f64::consts::PI.sqrt() * ((2.0 * x).ln() * mu - x).exp();
    Ok((pre * v.re, pre * e))
}

/// Modified Bessel function of the first kind.
pub fn bessel_i(m: BesselOrder, x: f64) -> Result<f64> {
    bessel_i_with_error(m, x).map(|r| r.0)
}

/// MacDonald function (modified Bessel function of the second kind).
pub fn bessel_k(m: BesselOrder, x: f64) -> Result<f64> {
    bessel_k_with_error(m, x).map(|r| r.0)
}
