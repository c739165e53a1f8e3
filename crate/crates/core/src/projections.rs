//! Weyl symbols of the spectral projections `P_n` onto the eigenspaces
//! `E_n = d + 2n`, and their relation to the poles of `F_{d,z}`.

use crate::error::{Error, Result};
use crate::numeric::{binomial, cr, factorial, ComplexSum, C64};
use crate::specfun::laguerre;
use crate::symbol::{eigenvalue, eval_series, ProblemPoint, DEFAULT_MAX_TERMS};

/// Level `n` of the `d`-dimensional oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjectionIndex {
    pub n: u32,
    pub d: u32,
}

impl ProjectionIndex {
    pub fn new(d: u32, n: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        Ok(ProjectionIndex { n, d })
    }

    /// `E_n = d + 2n`.
    pub fn eigenvalue(&self) -> f64 {
        eigenvalue(self.d, self.n)
    }

    /// `g_n = C(n + d - 1, d - 1)`.
    pub fn multiplicity(&self) -> f64 {
        binomial((self.n + self.d - 1) as u64, (self.d - 1) as u64)
    }
}

/// `p_n(rho) = 2^d (-1)^n e^{-rho} L_n^{d-1}(2 rho)`.
pub fn projection_symbol(idx: ProjectionIndex, rho: f64) -> f64 {
    let sign = if idx.n % 2 == 0 { 1.0 } else { -1.0 };
    let l = laguerre(idx.n, (idx.d - 1) as f64, 2.0 * rho);
    sign * 2f64.powi(idx.d as i32) * (-rho).exp() * l
}

/// `-Res_{z = E_n} Gamma((d - z)/2) = (-1)^n 2 / n!`.
pub fn gamma_residue_factor(n: u32) -> f64 {
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    sign * 2.0 / factorial(n as u64)
}

/// Extrapolated limit of `(E_n - z) F_{d,z}(rho)` as `z -> E_n` from below.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueLimit {
    /// Richardson value `2 f(eps/2) - f(eps)`.
    pub value: C64,
    /// `f(eps)`.
    pub coarse: C64,
    /// `f(eps/2)`.
    pub fine: C64,
}

impl ResidueLimit {
    /// Size of the extrapolation correction, `|value - fine|`.
    pub fn extrapolation_error(&self) -> f64 {
        (self.value - self.fine).norm()
    }
}

/// `(E_n - z) F_{d,z}(rho)` at `z = E_n - eps` and `E_n - eps/2` by the power
/// series, extrapolated to `eps = 0`. Converges to `p_n(rho)`.
pub fn residue_limit(idx: ProjectionIndex, rho: f64, eps: f64) -> Result<ResidueLimit> {
    if !(eps > 0.0 && eps <= 0.1) {
        return Err(Error::Domain(format!("eps must lie in (0, 0.1], got {eps}")));
    }
    let e = idx.eigenvalue();
    let f = |h: f64| -> Result<C64> {
        let p = ProblemPoint::new(idx.d, cr(e - h), rho)?;
        Ok(eval_series(&p, DEFAULT_MAX_TERMS)?.value * h)
    };
    let coarse = f(eps)?;
    let fine = f(0.5 * eps)?;
    Ok(ResidueLimit {
        value: fine * 2.0 - coarse,
        coarse,
        fine,
    })
}

/// Number of repeated averaging passes applied to the partial sums.
pub const AVERAGING_PASSES: usize = 40;

/// Partial sums of the spectral expansion `F_{d,z}(rho) = sum_n p_n(rho) / (E_n - z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSum {
    /// `sum_{n <= N}`.
    pub raw: C64,
    /// Value after repeated averaging of consecutive partial sums (the Euler
    /// transform for the alternating tail).
    pub averaged: C64,
    /// Change produced by the last averaging pass.
    pub last_change: f64,
}

/// Spectral expansion truncated at `N` (at most 200), summed with
/// compensation and accelerated by repeated averaging.
pub fn spectral_sum(d: u32, z: C64, rho: f64, max_n: u32) -> Result<SpectralSum> {
    if max_n > 200 {
        return Err(Error::Domain(format!("spectral sum capped at N = 200, got {max_n}")));
    }
    if !(0.0..=10.0).contains(&rho) {
        return Err(Error::Domain(format!("spectral sum needs 0 <= rho <= 10, got {rho}")));
    }
    ProblemPoint::new(d, z, rho)?;
    let mut acc = ComplexSum::default();
    let mut partial = Vec::with_capacity(max_n as usize + 1);
    for n in 0..=max_n {
        let idx = ProjectionIndex::new(d, n)?;
        acc.add(projection_symbol(idx, rho) / (idx.eigenvalue() - z));
        partial.push(acc.value());
    }
    let raw = acc.value();
    let mut last_change = 0.0;
    for _ in 0..AVERAGING_PASSES.min(partial.len() - 1) {
        let before = *partial.last().unwrap();
        partial = partial.windows(2).map(|w| (w[0] + w[1]) * 0.5).collect();
        last_change = (partial.last().unwrap() - before).norm();
    }
    Ok(SpectralSum {
        raw,
        averaged: *partial.last().unwrap(),
        last_change,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;
    use crate::specfun::gamma;
    use crate::symbol::eval_quadrature;

    fn idx(d: u32, n: u32) -> ProjectionIndex {
        ProjectionIndex::new(d, n).unwrap()
    }

    #[test]
    fn symbol_values() {
        for &rho in &[0.0, 0.3, 2.0] {
            assert!((projection_symbol(idx(1, 0), rho) - 2.0 * (-rho).exp()).abs() < 1e-15);
        }
        assert_eq!(projection_symbol(idx(1, 1), 0.5), 0.0);
        // p_n(0) = 2^d (-1)^n C(n+d-1, n)
        for d in 1..5 {
            for n in 0..8 {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let expect = sign * 2f64.powi(d as i32) * binomial((n + d - 1) as u64, n as u64);
                assert_eq!(projection_symbol(idx(d, n), 0.0), expect);
            }
        }
    }

    #[test]
    fn levels() {
        let i = idx(3, 2);
        assert_eq!(i.eigenvalue(), 7.0);
        assert_eq!(i.multiplicity(), 6.0);
        assert_eq!(idx(2, 3).multiplicity(), 4.0);
        assert_eq!(idx(1, 9).multiplicity(), 1.0);
    }

    #[test]
    fn gamma_residue() {
        assert_eq!(gamma_residue_factor(2), 1.0);
        // numerical check: -(z - E_n) Gamma((d-z)/2) near z = E_n
        for n in 0..5u32 {
            let d = 3.0;
            let e = d + 2.0 * n as f64;
            let h = 1e-7;
            let z = e - h;
            let g = gamma(cr((d - z) / 2.0)).unwrap();
            let r = (g * h).re;
            assert!((r - gamma_residue_factor(n)).abs() < 1e-6 * r.abs().max(1.0), "n={n}");
        }
    }

    #[test]
    fn residue_examples() {
        let r = residue_limit(idx(1, 0), 1.0, 1e-3).unwrap();
        assert!((r.value.re - 2.0 * (-1.0f64).exp()).abs() < 1e-6, "{r:?}");
        assert!(r.extrapolation_error() < 1e-3);
        let r = residue_limit(idx(2, 1), 0.5, 1e-3).unwrap();
        let expect = -4.0 * (-0.5f64).exp();
        assert!((r.value.re - expect).abs() < 1e-6 && (projection_symbol(idx(2, 1), 0.5) - expect).abs() < 1e-15);
    }

    #[test]
    fn residue_rejects_bad_eps() {
        assert!(residue_limit(idx(1, 0), 1.0, 0.0).is_err());
        assert!(residue_limit(idx(1, 0), 1.0, 0.2).is_err());
    }

    #[test]
    fn spectral_expansion_reproduces_f() {
        for &(d, z, rho) in &[(1, cr(-1.0), 1.0), (2, cr(0.0), 5.0), (3, c(0.0, 0.9), 2.0), (1, cr(-1.0), 10.0)] {
            let s = spectral_sum(d, z, rho, 200).unwrap();
            let f = eval_quadrature(&ProblemPoint::new(d, z, rho).unwrap()).unwrap().value;
            assert!((s.averaged - f).norm() < 1e-10, "d={d} z={z} rho={rho}: {s:?} vs {f}");
        }
    }
}
