//! Phase-space trace pairing of radial symbols with the projection symbols:
//!
//! `<G, p_n> = 1/(2^d (d-1)!) int_0^inf G(rho) p_n(rho) rho^{d-1} d rho`,
//!
//! which equals `Tr(Op(G) P_n)`. For `G = F_{d,z}` it must give
//! `g_n / (E_n - z)`, and for the heat-kernel symbol of `e^{-tH}` it must give
//! `g_n e^{-t E_n}`.

use crate::error::{Error, Result};
use crate::numeric::{cr, factorial, C64, EPS};
use crate::projections::{projection_symbol, ProjectionIndex};
use crate::quad::{integrate_to_infinity, integrate_to_infinity_multi, PanelMarch, Tolerance};
use crate::symbol::{eval, eval_with, Method, MethodChoice, ProblemPoint};
use crate::verify::{Check, MethodReport, MethodValue, PointValues};
use rayon::prelude::*;

/// Decay of a radial symbol at large `rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayClass {
    /// Faster than any power.
    Exponential,
    /// `|G(rho)| ~ rho^{-p}`.
    Power(f64),
}

type SymbolFn<'a> = dyn Fn(f64) -> Result<C64> + Send + Sync + 'a;

/// A function of `rho >= 0` with a declared decay class.
pub struct RadialSymbol<'a> {
    f: Box<SymbolFn<'a>>,
    pub decay: DecayClass,
}

impl<'a> RadialSymbol<'a> {
    pub fn new<F>(f: F, decay: DecayClass) -> Self
    where
        F: Fn(f64) -> Result<C64> + Send + Sync + 'a,
    {
        RadialSymbol {
            f: Box::new(f),
            decay,
        }
    }

    pub fn eval(&self, rho: f64) -> Result<C64> {
        (self.f)(rho)
    }

    /// `F_{d,z}` evaluated with the given method choice.
    pub fn resolvent(d: u32, z: C64, choice: MethodChoice) -> Result<RadialSymbol<'static>> {
        ProblemPoint::new(d, z, 0.0)?;
        Ok(RadialSymbol::new(
            move |rho| Ok(eval(&ProblemPoint::new(d, z, rho)?, choice)?.value),
            DecayClass::Power(1.0),
        ))
    }

    /// Weyl symbol of `e^{-tH}`: `(cosh t)^{-d} e^{-rho tanh t}`. Declared
    /// exponential unless `t` is so small that only boundedness is visible
    /// on the sampled range.
    pub fn heat_kernel(d: u32, t: f64) -> RadialSymbol<'static> {
        let decay = if 50.0 * t.tanh() >= 4f64.ln() {
            DecayClass::Exponential
        } else {
            DecayClass::Power(0.0)
        };
        RadialSymbol::new(move |rho| Ok(cr(heat_symbol(d, t, rho))), decay)
    }

    /// Samples the symbol at `rho = 50, 100, 200` and checks the declared
    /// decay: `|G(2r)| <= |G(r)|/4` for the exponential class, and
    /// `|G(r)| r^p` at most 10 times its value at 50 for the power class.
    pub fn check_decay(&self) -> Result<()> {
        let r = [50.0, 100.0, 200.0];
        let v: Vec<f64> = r.iter().map(|&x| self.eval(x).map(|g| g.norm())).collect::<Result<_>>()?;
        let ok = match self.decay {
            DecayClass::Exponential => v[1] <= 0.25 * v[0] && v[2] <= 0.25 * v[1],
            DecayClass::Power(p) => {
                let base = v[0] * r[0].powf(p);
                (1..3).all(|i| v[i] * r[i].powf(p) <= 10.0 * base)
            }
        };
        if ok && v.iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::DecayViolation(format!(
                "declared {:?}, sampled |G| = {:?} at rho = {:?}",
                self.decay, v, r
            )))
        }
    }
}

impl std::fmt::Debug for RadialSymbol<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialSymbol").field("decay", &self.decay).finish_non_exhaustive()
    }
}

/// `(cosh t)^{-d} e^{-rho tanh t}`.
pub fn heat_symbol(d: u32, t: f64, rho: f64) -> f64 {
    (-(d as f64) * log_cosh(t) - rho * t.tanh()).exp()
}

fn log_cosh(t: f64) -> f64 {
    let a = t.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

const PAIR_TOL: Tolerance = Tolerance::relative(1e-12);

/// One pairing value with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pairing {
    pub n: u32,
    pub value: C64,
    pub abs_error_estimate: f64,
}

fn pairing_march(d: u32, max_n: u32) -> PanelMarch {
    // the Laguerre factor oscillates on [0, 2n + d]; panels of width 1/2 there
    PanelMarch {
        start: 0.0,
        width: 0.5,
        uniform_until: 2.0 * max_n as f64 + d as f64 + 10.0,
    }
}

/// `<G, p_n>` for all `n <= max_n` from one adaptive pass (each node
/// evaluates `G` once).
pub fn trace_pair_all(g: &RadialSymbol<'_>, d: u32, max_n: u32) -> Result<Vec<Pairing>> {
    if d == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    g.check_decay()?;
    let dim = max_n as usize + 1;
    let norm = 1.0 / (2f64.powi(d as i32) * factorial(d as u64 - 1));
    let idx: Vec<ProjectionIndex> = (0..=max_n).map(|n| ProjectionIndex { n, d }).collect();
    let q = integrate_to_infinity_multi(
        |rho, out: &mut [C64]| {
            let gv = g.eval(rho)? * (rho.powi(d as i32 - 1) * norm);
            for (o, i) in out.iter_mut().zip(&idx) {
                *o = gv * projection_symbol(*i, rho);
            }
            Ok(())
        },
        pairing_march(d, max_n),
        dim,
        PAIR_TOL,
    )?;
    Ok((0..dim)
        .map(|k| Pairing {
            n: k as u32,
            value: q.value[k],
            abs_error_estimate: q.error[k] + 8.0 * EPS * q.abs_integral[k],
        })
        .collect())
}

/// `<G, p_n>` for one level.
pub fn trace_pair(g: &RadialSymbol<'_>, idx: ProjectionIndex) -> Result<Pairing> {
    let all = trace_pair_all(g, idx.d, idx.n)?;
    Ok(all[idx.n as usize])
}

/// `g_n / (E_n - z)`.
pub fn resolvent_target(idx: ProjectionIndex, z: C64) -> C64 {
    idx.multiplicity() / (idx.eigenvalue() - z)
}

/// Methods whose values enter the spectral certification at `(d, z)`. The
/// power series and the asymptotic expansion are left out: the pairing
/// integral samples `rho` from 0 to beyond 50, where neither is usable.
pub fn certify_methods(d: u32, z: C64) -> Vec<Method> {
    let z0 = z == C64::default();
    let mut m = Vec::new();
    if z.re < d as f64 {
        m.push(Method::Quadrature);
    }
    m.push(Method::Confluent);
    if z0 {
        m.push(Method::BesselInverse);
        if d % 2 == 0 {
            m.push(Method::ElementaryEven);
        }
    }
    m
}

/// Pairs `F_{d,z}` from each certifying method with `p_0, ..., p_N` and checks
/// `|<F, p_n> (E_n - z) / g_n - 1| <= tol`.
pub fn spectral_certify(d: u32, z: C64, max_n: u32, tol: f64) -> Result<MethodReport> {
    if max_n > 50 {
        return Err(Error::Domain(format!("spectral certification supports N <= 50, got {max_n}")));
    }
    ProblemPoint::new(d, z, 0.0)?;
    let methods = certify_methods(d, z);
    let per_method: Vec<(Method, Vec<Pairing>)> = methods
        .par_iter()
        .map(|&m| {
            let g = RadialSymbol::new(
                move |rho| Ok(eval_with(&ProblemPoint::new(d, z, rho)?, m)?.value),
                DecayClass::Power(1.0),
            );
            trace_pair_all(&g, d, max_n).map(|p| (m, p))
        })
        .collect::<Result<_>>()?;

    let mut report = MethodReport::new(format!("spectral certification d={d} z={z}"));
    for n in 0..=max_n {
        let idx = ProjectionIndex { n, d };
        let target = resolvent_target(idx, z);
        let mut values = Vec::new();
        for (m, pairs) in &per_method {
            let p = pairs[n as usize];
            values.push(MethodValue {
                method: *m,
                value: p.value,
                abs_error_estimate: p.abs_error_estimate,
            });
            let defect = (p.value / target - 1.0).norm();
            report.checks.push(Check::new(
                format!("{m} d={d} z={z} n={n} relative defect"),
                defect,
                tol,
            ));
        }
        report.points.push(PointValues {
            d,
            z,
            rho: None,
            n: Some(n),
            target: Some(target),
            values,
        });
    }
    Ok(report)
}

/// `<heat(t), p_n>` compared with `g_n e^{-t E_n}` for `n <= max_n`.
pub fn heat_kernel_certify(d: u32, ts: &[f64], max_n: u32, tol: f64) -> Result<MethodReport> {
    let mut report = MethodReport::new(format!("heat-kernel pairing d={d}"));
    for &t in ts {
        let pairs = trace_pair_all(&RadialSymbol::heat_kernel(d, t), d, max_n)?;
        for p in pairs {
            let idx = ProjectionIndex { n: p.n, d };
            let target = idx.multiplicity() * (-t * idx.eigenvalue()).exp();
            let defect = (p.value.re / target - 1.0).abs().max(p.value.im.abs() / target);
            report
                .checks
                .push(Check::new(format!("d={d} t={t} n={} relative defect", p.n), defect, tol));
        }
    }
    Ok(report)
}

/// `int_0^inf e^{tz} <heat(t), p_n> dt` for `n <= max_n`, each pairing done
/// by quadrature in `rho`. Should equal `g_n / (E_n - z)` for `Re z < d`.
pub fn heat_laplace_pairings(d: u32, z: C64, max_n: u32) -> Result<Vec<C64>> {
    if !(z.re < d as f64) {
        return Err(Error::Domain(format!("Laplace transform in t needs Re z < d (z = {z})")));
    }
    let dim = max_n as usize + 1;
    let q = integrate_to_infinity_multi(
        |t, out: &mut [C64]| {
            let pairs = trace_pair_all(&RadialSymbol::heat_kernel(d, t), d, max_n)?;
            let w = (z * t).exp();
            for (o, p) in out.iter_mut().zip(pairs) {
                *o = p.value * w;
            }
            Ok(())
        },
        PanelMarch {
            start: 0.0,
            width: 1.0,
            uniform_until: 4.0,
        },
        dim,
        Tolerance::relative(1e-10),
    )?;
    Ok(q.value)
}

/// `F_{d,z}(rho) = int_0^inf (cosh t)^{-d} e^{tz} e^{-rho tanh t} dt`, the
/// Laplace transform of the heat-kernel symbol; returns value and error
/// estimate. Needs `Re z < d`.
pub fn eval_heat_laplace(p: &ProblemPoint) -> Result<(C64, f64)> {
    let d = p.d();
    let z = p.z();
    if !(z.re < d as f64) {
        return Err(Error::Domain(format!("Laplace transform in t needs Re z < d (z = {z})")));
    }
    let rho = p.rho();
    let df = d as f64;
    let q = integrate_to_infinity(
        |t| Ok((z * t - df * log_cosh(t) - rho * t.tanh()).exp()),
        PanelMarch {
            start: 0.0,
            width: 0.5,
            uniform_until: 4.0,
        },
        Tolerance::relative(1e-13),
    )?;
    Ok((q.value, q.error))
}
