//! Kummer's function `M(a, c; x)` and Tricomi's function `U(a, c; x)` for
//! complex `a` and positive integer `c`.

use super::gamma::{gamma, rgamma};
use crate::error::{Error, Result};
use crate::numeric::{
    cr, endpoint_power_integral, factorial, ComplexSum, SeriesSum, Taylor, C64, EPS, TERM_BUDGET,
};
use crate::quad::{integrate_to_infinity, PanelMarch, Tolerance};

/// Parameters `(a, c)` of the confluent equation `x y'' + (c - x) y' - a y = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfluentParams {
    pub a: C64,
    pub c: u32,
}

impl ConfluentParams {
    pub fn new(a: C64, c: u32) -> Result<Self> {
        if c == 0 {
            return Err(Error::Domain("confluent parameter c must be >= 1".into()));
        }
        if !(a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite confluent parameter a = {a}")));
        }
        Ok(ConfluentParams { a, c })
    }

    fn cf(&self) -> f64 {
        self.c as f64
    }
}

/// Above this modulus `M` switches to its large-argument expansion.
const M_SERIES_LIMIT: f64 = 200.0;

fn kummer_series(a: C64, c: f64, x: C64) -> Result<(C64, f64)> {
    let mut acc = SeriesSum::new();
    let mut t = cr(1.0);
    for k in 0..TERM_BUDGET {
        if acc.push(t) {
            return Ok((acc.value(), acc.rounding_error()));
        }
        let k = k as f64;
        t = t * (a + k) / ((c + k) * (k + 1.0)) * x;
    }
    Err(Error::NonConvergence {
        what: "Kummer M series",
        budget: TERM_BUDGET,
    })
}

/// Sum of an asymptotic series `sum_s (p)_s (q)_s / s! w^s`, truncated at its
/// smallest term. Returns the sum and the smallest term's modulus.
fn asymptotic_sum(p: C64, q: C64, w: C64) -> (C64, f64) {
    let mut acc = SeriesSum::new();
    let mut t = cr(1.0);
    let mut last = f64::INFINITY;
    for s in 0..200 {
        let mag = t.norm();
        if mag > last || mag == 0.0 {
            return (acc.value(), mag.min(last));
        }
        if acc.push(t) {
            return (acc.value(), 0.0);
        }
        last = mag;
        let s = s as f64;
        t = t * (p + s) * (q + s) / (s + 1.0) * w;
    }
    (acc.value(), last)
}

fn kummer_large(a: C64, c: f64, x: C64) -> Option<(C64, f64)> {
    let gc = factorial(c as u64 - 1);
    let (s1, e1) = asymptotic_sum(c - a, 1.0 - a, 1.0 / x);
    let (s2, e2) = asymptotic_sum(a, a - c + 1.0, -1.0 / x);
    let phase = if x.im >= 0.0 {
        (C64::i() * std::f64::consts::PI * a).exp()
    } else {
        (-C64::i() * std::f64::consts::PI * a).exp()
    };
    let p1 = (x + (a - c) * x.ln()).exp() * rgamma(a) * gc;
    let p2 = phase * (-a * x.ln()).exp() * rgamma(cr(c) - a) * gc;
    let value = p1 * s1 + p2 * s2;
    let err = p1.norm() * e1 + p2.norm() * e2 + 8.0 * EPS * (p1 * s1).norm();
    if err <= 1e-13 * value.norm() {
        Some((value, err))
    } else {
        None
    }
}

/// `M(a, c; x)` with an absolute error estimate.
pub fn kummer_m_with_error(p: ConfluentParams, x: C64) -> Result<(C64, f64)> {
    let c = p.cf();
    if x.re < 0.0 {
        // Kummer's transformation keeps the series free of cancellation
        let (v, e) = kummer_m_with_error(ConfluentParams { a: cr(c) - p.a, c: p.c }, -x)?;
        let ex = x.exp();
        return Ok((ex * v, ex.norm() * e));
    }
    if x.norm() > M_SERIES_LIMIT {
        if let Some(r) = kummer_large(p.a, c, x) {
            return Ok(r);
        }
        if x.norm() > 650.0 {
            return Err(Error::NonConvergence {
                what: "Kummer M large-argument expansion",
                budget: 200,
            });
        }
    }
    kummer_series(p.a, c, x)
}

/// Kummer's confluent hypergeometric function `M(a, c; x) = 1F1(a; c; x)`.
pub fn kummer_m(p: ConfluentParams, x: C64) -> Result<C64> {
    kummer_m_with_error(p, x).map(|(v, _)| v)
}

const U_TAYLOR_ORDER: usize = 48;

/// Argument above which the large-`x` expansion of `U` is tried first.
const U_ASYMPTOTIC_X: f64 = 20.0;

/// `U ~ x^{-a} sum_k (a)_k (a-c+1)_k / k! (-x)^{-k}`, accepted only when the
/// smallest term is below `1e-15` of the sum (or the series terminates).
fn tricomi_large(a: C64, c: f64, x: f64) -> Option<(C64, f64)> {
    let b = a - c + 1.0;
    let mut term = cr(1.0);
    let mut sum = ComplexSum::default();
    sum.add(term);
    let mut abs_sum = 1.0;
    for k in 0..200 {
        let kf = k as f64;
        let next = -term * (a + kf) * (b + kf) / ((kf + 1.0) * x);
        if next.norm() == 0.0 {
            let v = (-a * x.ln()).exp() * sum.value();
            return Some((v, 4.0 * EPS * abs_sum * v.norm() / sum.value().norm()));
        }
        if next.norm() > term.norm() {
            return None;
        }
        term = next;
        sum.add(term);
        abs_sum += term.norm();
        if term.norm() <= 1e-16 * sum.value().norm() {
            let total = sum.value();
            let v = (-a * x.ln()).exp() * total;
            let err = (term.norm() + 4.0 * EPS * abs_sum) / total.norm() * v.norm();
            return Some((v, err));
        }
    }
    None
}

fn tricomi_integral(a: C64, c: f64, x: f64) -> Result<(C64, f64)> {
    if x >= U_ASYMPTOTIC_X {
        if let Some(r) = tricomi_large(a, c, x) {
            return Ok(r);
        }
    }
    tricomi_laplace(a, c, x)
}

/// Laplace-type integral for `Re(a) > 0`:
/// `U = 1/Gamma(a) int_0^inf e^{-xt} t^{a-1} (1+t)^{c-a-1} dt`.
fn tricomi_laplace(a: C64, c: f64, x: f64) -> Result<(C64, f64)> {
    let q = c - a - 1.0;
    let delta = 0.125f64.min(2.0 / x);
    let h = Taylor::binomial(q, cr(1.0), U_TAYLOR_ORDER).mul(&Taylor::exp(cr(-x), U_TAYLOR_ORDER));
    let (head, head_err) = endpoint_power_integral(a, &h, delta);
    let am1 = a - 1.0;
    let march = PanelMarch {
        start: delta,
        width: 1.0f64.min(2.0 / x),
        uniform_until: delta,
    };
    let tail = integrate_to_infinity(
        |t| Ok((am1 * t.ln() + q * t.ln_1p() - x * t).exp()),
        march,
        Tolerance::relative(1e-14),
    )?;
    let r = rgamma(a);
    let value = r * (head + tail.value);
    Ok((value, r.norm() * (head_err + tail.error)))
}

/// `U(a, c; x)` with an absolute error estimate, for real `x > 0`.
pub fn tricomi_u_with_error(p: ConfluentParams, x: f64) -> Result<(C64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Tricomi U needs x > 0, got {x}")));
    }
    let c = p.cf();
    if p.a.re > 0.0 {
        return tricomi_integral(p.a, c, x);
    }
    // lift a into the half plane of the integral representation and recur
    // downwards: U(a-1) = (2a - c + x) U(a) - a (a - c + 1) U(a+1)
    let m = (-p.a.re).floor() as usize + 1;
    let top = p.a + m as f64;
    let (mut u_hi, e_hi) = tricomi_integral(top + 1.0, c, x)?;
    let (mut u, e_lo) = tricomi_integral(top, c, x)?;
    let mut rel = (e_hi / u_hi.norm()).max(e_lo / u.norm());
    let mut k = top;
    for _ in 0..m {
        let next = (2.0 * k - c + x) * u - k * (k - c + 1.0) * u_hi;
        let scale = ((2.0 * k - c + x) * u).norm() + (k * (k - c + 1.0) * u_hi).norm();
        u_hi = u;
        u = next;
        k -= 1.0;
        rel += 4.0 * EPS * scale / u.norm().max(f64::MIN_POSITIVE);
    }
    let err = rel * u.norm().max(u_hi.norm() * EPS);
    Ok((u, err))
}

/// Tricomi's confluent hypergeometric function `U(a, c; x)`, `x > 0`.
pub fn tricomi_u(p: ConfluentParams, x: f64) -> Result<C64> {
    tricomi_u_with_error(p, x).map(|(v, _)| v)
}

/// `Gamma(c) / Gamma(a)`-normalized Wronskian `W{M, U}(x) = -Gamma(c)/Gamma(a) x^-c e^x`.
pub fn wronskian_mu(p: ConfluentParams, x: f64) -> Result<C64> {
    let gc = gamma(cr(p.cf()))?;
    Ok(-gc * rgamma(p.a) * x.powf(-p.cf()) * x.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;
    use crate::specfun::laguerre;

    fn params(a: C64, c: u32) -> ConfluentParams {
        ConfluentParams::new(a, c).unwrap()
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn large_argument_expansion_matches_integral() {
        for &(a, c, x) in &[(c(1.0, 0.0), 2.0, 25.0), (c(1.5, 0.0), 3.0, 45.0), (c(2.0, -0.45), 4.0, 40.0), (c(0.7, 1.3), 1.0, 60.0)] {
            let (v, e) = tricomi_large(a, c, x).expect("expansion accepted");
            let (w, _) = tricomi_laplace(a, c, x).unwrap();
            assert!(rel(v, w) < 1e-13, "a={a} c={c} x={x}");
            assert!(e <= 1e-14 * v.norm());
        }
        // too small an argument for the required accuracy
        assert!(tricomi_large(c(3.0, 2.0), 5.0, 2.0).is_none());
    }

    #[test]
    fn m_at_zero_is_one() {
        assert_eq!(kummer_m(params(c(0.3, 2.0), 3), cr(0.0)).unwrap(), cr(1.0));
    }

    #[test]
    fn m_one_two_closed_form() {
        // M(1, 2; x) = (e^x - 1) / x; oracle: direct summation of x^k/(k+1)!
        let x: f64 = 2.0;
        let mut oracle = 0.0;
        let mut t = 1.0;
        for k in 0..60 {
            oracle += t;
            t *= x / (k as f64 + 2.0);
        }
        let v = kummer_m(params(cr(1.0), 2), cr(x)).unwrap();
        assert!((v.re - oracle).abs() < 1e-14 * oracle);
        assert!((v.re - 3.194_528_049_465_325).abs() < 1e-13);
    }

    #[test]
    fn m_laguerre_reduction() {
        // M(-n, alpha+1; x) = n! / (alpha+1)_n L_n^alpha(x) at (2, 1, 3)
        let v = kummer_m(params(cr(-2.0), 2), cr(3.0)).unwrap();
        let expect = 2.0 / (2.0 * 3.0) * laguerre(2, 1.0, 3.0);
        assert!((v.re - expect).abs() < 1e-14);
    }

    #[test]
    fn m_kummer_transformation_consistent() {
        let p = params(c(1.25, -0.5), 3);
        let x = cr(-7.5);
        let direct = kummer_series(p.a, 3.0, x).unwrap().0;
        assert!(rel(kummer_m(p, x).unwrap(), direct) < 1e-11);
    }

    #[test]
    fn m_large_argument_matches_series() {
        for &a in &[c(1.5, 0.0), c(2.0, -1.5), c(0.25, 0.45)] {
            let p = params(a, 3);
            let x = cr(240.0);
            let series = kummer_series(a, 3.0, x).unwrap().0;
            let large = kummer_large(a, 3.0, x).expect("asymptotic should converge").0;
            assert!(rel(large, series) < 1e-12, "a = {a}");
            assert!(rel(kummer_m(p, x).unwrap(), series) < 1e-12);
        }
    }

    #[test]
    fn u_closed_forms() {
        // U(1, 2; x) = 1/x
        let v = tricomi_u(params(cr(1.0), 2), 2.0).unwrap();
        assert!((v.re - 0.5).abs() < 1e-13 && v.im.abs() < 1e-15);
        // U(a, a+1; x) = x^-a
        let v = tricomi_u(params(cr(2.0), 3), 0.7).unwrap();
        assert!(rel(v, cr(0.7f64.powf(-2.0))) < 1e-13);
    }

    #[test]
    fn u_laguerre_reduction_by_lifting() {
        // U(-n, alpha+1; x) = (-1)^n n! L_n^alpha(x); (1, 0, 2) -> 1
        let v = tricomi_u(params(cr(-1.0), 1), 2.0).unwrap();
        assert!((v.re - 1.0).abs() < 1e-12, "{v}");
        for n in 0..6u32 {
            for alpha in 0..3u32 {
                let x = 1.7;
                let v = tricomi_u(params(cr(-(n as f64)), alpha + 1), x).unwrap();
                let s = if n % 2 == 0 { 1.0 } else { -1.0 };
                let expect = s * factorial(n as u64) * laguerre(n, alpha as f64, x);
                assert!((v.re - expect).abs() < 1e-10 * (1.0 + expect.abs()), "n={n} alpha={alpha}");
            }
        }
    }

    #[test]
    fn u_large_argument_behaviour() {
        // U(3, 2; x) x^3 -> 1
        let x = 400.0;
        let v = tricomi_u(params(cr(3.0), 2), x).unwrap();
        assert!((v.re * x.powi(3) - 1.0).abs() < 0.02);
    }

    #[test]
    fn wronskian_identity() {
        // M U' - M' U = W with U' = -a U(a+1, c+1), M' = a/c M(a+1, c+1)
        let p = params(c(1.3, 0.4), 2);
        let x = 1.9;
        let m = kummer_m(p, cr(x)).unwrap();
        let u = tricomi_u(p, x).unwrap();
        let up = -p.a * tricomi_u(params(p.a + 1.0, 3), x).unwrap();
        let mp = p.a / 2.0 * kummer_m(params(p.a + 1.0, 3), cr(x)).unwrap();
        let w = wronskian_mu(p, x).unwrap();
        assert!(rel(m * up - mp * u, w) < 1e-12);
    }

    #[test]
    fn u_domain_error() {
        assert!(matches!(tricomi_u(params(cr(1.0), 1), 0.0), Err(Error::Domain(_))));
        assert!(matches!(tricomi_u(params(cr(1.0), 1), -1.0), Err(Error::Domain(_))));
    }
}
