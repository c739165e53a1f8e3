//! Adaptive Gauss–Kronrod (10/21-point) quadrature for complex and
//! vector-valued integrands, with a panel march for semi-infinite ranges.
//!
//! The integrator works on `&mut [C64]` so that several integrals sharing the
//! same expensive factor (e.g. a symbol paired against many projections) are
//! computed from one set of function evaluations.

use crate::error::{Error, Result};
use crate::numeric::{ComplexSum, C64, EPS};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Requested accuracy: an integral is accepted once its error estimate is below
/// `max(abs, rel * |value|)` (or at the rounding floor of the integrand).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn relative(rel: f64) -> Self {
        Tolerance { abs: 0.0, rel }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::relative(1e-14)
    }
}

/// Result of a (possibly vector-valued) quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature {
    pub value: Vec<C64>,
    /// Absolute error estimate per component, including the rounding floor.
    pub error: Vec<f64>,
    /// `int |f|` per component.
    pub abs_integral: Vec<f64>,
    pub evaluations: usize,
}

/// Scalar convenience view.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scalar {
    pub value: C64,
    pub error: f64,
    pub abs_integral: f64,
}

impl Quadrature {
    fn scalar(&self) -> Scalar {
        Scalar {
            value: self.value[0],
            error: self.error[0],
            abs_integral: self.abs_integral[0],
        }
    }
}

#[derive(Debug, Clone)]
struct Panel {
    a: f64,
    b: f64,
    value: Vec<C64>,
    error: Vec<f64>,
    resabs: Vec<f64>,
}

fn gk21<F>(f: &mut F, a: f64, b: f64, dim: usize, buf: &mut Vec<C64>) -> Result<Panel>
where
    F: FnMut(f64, &mut [C64]) -> Result<()>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let abs_half = half.abs();

    // fv[i*dim..] holds f at node i of the 21-point rule, ordered
    // (center, then +/- pairs for XGK[0..10]).
    buf.clear();
    buf.resize(21 * dim, C64::default());
    f(center, &mut buf[0..dim])?;
    for j in 0..10 {
        let dx = half * XGK[j];
        let (lo, hi) = buf.split_at_mut((2 * j + 2) * dim);
        f(center - dx, &mut lo[(2 * j + 1) * dim..])?;
        f(center + dx, &mut hi[..dim])?;
    }

    let mut value = Vec::with_capacity(dim);
    let mut error = Vec::with_capacity(dim);
    let mut resabs_v = Vec::with_capacity(dim);
    for k in 0..dim {
        let fc = buf[k];
        let mut res_k = fc * WGK[10];
        let mut res_g = C64::default();
        let mut resabs = WGK[10] * fc.norm();
        for j in 0..10 {
            let f1 = buf[(2 * j + 1) * dim + k];
            let f2 = buf[(2 * j + 2) * dim + k];
            res_k += (f1 + f2) * WGK[j];
            resabs += WGK[j] * (f1.norm() + f2.norm());
            if j % 2 == 1 {
                res_g += (f1 + f2) * WG[j / 2];
            }
        }
        let mean = res_k * 0.5;
        let mut resasc = WGK[10] * (fc - mean).norm();
        for j in 0..10 {
            let f1 = buf[(2 * j + 1) * dim + k];
            let f2 = buf[(2 * j + 2) * dim + k];
            resasc += WGK[j] * ((f1 - mean).norm() + (f2 - mean).norm());
        }
        let result = res_k * half;
        resabs *= abs_half;
        resasc *= abs_half;
        let mut err = ((res_k - res_g) * half).norm();
        if resasc != 0.0 && err != 0.0 {
            err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
        }
        if resabs > f64::MIN_POSITIVE / (50.0 * EPS) {
            err = err.max(50.0 * EPS * resabs);
        }
        value.push(result);
        error.push(err);
        resabs_v.push(resabs);
    }
    Ok(Panel {
        a,
        b,
        value,
        error,
        resabs: resabs_v,
    })
}

/// Maximum number of subintervals in one adaptive integration.
const MAX_PANELS: usize = 4000;

fn totals(panels: &[Panel], dim: usize) -> (Vec<C64>, Vec<f64>, Vec<f64>) {
    let mut v = vec![ComplexSum::default(); dim];
    let mut e = vec![0.0; dim];
    let mut r = vec![0.0; dim];
    for p in panels {
        for k in 0..dim {
            v[k].add(p.value[k]);
            e[k] += p.error[k];
            r[k] += p.resabs[k];
        }
    }
    (v.iter().map(ComplexSum::value).collect(), e, r)
}

fn threshold(tol: &Tolerance, value: C64, resabs: f64) -> f64 {
    tol.abs.max(tol.rel * value.norm()).max(200.0 * EPS * resabs)
}

/// Adaptive integration of a vector-valued integrand over `[a, b]`, starting
/// from the given breakpoints (which must lie strictly inside `(a, b)`).
pub fn integrate_multi<F>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    dim: usize,
    tol: Tolerance,
) -> Result<Quadrature>
where
    F: FnMut(f64, &mut [C64]) -> Result<()>,
{
    let mut buf = Vec::new();
    let mut edges = vec![a];
    edges.extend(breakpoints.iter().copied().filter(|x| *x > a && *x < b));
    edges.push(b);
    let mut panels = Vec::new();
    for w in edges.windows(2) {
        panels.push(gk21(&mut f, w[0], w[1], dim, &mut buf)?);
    }
    let mut evaluations = 21 * panels.len();

    loop {
        let (value, error, resabs) = totals(&panels, dim);
        let thresholds: Vec<f64> = (0..dim)
            .map(|k| threshold(&tol, value[k], resabs[k]))
            .collect();
        let done = (0..dim).all(|k| error[k] <= thresholds[k]);
        if done {
            let error = (0..dim)
                .map(|k| error[k] + 50.0 * EPS * resabs[k])
                .collect();
            return Ok(Quadrature {
                value,
                error,
                abs_integral: resabs,
                evaluations,
            });
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::NonConvergence {
                what: "adaptive quadrature",
                budget: MAX_PANELS,
            });
        }
        // bisect the panel with the largest error relative to the thresholds
        let (worst, _) = panels
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let score = (0..dim)
                    .map(|k| p.error[k] / thresholds[k].max(f64::MIN_POSITIVE))
                    .fold(0.0, f64::max);
                (i, score)
            })
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            return Err(Error::NonConvergence {
                what: "adaptive quadrature (interval underflow)",
                budget: MAX_PANELS,
            });
        }
        panels.push(gk21(&mut f, p.a, mid, dim, &mut buf)?);
        panels.push(gk21(&mut f, mid, p.b, dim, &mut buf)?);
        evaluations += 42;
    }
}

/// Adaptive integration of a complex integrand over `[a, b]`.
pub fn integrate<F>(mut f: F, a: f64, b: f64, breakpoints: &[f64], tol: Tolerance) -> Result<Scalar>
where
    F: FnMut(f64) -> Result<C64>,
{
    integrate_multi(
        |x, out: &mut [C64]| {
            out[0] = f(x)?;
            Ok(())
        },
        a,
        b,
        breakpoints,
        1,
        tol,
    )
    .map(|q| q.scalar())
}

/// Panel layout for [`integrate_to_infinity_multi`]: panels of `width` up to
/// `uniform_until`, then doubling widths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelMarch {
    pub start: f64,
    pub width: f64,
    pub uniform_until: f64,
}

const MAX_MARCH: usize = 400;

/// Integral over `[start, inf)` for integrands with exponential decay. The
/// march stops once two consecutive panels are negligible relative to the
/// accumulated `int |f|`.
pub fn integrate_to_infinity_multi<F>(
    mut f: F,
    march: PanelMarch,
    dim: usize,
    tol: Tolerance,
) -> Result<Quadrature>
where
    F: FnMut(f64, &mut [C64]) -> Result<()>,
{
    let mut value = vec![ComplexSum::default(); dim];
    let mut error = vec![0.0; dim];
    let mut resabs = vec![0.0; dim];
    let mut evaluations = 0;
    let mut lo = march.start;
    let mut width = march.width;
    let mut quiet = 0;
    for _ in 0..MAX_MARCH {
        let hi = lo + width;
        let running: Vec<f64> = (0..dim).map(|k| value[k].value().norm()).collect();
        let panel_tol = Tolerance {
            abs: tol.abs.max(
                0.25 * tol.rel * running.iter().cloned().fold(f64::INFINITY, f64::min),
            ),
            rel: tol.rel,
        };
        let q = integrate_multi(&mut f, lo, hi, &[], dim, panel_tol)?;
        evaluations += q.evaluations;
        let mut negligible = true;
        for k in 0..dim {
            value[k].add(q.value[k]);
            error[k] += q.error[k];
            resabs[k] += q.abs_integral[k];
            if q.abs_integral[k] > 0.25 * EPS * resabs[k] {
                negligible = false;
            }
        }
        quiet = if negligible { quiet + 1 } else { 0 };
        if quiet >= 2 {
            return Ok(Quadrature {
                value: value.iter().map(ComplexSum::value).collect(),
                error,
                abs_integral: resabs,
                evaluations,
            });
        }
        lo = hi;
        if lo >= march.uniform_until {
            width *= 2.0;
        }
    }
    Err(Error::NonConvergence {
        what: "semi-infinite panel march",
        budget: MAX_MARCH,
    })
}

pub fn integrate_to_infinity<F>(mut f: F, march: PanelMarch, tol: Tolerance) -> Result<Scalar>
where
    F: FnMut(f64) -> Result<C64>,
{
    integrate_to_infinity_multi(
        |x, out: &mut [C64]| {
            out[0] = f(x)?;
            Ok(())
        },
        march,
        1,
        tol,
    )
    .map(|q| q.scalar())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::cr;

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|x| Ok(cr(x.powi(7))), 0.0, 2.0, &[], Tolerance::default()).unwrap();
        assert!((q.value.re - 32.0).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_complex() {
        // int_0^pi e^{i x} dx = 2i
        let q = integrate(
            |x| Ok(C64::new(0.0, x).exp()),
            0.0,
            std::f64::consts::PI,
            &[],
            Tolerance::default(),
        )
        .unwrap();
        assert!((q.value - C64::new(0.0, 2.0)).norm() < 1e-14);
        assert!(q.error < 1e-12);
    }

    #[test]
    fn endpoint_log_singularity_converges() {
        let q = integrate(|x| Ok(cr(-x.ln())), 0.0, 1.0, &[], Tolerance::relative(1e-10)).unwrap();
        assert!((q.value.re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn semi_infinite_gamma_integral() {
        // int_0^inf x^5 e^{-x} = 120
        let m = PanelMarch { start: 0.0, width: 2.0, uniform_until: 10.0 };
        let q = integrate_to_infinity(|x| Ok(cr(x.powi(5) * (-x).exp())), m, Tolerance::default()).unwrap();
        assert!((q.value.re - 120.0).abs() < 1e-11);
    }

    #[test]
    fn multi_component_shares_evaluations() {
        let q = integrate_multi(
            |x, out: &mut [C64]| {
                out[0] = cr(x);
                out[1] = cr(x * x);
                Ok(())
            },
            0.0,
            1.0,
            &[0.5],
            2,
            Tolerance::default(),
        )
        .unwrap();
        assert!((q.value[0].re - 0.5).abs() < 1e-15);
        assert!((q.value[1].re - 1.0 / 3.0).abs() < 1e-15);
    }
}
