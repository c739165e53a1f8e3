//! Small numerical building blocks shared by the evaluators: compensated
//! summation, the series stopping rule and truncated power series.

use num_complex::Complex64;

pub type C64 = Complex64;

pub(crate) const EPS: f64 = f64::EPSILON;

/// Maximum number of terms any series is allowed to use.
pub const TERM_BUDGET: usize = 100_000;

/// Number of consecutive negligible terms required before a series stops.
const QUIET_TERMS: usize = 3;

/// `re + i im`.
#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// A real number as a complex one.
#[inline]
pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Neumaier compensated sum of real numbers.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Componentwise compensated sum of complex numbers.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn add(&mut self, x: C64) {
        self.re.add(x.re);
        self.im.add(x.im);
    }

    pub fn value(&self) -> C64 {
        c(self.re.value(), self.im.value())
    }
}

/// Accumulates a series and applies the stopping rule: stop once the last
/// three terms each satisfy `|t| <= EPS/2 * |partial sum|`.
#[derive(Debug, Clone, Default)]
pub(crate) struct SeriesSum {
    sum: ComplexSum,
    abs_sum: f64,
    quiet: usize,
}

impl SeriesSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a term, returning `true` once the series has converged.
    pub fn push(&mut self, t: C64) -> bool {
        self.sum.add(t);
        let mag = t.norm();
        self.abs_sum += mag;
        if mag <= 0.5 * EPS * self.sum.value().norm() {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        self.quiet >= QUIET_TERMS
    }

    pub fn value(&self) -> C64 {
        self.sum.value()
    }

    /// Running rounding-error bound: a few ulps of the sum of magnitudes.
    pub fn rounding_error(&self) -> f64 {
        4.0 * EPS * self.abs_sum
    }
}

/// Truncated Taylor series `sum_j a_j t^j` around `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Taylor(pub Vec<C64>);

impl Taylor {
    #[cfg(test)]
    pub fn one(order: usize) -> Self {
        let mut v = vec![C64::default(); order];
        v[0] = cr(1.0);
        Taylor(v)
    }

    /// `exp(scale * t)`.
    pub fn exp(scale: C64, order: usize) -> Self {
        let mut v = Vec::with_capacity(order);
        let mut term = cr(1.0);
        for j in 0..order {
            v.push(term);
            term = term * scale / (j as f64 + 1.0);
        }
        Taylor(v)
    }

    /// `(1 + scale * t)^power`.
    pub fn binomial(power: C64, scale: C64, order: usize) -> Self {
        let mut v = Vec::with_capacity(order);
        let mut term = cr(1.0);
        for j in 0..order {
            v.push(term);
            term = term * (power - j as f64) / (j as f64 + 1.0) * scale;
        }
        Taylor(v)
    }

    /// Truncated product, keeping the order of `self`.
    pub fn mul(&self, other: &Taylor) -> Taylor {
        let n = self.0.len();
        let mut out = vec![C64::default(); n];
        for (i, a) in self.0.iter().enumerate() {
            if *a == C64::default() {
                continue;
            }
            for (j, b) in other.0.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Taylor(out)
    }

    pub fn scale(mut self, k: C64) -> Taylor {
        for a in &mut self.0 {
            *a *= k;
        }
        self
    }

    pub fn add_assign(&mut self, other: &Taylor) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }
}

/// `int_0^delta t^(alpha-1) sum_j h_j t^j dt = sum_j h_j delta^(alpha+j)/(alpha+j)`,
/// exact for complex `alpha` with positive real part. Returns the value and an
/// error estimate built from the last retained terms and the rounding level.
pub(crate) fn endpoint_power_integral(alpha: C64, h: &Taylor, delta: f64) -> (C64, f64) {
    debug_assert!(alpha.re > 0.0);
    let lead = C64::from(delta).powc(alpha);
    let mut sum = ComplexSum::default();
    let mut abs_sum = 0.0;
    let mut dj = 1.0;
    let mut tail = 0.0;
    let n = h.0.len();
    for (j, hj) in h.0.iter().enumerate() {
        let t = hj * dj / (alpha + j as f64);
        sum.add(t);
        abs_sum += t.norm();
        if j + 3 >= n {
            tail += t.norm();
        }
        dj *= delta;
    }
    let value = sum.value() * lead;
    let scale = lead.norm();
    (value, scale * (tail + 4.0 * EPS * abs_sum))
}

/// Sine of `pi * x` with exact argument reduction.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let f = x - n;
    let s = (std::f64::consts::PI * f).sin();
    if (n as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

pub(crate) fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// `sin(pi s)` for complex `s`.
pub(crate) fn csin_pi(s: C64) -> C64 {
    let py = std::f64::consts::PI * s.im;
    c(sin_pi(s.re) * py.cosh(), cos_pi(s.re) * py.sinh())
}

/// Binomial coefficient as a float.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn factorial(n: u64) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}
