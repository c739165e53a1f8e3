/// Generalized Laguerre polynomial `L_n^alpha(x)` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}`.
pub fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{binomial, factorial};
    use crate::quad::{integrate_to_infinity, PanelMarch, Tolerance};
    use num_complex::Complex64;

    #[test]
    fn degree_zero_and_one() {
        for &a in &[0.0, 1.0, 5.0] {
            for &x in &[0.0, 0.3, 7.0] {
                assert_eq!(laguerre(0, a, x), 1.0);
                assert!((laguerre(1, a, x) - (a + 1.0 - x)).abs() < 1e-15);
            }
        }
        assert_eq!(laguerre(1, 0.0, 2.0), -1.0);
    }

    // explicit sum L_n^a(x) = sum_j (-1)^j C(n+a, n-j) x^j / j!
    fn explicit(n: u32, a: u32, x: f64) -> f64 {
        (0..=n)
            .map(|j| {
                let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                s * binomial((n + a) as u64, (n - j) as u64) * x.powi(j as i32) / factorial(j as u64)
            })
            .sum()
    }

    #[test]
    fn recurrence_matches_explicit_sum() {
        for n in 0..12 {
            for a in 0..4 {
                for &x in &[0.1, 1.0, 3.5] {
                    let r = laguerre(n, a as f64, x);
                    let e = explicit(n, a, x);
                    assert!((r - e).abs() < 1e-11 * (1.0 + e.abs()), "n={n} a={a} x={x}");
                }
            }
        }
    }

    #[test]
    fn weighted_integral_identity() {
        // int_0^inf nu^(d-1) e^-nu L_n^(d-1)(2 nu) d nu = (-1)^n (d+n-1)!/n!, (d, n) = (2, 3) -> -4!/3! = -4
        let m = PanelMarch { start: 0.0, width: 1.0, uniform_until: 20.0 };
        let q = integrate_to_infinity(
            |v| Ok(Complex64::from(v * (-v).exp() * laguerre(3, 1.0, 2.0 * v))),
            m,
            Tolerance::default(),
        )
        .unwrap();
        assert!((q.value.re + 4.0).abs() < 1e-12, "{:?}", q);
    }
}
