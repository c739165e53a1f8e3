use crate::error::{Error, Result};
use crate::numeric::{cr, SeriesSum, C64, TERM_BUDGET};

/// Gauss series `2F1(a, b; c; 1/2)` with its rounding-error bound.
fn hyp2f1_half(a: C64, b: C64, c: C64) -> Result<(C64, f64)> {
    let mut acc = SeriesSum::new();
    let mut t = cr(1.0);
    for j in 0..TERM_BUDGET {
        if acc.push(t) {
            return Ok((acc.value(), acc.rounding_error()));
        }
        let j = j as f64;
        t = t * (a + j) * (b + j) / ((c + j) * (j + 1.0)) * 0.5;
    }
    Err(Error::NonConvergence {
        what: "2F1 series at 1/2",
        budget: TERM_BUDGET,
    })
}

/// `2F1(a, b; c; -1)` with an absolute error estimate, via the Pfaff
/// transformation `2F1(a,b;c;-1) = 2^-a 2F1(a, c-b; c; 1/2)`.
pub fn gauss_2f1_minus1_with_error(a: C64, b: C64, c: C64) -> Result<(C64, f64)> {
    if c.im == 0.0 && c.re <= 0.0 && c.re.fract() == 0.0 {
        return Err(Error::Pole {
            function: "2F1",
            at: c.re,
            residue_sign: 0,
        });
    }
    let (v, e) = hyp2f1_half(a, c - b, c)?;
    let pre = (-a * std::f64::consts::LN_2).exp();
    Ok((pre * v, pre.norm() * e))
}

/// `2F1(a, b; c; -1)`.
pub fn gauss_2f1_minus1(a: C64, b: C64, c: C64) -> Result<C64> {
    gauss_2f1_minus1_with_error(a, b, c).map(|(v, _)| v)
}
