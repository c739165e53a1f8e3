//! Shared fixtures for the benchmarks.

use weylosc::{c, cr, ProblemPoint};

/// Representative points: small, moderate and large `rho`, real and complex `z`.
pub fn points() -> Vec<(&'static str, ProblemPoint)> {
    [
        ("d2_z0_rho1", 2, cr(0.0), 1.0),
        ("d3_z0.9i_rho5", 3, c(0.0, 0.9), 5.0),
        ("d1_z-2+3i_rho30", 1, c(-2.0, 3.0), 30.0),
        ("d4_z-1_rho100", 4, cr(-1.0), 100.0),
    ]
    .into_iter()
    .map(|(name, d, z, rho)| (name, ProblemPoint::new(d, z, rho).unwrap()))
    .collect()
}
