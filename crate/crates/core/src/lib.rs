//! Radial profile `F_{d,z}` of the Weyl symbol of the harmonic-oscillator
//! resolvent `(H - z)^-1`, `H = -Laplacian + x^2` on `R^d`.
//!
//! The symbol is a function of `rho = x^2 + p^2` only. This crate evaluates it
//! by several independent routes and checks them against each other and
//! against operator-level data (the spectrum `{d, d+2, ...}`).

pub mod error;
pub mod numeric;
pub mod quad;
pub mod specfun;
pub mod symbol;
pub mod asymptotics;
pub mod derivatives;
pub mod projections;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};
pub use numeric::C64;
pub use numeric::{c, cr};
pub use projections::ProjectionIndex;
pub use symbol::{eval, eval_with, EvalResult, Method, MethodChoice, ProblemPoint};
pub use verify::{Check, MethodReport};
