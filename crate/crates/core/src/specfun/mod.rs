//! Special functions used by every representation of the symbol.

mod bessel;
mod confluent;
mod gamma;
mod hyp2f1;
mod laguerre;

pub use bessel::{bessel_i, bessel_i_with_error, bessel_k, bessel_k_with_error, BesselOrder};
pub use confluent::{
    kummer_m, kummer_m_with_error, tricomi_u, tricomi_u_with_error, wronskian_mu, ConfluentParams,
};
pub use gamma::{gamma, gamma_real, pochhammer, rgamma};
pub use hyp2f1::{gauss_2f1_minus1, gauss_2f1_minus1_with_error};
pub use laguerre::laguerre;
