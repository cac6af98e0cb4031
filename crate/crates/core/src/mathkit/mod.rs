//! Special functions, random variates and numerical quadrature.

mod quadrature;
mod rng;
mod sampling;
mod special;

pub use quadrature::{
    integrate, integrate_disk, integrate_semi_infinite, integrate_with_breaks, QuadratureSpec,
};
pub use rng::RngStream;
pub use sampling::{sample_bernoulli, sample_gamma, sample_standard_normal};
pub use special::{
    bessel_k, binomial, erf, erfc, gamma_fn, gamma_lower_incomplete, gamma_upper_incomplete,
    ln_gamma,
};
