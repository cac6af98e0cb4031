//! Random variates built on [`RngStream`].

use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use super::RngStream;
use crate::error::{Error, Result};

/// Gamma(shape, scale) variate.
pub fn sample_gamma(shape: f64, scale: f64, rng: &mut RngStream) -> Result<f64> {
    if !(shape > 0.0 && shape.is_finite()) || !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::domain(
            "sample_gamma",
            format!("shape and scale must be finite and > 0, got ({shape}, {scale})"),
        ));
    }
    let dist =
        Gamma::new(shape, scale).map_err(|e| Error::domain("sample_gamma", e.to_string()))?;
    Ok(dist.sample(rng))
}

/// Standard normal variate.
pub fn sample_standard_normal(rng: &mut RngStream) -> f64 {
    rng.sample(StandardNormal)
}

/// Bernoulli(p) outcome.
pub fn sample_bernoulli(p: f64, rng: &mut RngStream) -> bool {
    rng.uniform_open() < p
}
