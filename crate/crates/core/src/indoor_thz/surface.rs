use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::SPEED_OF_LIGHT;

/// Wall material: real refractive index and RMS surface roughness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Material {
    pub refractive_index: f64,
    pub roughness_sigma: f64,
}

impl Material {
    /// Plaster-like wall.
    pub fn plaster() -> Self {
        Self {
            refractive_index: 2.24,
            roughness_sigma: 0.05e-3,
        }
    }

    /// n = 1: nothing is reflected or scattered.
    pub fn absorbing() -> Self {
        Self {
            refractive_index: 1.0,
            roughness_sigma: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.refractive_index >= 1.0) || !(self.roughness_sigma >= 0.0) {
            return Err(Error::domain(
                "Material",
                "refractive index must be >= 1 and roughness >= 0",
            ));
        }
        Ok(())
    }
}

/// TE Fresnel reflection coefficient for a lossless dielectric.
pub fn fresnel_te(refractive_index: f64, incidence: f64) -> f64 {
    let c = incidence.cos();
    // n² − sin²θ written as cos²θ + (n² − 1) so a matched wall gives exactly 0.
    let root = (c * c + (refractive_index * refractive_index - 1.0)).sqrt();
    (c - root) / (c + root)
}

/// Rayleigh roughness factor exp(−½(4πfσcosθ/c)²).
pub fn rayleigh_roughness(f: f64, sigma: f64, incidence: f64) -> f64 {
    let g = 4.0 * PI * f * sigma * incidence.cos() / SPEED_OF_LIGHT;
    (-0.5 * g * g).exp()
}

/// Specular reflection and total diffuse scattering amplitudes.
///
/// R = Γ_TE·ρ with ρ the roughness factor; S = |Γ_TE|·√(1−ρ²), so the
/// scattered power never exceeds the power not reflected specularly.
pub fn surface_coefficients(
    material: &Material,
    f: f64,
    incidence: f64,
) -> Result<(Complex64, Complex64)> {
    if !(0.0..PI / 2.0).contains(&incidence) {
        return Err(Error::domain(
            "surface_coefficients",
            format!("incidence angle must lie in [0, pi/2), got {incidence}"),
        ));
    }
    let gamma = fresnel_te(material.refractive_index, incidence);
    let rho = rayleigh_roughness(f, material.roughness_sigma, incidence);
    let r = Complex64::new(gamma * rho, 0.0);
    let s = Complex64::new(gamma.abs() * (1.0 - rho * rho).max(0.0).sqrt(), 0.0);
    Ok((r, s))
}
