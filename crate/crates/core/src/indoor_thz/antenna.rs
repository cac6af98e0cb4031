use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gaussian-beam horn radiation pattern.
///
/// When used by the ray tracer the angles are offsets measured in the
/// mounting pose's own frame, so boresight angles of zero mean "along the
/// pose direction".
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HornPattern {
    pub max_gain: f64,
    pub hpbw_azimuth: f64,
    pub hpbw_elevation: f64,
    pub boresight_azimuth: f64,
    pub boresight_elevation: f64,
}

impl HornPattern {
    /// Pattern whose beamwidths follow θ = 2√(π/G0).
    pub fn from_max_gain(max_gain: f64) -> Result<Self> {
        if !(max_gain >= 1.0) || !max_gain.is_finite() {
            return Err(Error::domain(
                "HornPattern",
                format!("max gain must be >= 1, got {max_gain}"),
            ));
        }
        let bw = beamwidth_from_gain(max_gain);
        Ok(Self {
            max_gain,
            hpbw_azimuth: bw,
            hpbw_elevation: bw,
            boresight_azimuth: 0.0,
            boresight_elevation: 0.0,
        })
    }

    /// Pattern with equal azimuth/elevation beamwidth and the matching gain.
    pub fn from_beamwidth(beamwidth: f64) -> Result<Self> {
        if !(beamwidth > 0.0) || beamwidth > 2.0 * PI.sqrt() {
            return Err(Error::domain(
                "HornPattern",
                format!("beamwidth must lie in (0, 2*sqrt(pi)], got {beamwidth}"),
            ));
        }
        Self::from_max_gain(gain_from_beamwidth(beamwidth))
    }

    pub fn isotropic() -> Self {
        Self {
            max_gain: 1.0,
            hpbw_azimuth: f64::INFINITY,
            hpbw_elevation: f64::INFINITY,
            boresight_azimuth: 0.0,
            boresight_elevation: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.max_gain >= 1.0) || !(self.hpbw_azimuth > 0.0) || !(self.hpbw_elevation > 0.0) {
            return Err(Error::domain(
                "HornPattern",
                "need max gain >= 1 and beamwidths > 0",
            ));
        }
        Ok(())
    }
}

pub fn beamwidth_from_gain(max_gain: f64) -> f64 {
    2.0 * (PI / max_gain).sqrt()
}

pub fn gain_from_beamwidth(beamwidth: f64) -> f64 {
    4.0 * PI / (beamwidth * beamwidth)
}

/// G(θa, θe) = G0·exp(−((θa−θa0)/θa_bw)²)·exp(−((θe−θe0)/θe_bw)²).
pub fn antenna_gain(p: &HornPattern, azimuth: f64, elevation: f64) -> f64 {
    let a = (azimuth - p.boresight_azimuth) / p.hpbw_azimuth;
    let e = (elevation - p.boresight_elevation) / p.hpbw_elevation;
    p.max_gain * (-a * a).exp() * (-e * e).exp()
}
