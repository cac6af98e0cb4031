//! Position and orientation jitter of hovering UAVs mapped onto the
//! pointing and AoA parameters of FSO and THz links.

use serde::{Deserialize, Serialize};

use super::fso::{
    fso_path_loss, turbulent_beam_width, AoAParams, DisplacementPointing, MalagaParams,
};
use super::outage::{FsoChannel, ThzAngularChannel};
use super::thz::{thz_path_loss, AlphaMuParams, AngularPointing};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UavLinkType {
    #[serde(rename = "u2u")]
    U2U,
    #[serde(rename = "u2g")]
    U2G,
    #[serde(rename = "g2u")]
    G2U,
}

/// Jitter standard deviations (m, rad) and boresight offsets (rad) in the
/// x–z and y–z planes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UavJitter {
    pub sigma_txp: f64,
    pub sigma_typ: f64,
    pub sigma_rxp: f64,
    pub sigma_ryp: f64,
    pub sigma_txo: f64,
    pub sigma_tyo: f64,
    pub sigma_rxo: f64,
    pub sigma_ryo: f64,
    pub mu_tx: f64,
    pub mu_ty: f64,
    pub mu_rx: f64,
    pub mu_ry: f64,
    pub link_type: UavLinkType,
}

impl UavJitter {
    /// Illustrative hovering jitter: 5 cm position, 2 mrad orientation and
    /// 1 mrad boresight offset on every axis.
    pub fn hovering(link_type: UavLinkType) -> Self {
        Self {
            sigma_txp: 0.05,
            sigma_typ: 0.05,
            sigma_rxp: 0.05,
            sigma_ryp: 0.05,
            sigma_txo: 2e-3,
            sigma_tyo: 2e-3,
            sigma_rxo: 2e-3,
            sigma_ryo: 2e-3,
            mu_tx: 1e-3,
            mu_ty: 1e-3,
            mu_rx: 1e-3,
            mu_ry: 1e-3,
            link_type,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let stds = [
            self.sigma_txp,
            self.sigma_typ,
            self.sigma_rxp,
            self.sigma_ryp,
            self.sigma_txo,
            self.sigma_tyo,
            self.sigma_rxo,
            self.sigma_ryo,
        ];
        if stds.iter().any(|s| !(*s >= 0.0)) {
            return Err(Error::domain(
                "UavJitter",
                "standard deviations must be >= 0",
            ));
        }
        let means = [self.mu_tx, self.mu_ty, self.mu_rx, self.mu_ry];
        if means.iter().any(|m| !m.is_finite()) {
            return Err(Error::domain(
                "UavJitter",
                "boresight offsets must be finite",
            ));
        }
        Ok(())
    }
}

/// ((3z²μx²σx⁴ + 3z²μy²σy⁴ + σx⁶ + σy⁶)/2)^(1/3) with σ² inputs.
fn cube_root_mix(z: f64, mu_x: f64, var_x: f64, mu_y: f64, var_y: f64) -> f64 {
    let z2 = z * z;
    ((3.0 * z2 * mu_x * mu_x * var_x * var_x
        + 3.0 * z2 * mu_y * mu_y * var_y * var_y
        + var_x.powi(3)
        + var_y.powi(3))
        / 2.0)
        .cbrt()
}

/// Total displacement variance σ_m² and AoA variance σ_a² for a link of
/// length L.
pub fn uav_variances(j: &UavJitter, length: f64) -> Result<(f64, f64)> {
    j.validate()?;
    if !(length > 0.0) {
        return Err(Error::domain("uav_variances", "link length must be > 0"));
    }
    let l2 = length * length;
    let var_dx = l2 * j.sigma_txo.powi(2) + j.sigma_txp.powi(2) + j.sigma_rxp.powi(2);
    let var_dy = l2 * j.sigma_tyo.powi(2) + j.sigma_typ.powi(2) + j.sigma_ryp.powi(2);
    let sigma_m2 = match j.link_type {
        UavLinkType::U2U | UavLinkType::U2G => {
            cube_root_mix(length, j.mu_tx, var_dx, j.mu_ty, var_dy)
        }
        UavLinkType::G2U => {
            j.sigma_txp.powi(2) + j.sigma_rxp.powi(2) + j.sigma_typ.powi(2) + j.sigma_ryp.powi(2)
        }
    };
    let sigma_a2 = match j.link_type {
        UavLinkType::U2U => cube_root_mix(
            1.0,
            j.mu_tx + j.mu_rx,
            j.sigma_txo.powi(2) + j.sigma_rxo.powi(2),
            j.mu_ty + j.mu_ry,
            j.sigma_tyo.powi(2) + j.sigma_ryo.powi(2),
        ),
        UavLinkType::U2G => cube_root_mix(
            1.0,
            j.mu_tx,
            j.sigma_txo.powi(2),
            j.mu_ty,
            j.sigma_tyo.powi(2),
        ),
        UavLinkType::G2U => cube_root_mix(
            1.0,
            j.mu_rx,
            j.sigma_rxo.powi(2),
            j.mu_ry,
            j.sigma_ryo.powi(2),
        ),
    };
    Ok((sigma_m2, sigma_a2))
}

/// FSO transceiver, weather and turbulence parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FsoLinkParams {
    pub wavelength: f64,
    pub waist: f64,
    pub cn2: f64,
    pub aperture_radius: f64,
    pub fov: f64,
    /// ξ_l, 1/m.
    pub attenuation_per_m: f64,
    pub turbulence: MalagaParams,
}

impl FsoLinkParams {
    /// Channel for a fixed link with the given displacement and AoA jitter.
    pub fn channel(
        &self,
        length: f64,
        displacement_std: f64,
        aoa_std: f64,
        sides: f64,
    ) -> Result<FsoChannel> {
        let beam_width = turbulent_beam_width(self.waist, self.wavelength, length, self.cn2)?;
        let c = FsoChannel {
            path_loss: fso_path_loss(self.attenuation_per_m, length),
            turbulence: self.turbulence,
            pointing: DisplacementPointing {
                beam_width,
                aperture_radius: self.aperture_radius,
                displacement_std,
            },
            aoa: AoAParams {
                fov: self.fov,
                aoa_std,
                sides,
            },
        };
        c.turbulence.validate()?;
        c.pointing.validate()?;
        c.aoa.validate()?;
        Ok(c)
    }
}

/// THz carrier, absorption, array size and fading parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThzLinkParams {
    pub frequency: f64,
    pub kappa: f64,
    /// N for an N × N array at each end.
    pub n_ant: f64,
    pub fading: AlphaMuParams,
}

/// FSO channel for a UAV link: σ_m drives the displacement pointing and σ_a
/// the AoA interruption, with a2 = 4 when both ends hover.
pub fn uav_link_fso(j: &UavJitter, length: f64, dev: &FsoLinkParams) -> Result<FsoChannel> {
    let (m2, a2) = uav_variances(j, length)?;
    let sides = if j.link_type == UavLinkType::U2U {
        4.0
    } else {
        2.0
    };
    dev.channel(length, m2.sqrt(), a2.sqrt(), sides)
}

/// THz channel for a UAV link: σ_m/L is used as the std of all four
/// pointing angles.
pub fn uav_link_thz(j: &UavJitter, length: f64, dev: &ThzLinkParams) -> Result<ThzAngularChannel> {
    let (m2, _) = uav_variances(j, length)?;
    dev.fading.validate()?;
    if !(dev.n_ant > 0.0) {
        return Err(Error::domain("uav_link_thz", "array size must be > 0"));
    }
    Ok(ThzAngularChannel {
        path_gain: thz_path_loss(dev.frequency, length, 1.0, 1.0, dev.kappa, false)?,
        fading: dev.fading,
        pointing: AngularPointing::ula(dev.n_ant, m2.sqrt() / length),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn g2u_is_additive() {
        let j = UavJitter {
            sigma_txp: 0.1,
            sigma_typ: 0.2,
            sigma_rxp: 0.3,
            sigma_ryp: 0.4,
            ..UavJitter::hovering(UavLinkType::G2U)
        };
        let (m2, _) = uav_variances(&j, 300.0).unwrap();
        assert_relative_eq!(m2, 0.01 + 0.04 + 0.09 + 0.16, max_relative = 1e-14);
    }

    #[test]
    fn u2u_zero_boresight_reduces() {
        let mut j = UavJitter::hovering(UavLinkType::U2U);
        j.mu_tx = 0.0;
        j.mu_ty = 0.0;
        j.mu_rx = 0.0;
        j.mu_ry = 0.0;
        let l = 200.0;
        let (m2, a2) = uav_variances(&j, l).unwrap();
        let var_d = l * l * j.sigma_txo.powi(2) + j.sigma_txp.powi(2) + j.sigma_rxp.powi(2);
        assert_relative_eq!(m2, var_d, max_relative = 1e-13);
        assert_relative_eq!(
            a2,
            j.sigma_txo.powi(2) + j.sigma_rxo.powi(2),
            max_relative = 1e-13
        );
    }

    #[test]
    fn ordering_of_variances() {
        let l = 200.0;
        let m = |t| uav_variances(&UavJitter::hovering(t), l).unwrap();
        let (u2u, u2g, g2u) = (
            m(UavLinkType::U2U),
            m(UavLinkType::U2G),
            m(UavLinkType::G2U),
        );
        assert!(g2u.0 < u2g.0 && u2g.0 == u2u.0);
        assert!(u2g.1 < u2u.1);
        assert!(uav_variances(&UavJitter::hovering(UavLinkType::U2U), 0.0).is_err());
    }
}
