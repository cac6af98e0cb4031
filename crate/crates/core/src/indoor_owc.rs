//! VCSEL-based optical wireless link: Gaussian-beam misalignment channel,
//! lens and photodiode tradeoffs, noise and SNR, LIV curve and consumption
//! factor.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Pose;
use crate::mathkit::{integrate_disk, QuadratureSpec};
use crate::units::{db_to_linear, BOLTZMANN, ELEMENTARY_CHARGE, VACUUM_PERMITTIVITY};

/// Relative permittivity of the photodiode semiconductor.
pub const PD_RELATIVE_PERMITTIVITY: f64 = 12.0;
/// Carrier saturation velocity in the photodiode, m/s.
pub const PD_SATURATION_VELOCITY: f64 = 1e5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianBeam {
    pub wavelength: f64,
    pub waist: f64,
    pub lens_magnification: f64,
}

impl GaussianBeam {
    pub fn new(wavelength: f64, waist: f64, lens_magnification: f64) -> Result<Self> {
        let b = Self {
            wavelength,
            waist,
            lens_magnification,
        };
        b.validate()?;
        Ok(b)
    }

    /// 940 nm VCSEL with a 2.523 µm waist and no lens.
    pub fn reference() -> Self {
        Self {
            wavelength: 940e-9,
            waist: 2.523e-6,
            lens_magnification: 1.0,
        }
    }

    /// Same source with the lens chosen to give the requested HPBD full angle.
    pub fn with_hpbd(self, hpbd: f64) -> Result<Self> {
        if !(hpbd > 0.0) {
            return Err(Error::domain("GaussianBeam::with_hpbd", "HPBD must be > 0"));
        }
        let g = (2.0 * 2f64.ln()).sqrt() * self.wavelength / (PI * self.waist * hpbd);
        Self::new(self.wavelength, self.waist, g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.wavelength > 0.0) || !(self.waist > 0.0) {
            return Err(Error::domain(
                "GaussianBeam",
                "wavelength and waist must be > 0",
            ));
        }
        if !(self.lens_magnification >= 1.0) || !self.lens_magnification.is_finite() {
            return Err(Error::domain(
                "GaussianBeam",
                format!(
                    "lens magnification must be >= 1, got {}",
                    self.lens_magnification
                ),
            ));
        }
        Ok(())
    }

    /// Waist after the lens, w0' = G_lens·w0.
    pub fn effective_waist(&self) -> f64 {
        self.lens_magnification * self.waist
    }

    pub fn rayleigh_range(&self) -> f64 {
        let w = self.effective_waist();
        PI * w * w / self.wavelength
    }

    /// Squared beam radius at axial distance z.
    pub fn width_squared(&self, z: f64) -> f64 {
        let w0 = self.effective_waist();
        let r = z / self.rayleigh_range();
        w0 * w0 * (1.0 + r * r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotoDetector {
    pub area: f64,
    pub load_resistance: f64,
    pub responsivity: f64,
    /// CPC acceptance half-angle; 0 means no concentrator.
    pub cpc_half_angle: f64,
    pub tia_noise_figure_db: f64,
    pub rin_db_per_hz: f64,
}

impl PhotoDetector {
    /// Reference receiver with the raw area set by the bandwidth–area tradeoff.
    pub fn reference_for_bandwidth(bandwidth: f64, cpc_half_angle: f64) -> Result<Self> {
        let load_resistance = 50.0;
        let pd = Self {
            area: pd_bandwidth_area(load_resistance, PdTradeoff::AreaFromBandwidth, bandwidth)?,
            load_resistance,
            responsivity: 0.6,
            cpc_half_angle,
            tia_noise_figure_db: 5.0,
            rin_db_per_hz: -155.0,
        };
        pd.validate()?;
        Ok(pd)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.area > 0.0) || !(self.load_resistance > 0.0) || !(self.responsivity > 0.0) {
            return Err(Error::domain(
                "PhotoDetector",
                "area, load resistance and responsivity must be > 0",
            ));
        }
        if !(self.cpc_half_angle >= 0.0 && self.cpc_half_angle < PI / 2.0) {
            return Err(Error::domain(
                "PhotoDetector",
                format!(
                    "CPC half-angle must lie in [0, pi/2), got {}",
                    self.cpc_half_angle
                ),
            ));
        }
        Ok(())
    }

    /// Collecting area including the CPC when one is fitted.
    pub fn effective_area(&self) -> f64 {
        if self.cpc_half_angle > 0.0 {
            let s = self.cpc_half_angle.sin();
            PI / 4.0 / (s * s) * self.area
        } else {
            self.area
        }
    }

    pub fn effective_radius(&self) -> f64 {
        (self.effective_area() / PI).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VcselLiv {
    /// Slope efficiency η, W/A.
    pub efficiency: f64,
    pub threshold_current: f64,
    pub saturation_power: f64,
    pub fineness: f64,
    pub bias_voltage: f64,
    /// Bias-tee efficiency as a linear fraction.
    pub bias_tee_efficiency: f64,
}

impl VcselLiv {
    pub fn reference() -> Self {
        Self {
            efficiency: 0.66,
            threshold_current: 2e-3,
            saturation_power: 14.6e-3,
            fineness: 2.0,
            bias_voltage: 2.7,
            bias_tee_efficiency: db_to_linear(-1.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all_pos = [
            self.efficiency,
            self.threshold_current,
            self.saturation_power,
            self.fineness,
            self.bias_voltage,
        ]
        .iter()
        .all(|v| *v > 0.0 && v.is_finite());
        if !all_pos {
            return Err(Error::domain(
                "VcselLiv",
                "all LIV parameters must be finite and > 0",
            ));
        }
        if !(self.bias_tee_efficiency > 0.0 && self.bias_tee_efficiency <= 1.0) {
            return Err(Error::domain(
                "VcselLiv",
                "bias-tee efficiency must lie in (0, 1]",
            ));
        }
        Ok(())
    }
}

/// Beam radius squared and squared radial offset of a receiver-plane point
/// from the beam axis.
///
/// `point` is given in the receiver plane basis of `rx` (see
/// [`Pose::plane_basis`]), relative to the receiver centre.
pub fn beam_spot(beam: &GaussianBeam, tx: &Pose, rx: &Pose, point: [f64; 2]) -> Result<(f64, f64)> {
    let link = rx.point() - tx.point();
    if link.norm() == 0.0 {
        return Err(Error::DegenerateGeometry(
            "transmitter and receiver coincide".into(),
        ));
    }
    let (e1, e2) = rx.plane_basis();
    let p = rx.point() + e1 * point[0] + e2 * point[1] - tx.point();
    let d = tx.direction();
    let z = p.dot(&d);
    let rho2 = (p.norm_squared() - z * z).max(0.0);
    Ok((beam.width_squared(z), rho2))
}

/// Fraction of transmitted optical power collected by the detector.
///
/// The normalised Gaussian intensity is integrated over the effective
/// aperture disk in the receiver plane and projected onto the beam axis.
/// A back-facing receiver, or one whose line-of-sight incidence exceeds the
/// CPC acceptance angle, collects nothing.
pub fn channel_gain_owc(
    beam: &GaussianBeam,
    tx: &Pose,
    rx: &Pose,
    pd: &PhotoDetector,
    spec: &QuadratureSpec,
) -> Result<f64> {
    beam.validate()?;
    pd.validate()?;
    let link = rx.point() - tx.point();
    let distance = link.norm();
    if distance == 0.0 {
        return Err(Error::DegenerateGeometry(
            "transmitter and receiver coincide".into(),
        ));
    }
    let n_r = rx.direction();
    let obliquity = -tx.direction().dot(&n_r);
    if obliquity <= 0.0 {
        return Ok(0.0);
    }
    let cos_incidence = -(link / distance).dot(&n_r);
    if cos_incidence <= 0.0 {
        return Ok(0.0);
    }
    if pd.cpc_half_angle > 0.0 && cos_incidence.clamp(-1.0, 1.0).acos() > pd.cpc_half_angle {
        return Ok(0.0);
    }

    let (e1, e2) = rx.plane_basis();
    let d = tx.direction();
    let origin = rx.point() - tx.point();
    let radius = pd.effective_radius();
    // Skip the quadrature when the whole aperture sits more than ~18 beam
    // radii off axis; the captured fraction is then below 1e-300.
    let z_centre = origin.dot(&d);
    let offset = (origin.norm_squared() - z_centre * z_centre)
        .max(0.0)
        .sqrt()
        - radius;
    if offset > 0.0 && 2.0 * offset * offset / beam.width_squared(z_centre.abs() + radius) > 700.0 {
        return Ok(0.0);
    }
    let intensity = |q: [f64; 2]| {
        let p = origin + e1 * q[0] + e2 * q[1];
        let z = p.dot(&d);
        if z <= 0.0 {
            return 0.0;
        }
        let rho2 = (p.norm_squared() - z * z).max(0.0);
        let w2 = beam.width_squared(z);
        2.0 / (PI * w2) * (-2.0 * rho2 / w2).exp()
    };
    let captured = integrate_disk(intensity, [0.0, 0.0], radius, spec)?;
    Ok((captured * obliquity).clamp(0.0, 1.0))
}

/// Half-power beam divergence full angle after the lens.
pub fn hpbd_after_lens(beam: &GaussianBeam) -> f64 {
    (2.0 * 2f64.ln()).sqrt() * beam.wavelength / (PI * beam.lens_magnification * beam.waist)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdTradeoff {
    BandwidthFromArea,
    AreaFromBandwidth,
}

/// Photodiode bandwidth–area tradeoff B = (4πε0εr·R_L·A/(0.44·v_s))^(−1/2).
pub fn pd_bandwidth_area(load_resistance: f64, direction: PdTradeoff, value: f64) -> Result<f64> {
    if !(value > 0.0) || !(load_resistance > 0.0) {
        return Err(Error::domain(
            "pd_bandwidth_area",
            format!("value and load resistance must be > 0, got {value}, {load_resistance}"),
        ));
    }
    let k = 4.0 * PI * VACUUM_PERMITTIVITY * PD_RELATIVE_PERMITTIVITY * load_resistance
        / (0.44 * PD_SATURATION_VELOCITY);
    Ok(match direction {
        PdTradeoff::BandwidthFromArea => 1.0 / (k * value).sqrt(),
        PdTradeoff::AreaFromBandwidth => 1.0 / (k * value * value),
    })
}

/// CPC gain 1/sin²θ and the effective-area factor (π/4)·G_CPC.
pub fn cpc_gain(half_angle: f64) -> Result<(f64, f64)> {
    if !(half_angle > 0.0 && half_angle <= PI / 2.0) {
        return Err(Error::domain(
            "cpc_gain",
            format!("acceptance half-angle must lie in (0, pi/2], got {half_angle}"),
        ));
    }
    let s = half_angle.sin();
    let g = 1.0 / (s * s);
    Ok((g, PI / 4.0 * g))
}

/// Thermal, shot and relative-intensity noise current variance, A².
pub fn owc_noise_variance(
    pd: &PhotoDetector,
    bandwidth: f64,
    temperature: f64,
    received_power: f64,
) -> f64 {
    let photocurrent = pd.responsivity * received_power.max(0.0);
    let thermal = 4.0 * BOLTZMANN * temperature * bandwidth * db_to_linear(pd.tia_noise_figure_db)
        / pd.load_resistance;
    let shot = 2.0 * ELEMENTARY_CHARGE * bandwidth * photocurrent;
    let rin = bandwidth * db_to_linear(pd.rin_db_per_hz) * photocurrent * photocurrent;
    thermal + shot + rin
}

/// Electrical signal power for DCO-OFDM with clipping kept negligible.
pub fn owc_signal_power(tx_power: f64) -> f64 {
    tx_power * tx_power / 9.0
}

/// SNR for a known channel gain.
pub fn owc_snr_from_gain(
    pd: &PhotoDetector,
    gain: f64,
    tx_power: f64,
    bandwidth: f64,
    temperature: f64,
) -> f64 {
    let sigma2 = owc_noise_variance(pd, bandwidth, temperature, gain * tx_power);
    pd.responsivity.powi(2) * gain * gain * owc_signal_power(tx_power) / sigma2
}

#[allow(clippy::too_many_arguments)]
pub fn owc_snr(
    beam: &GaussianBeam,
    tx: &Pose,
    rx: &Pose,
    pd: &PhotoDetector,
    tx_power: f64,
    bandwidth: f64,
    temperature: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(tx_power >= 0.0) {
        return Err(Error::domain("owc_snr", "transmit power must be >= 0"));
    }
    if tx_power == 0.0 {
        return Ok(0.0);
    }
    let h = channel_gain_owc(beam, tx, rx, pd, spec)?;
    Ok(owc_snr_from_gain(pd, h, tx_power, bandwidth, temperature))
}

/// Optical output power for drive current `current`.
pub fn vcsel_liv(liv: &VcselLiv, current: f64) -> f64 {
    if current <= liv.threshold_current {
        return 0.0;
    }
    let x = liv.efficiency * (current - liv.threshold_current);
    let n2 = 2.0 * liv.fineness;
    x / (1.0 + (x / liv.saturation_power).powf(n2)).powf(1.0 / n2)
}

/// Drive current producing optical power `power`; returns the threshold
/// current for zero output.
pub fn vcsel_liv_inverse(liv: &VcselLiv, power: f64) -> Result<f64> {
    if !(power >= 0.0) {
        return Err(Error::domain(
            "vcsel_liv_inverse",
            format!("power must be >= 0, got {power}"),
        ));
    }
    if power >= liv.saturation_power {
        return Err(Error::InfeasiblePower {
            requested_w: power,
            saturation_w: liv.saturation_power,
        });
    }
    let n2 = 2.0 * liv.fineness;
    let x = power / (1.0 - (power / liv.saturation_power).powf(n2)).powf(1.0 / n2);
    Ok(liv.threshold_current + x / liv.efficiency)
}

/// Electrical power drawn by the transmitter for optical output `power`.
pub fn owc_transmitter_power(liv: &VcselLiv, power: f64) -> Result<f64> {
    Ok(vcsel_liv_inverse(liv, power)? * liv.bias_voltage / liv.bias_tee_efficiency)
}

/// Consumption factor B·log2(1+γ)/(P_T + P_R + P_others), bit/s/W.
pub fn cf_owc(
    snr: f64,
    bandwidth: f64,
    liv: &VcselLiv,
    tx_power: f64,
    receiver_power: f64,
    other_power: f64,
) -> Result<f64> {
    let p_total = owc_transmitter_power(liv, tx_power)? + receiver_power + other_power;
    if !(p_total > 0.0) {
        return Err(Error::domain("cf_owc", "total consumed power must be > 0"));
    }
    Ok(bandwidth * (1.0 + snr.max(0.0)).log2() / p_total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{direction_angles, rotate_about, Vec3};
    use approx::assert_relative_eq;

    fn aligned() -> (Pose, Pose) {
        (
            Pose::facing_down([1.5, 1.5, 2.95]),
            Pose::facing_up([1.5, 1.5, 0.95]),
        )
    }

    fn big_pd(radius: f64) -> PhotoDetector {
        PhotoDetector {
            area: PI * radius * radius,
            load_resistance: 50.0,
            responsivity: 0.6,
            cpc_half_angle: 0.0,
            tia_noise_figure_db: 5.0,
            rin_db_per_hz: -155.0,
        }
    }

    #[test]
    fn aligned_spot_radius() {
        let (tx, rx) = aligned();
        let beam = GaussianBeam::reference();
        assert_relative_eq!(beam.rayleigh_range(), 2.127_44e-5, max_relative = 1e-5);
        let (w2, rho2) = beam_spot(&beam, &tx, &rx, [0.0, 0.0]).unwrap();
        assert_relative_eq!(w2.sqrt(), 0.237_186_9, max_relative = 1e-6);
        assert!(rho2 < 1e-24);
        let (_, rho2) = beam_spot(&beam, &tx, &rx, [0.3, -0.4]).unwrap();
        assert_relative_eq!(rho2, 0.25, max_relative = 1e-12);
    }

    #[test]
    fn coincident_poses_rejected() {
        let p = Pose::facing_up([0.0; 3]);
        assert!(matches!(
            beam_spot(&GaussianBeam::reference(), &p, &p, [0.0, 0.0]),
            Err(Error::DegenerateGeometry(_))
        ));
    }

    #[test]
    fn large_aperture_collects_everything() {
        let (tx, rx) = aligned();
        let h = channel_gain_owc(
            &GaussianBeam::reference(),
            &tx,
            &rx,
            &big_pd(5.0),
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((h - 1.0).abs() < 1e-6, "{h}");
    }

    #[test]
    fn concentric_capture_closed_form() {
        let (tx, rx) = aligned();
        let beam = GaussianBeam::reference();
        let w2 = beam.width_squared(2.0);
        let r = (2.64e-6 / PI).sqrt();
        let h = channel_gain_owc(&beam, &tx, &rx, &big_pd(r), &QuadratureSpec::default()).unwrap();
        assert_relative_eq!(h, 1.0 - (-2.0 * r * r / w2).exp(), max_relative = 1e-8);
        assert_relative_eq!(h, 2.99e-5, max_relative = 2e-3);
    }

    #[test]
    fn receiver_turned_sideways_sees_nothing() {
        let (tx, _) = aligned();
        let rx = Pose::new([1.5, 1.5, 0.95], 0.0, 0.0);
        let h = channel_gain_owc(
            &GaussianBeam::reference(),
            &tx,
            &rx,
            &big_pd(0.01),
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(h < 1e-12);
    }

    #[test]
    fn cpc_gates_on_incidence() {
        let beam = GaussianBeam::reference()
            .with_hpbd(8f64.to_radians())
            .unwrap();
        let pd = PhotoDetector::reference_for_bandwidth(1e9, 4f64.to_radians()).unwrap();
        let tx = Pose::facing_down([1.5, 1.5, 2.95]);
        let inside = Pose::facing_up([1.6, 1.5, 0.95]);
        let outside = Pose::facing_up([1.8, 1.5, 0.95]);
        let spec = QuadratureSpec::default();
        assert!(channel_gain_owc(&beam, &tx, &inside, &pd, &spec).unwrap() > 0.0);
        assert_eq!(
            channel_gain_owc(&beam, &tx, &outside, &pd, &spec).unwrap(),
            0.0
        );
    }

    #[test]
    fn tilt_only_reduces_gain() {
        let beam = GaussianBeam::reference()
            .with_hpbd(6f64.to_radians())
            .unwrap();
        let pd = PhotoDetector::reference_for_bandwidth(1e9, 3f64.to_radians()).unwrap();
        let rx = Pose::facing_up([1.5, 1.5, 0.95]);
        let spec = QuadratureSpec::default();
        let mut prev = f64::INFINITY;
        for deg in 0..=15 {
            let tx = Pose::tilted_down([1.5, 1.5, 2.95], (deg as f64).to_radians(), 0.3);
            let h = channel_gain_owc(&beam, &tx, &rx, &pd, &spec).unwrap();
            assert!(h <= prev * (1.0 + 1e-9), "tilt {deg}: {h} > {prev}");
            prev = h;
        }
    }

    #[test]
    fn invariant_under_rotation_about_link_axis() {
        let beam = GaussianBeam::reference()
            .with_hpbd(8f64.to_radians())
            .unwrap();
        let pd = big_pd(0.05);
        let tx = Pose::tilted_down([1.4, 1.5, 2.95], 2f64.to_radians(), 0.7);
        let rx = Pose::tilted_up([1.5, 1.6, 0.95], 1f64.to_radians(), 2.0);
        let spec = QuadratureSpec::default();
        let base = channel_gain_owc(&beam, &tx, &rx, &pd, &spec).unwrap();
        let axis: Vec3 = rx.point() - tx.point();
        for angle in [0.4, 1.9, 3.0] {
            let rot = |p: &Pose| {
                let pos = tx.point() + rotate_about(&(p.point() - tx.point()), &axis, angle);
                let (az, el) = direction_angles(&rotate_about(&p.direction(), &axis, angle));
                Pose::new([pos.x, pos.y, pos.z], az, el)
            };
            let h = channel_gain_owc(&beam, &rot(&tx), &rot(&rx), &pd, &spec).unwrap();
            assert_relative_eq!(h, base, max_relative = 1e-9);
        }
    }

    #[test]
    fn hpbd_values() {
        let b = GaussianBeam::reference();
        assert_relative_eq!(hpbd_after_lens(&b), 0.139_633, max_relative = 1e-5);
        let b2 = GaussianBeam {
            lens_magnification: 2.0,
            ..b
        };
        assert_relative_eq!(hpbd_after_lens(&b2).to_degrees(), 4.0, epsilon = 1e-2);
        let b4 = b.with_hpbd(4f64.to_radians()).unwrap();
        assert_relative_eq!(
            hpbd_after_lens(&b4),
            4f64.to_radians(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn pd_tradeoff() {
        let a = pd_bandwidth_area(50.0, PdTradeoff::AreaFromBandwidth, 500e6).unwrap();
        assert_relative_eq!(a, 2.636_404e-6, max_relative = 1e-6);
        let b = pd_bandwidth_area(50.0, PdTradeoff::BandwidthFromArea, a).unwrap();
        assert_relative_eq!(b, 500e6, max_relative = 1e-12);
        let b4 = pd_bandwidth_area(50.0, PdTradeoff::BandwidthFromArea, 4.0 * a).unwrap();
        assert_relative_eq!(b4, 250e6, max_relative = 1e-12);
        assert!(pd_bandwidth_area(50.0, PdTradeoff::AreaFromBandwidth, 0.0).is_err());
    }

    #[test]
    fn cpc_values() {
        assert_relative_eq!(
            cpc_gain(30f64.to_radians()).unwrap().0,
            4.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(cpc_gain(PI / 2.0).unwrap().0, 1.0, max_relative = 1e-15);
        let (g, f) = cpc_gain(3f64.to_radians()).unwrap();
        assert_relative_eq!(g, 365.0898, max_relative = 1e-6);
        assert_relative_eq!(f, PI / 4.0 * g);
        assert!(cpc_gain(0.0).is_err());
        assert!(cpc_gain(2.0).is_err());
    }

    #[test]
    fn thermal_noise_value() {
        let pd = PhotoDetector::reference_for_bandwidth(1e9, 0.0).unwrap();
        let s = owc_noise_variance(&pd, 1e9, 295.0, 0.0);
        assert_relative_eq!(s, 1.030_375e-12, max_relative = 1e-5);
        assert_relative_eq!(
            owc_noise_variance(&pd, 2e9, 295.0, 0.0),
            2.0 * s,
            max_relative = 1e-14
        );
        assert!(owc_noise_variance(&pd, 1e9, 295.0, 1e-3) > s);
    }

    #[test]
    fn snr_quadratic_in_power_when_thermal_limited() {
        let pd = PhotoDetector::reference_for_bandwidth(1e9, 0.0).unwrap();
        let h = 1e-4;
        let s1 = owc_snr_from_gain(&pd, h, 1e-6, 1e9, 295.0);
        let s2 = owc_snr_from_gain(&pd, h, 1e-5, 1e9, 295.0);
        assert_relative_eq!((s2 / s1).log10(), 2.0, epsilon = 1e-3);
        assert_eq!(owc_snr_from_gain(&pd, 0.0, 1e-3, 1e9, 295.0), 0.0);
    }

    #[test]
    fn aligned_snr_golden() {
        // Independent scripted evaluation: closed-form concentric capture
        // with the CPC-boosted aperture, then the noise and SNR formulas.
        let (tx, rx) = aligned();
        let beam = GaussianBeam::reference()
            .with_hpbd(4f64.to_radians())
            .unwrap();
        let pd = PhotoDetector::reference_for_bandwidth(1e9, 2f64.to_radians()).unwrap();
        let snr = owc_snr(
            &beam,
            &tx,
            &rx,
            &pd,
            1e-3,
            1e9,
            295.0,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert_relative_eq!(snr, 14.046_637_141_838_55, max_relative = 1e-7);
    }

    #[test]
    fn liv_curve_and_inverse() {
        let liv = VcselLiv::reference();
        assert_eq!(vcsel_liv(&liv, 2e-3), 0.0);
        assert_relative_eq!(vcsel_liv(&liv, 10e-3), 5.257_66e-3, max_relative = 1e-5);
        assert!(vcsel_liv(&liv, 10.0) < liv.saturation_power);
        assert_relative_eq!(vcsel_liv(&liv, 1e3), 14.6e-3, max_relative = 1e-6);
        assert_eq!(vcsel_liv_inverse(&liv, 0.0).unwrap(), 2e-3);
        let p = vcsel_liv(&liv, 10e-3);
        assert_relative_eq!(
            vcsel_liv_inverse(&liv, p).unwrap(),
            10e-3,
            max_relative = 1e-12
        );
        assert!(matches!(
            vcsel_liv_inverse(&liv, 14.6e-3),
            Err(Error::InfeasiblePower { .. })
        ));
    }

    #[test]
    fn transmitter_power_at_1mw() {
        let liv = VcselLiv::reference();
        assert_relative_eq!(
            vcsel_liv_inverse(&liv, 1e-3).unwrap(),
            3.515_16e-3,
            max_relative = 1e-5
        );
        assert_relative_eq!(
            owc_transmitter_power(&liv, 1e-3).unwrap(),
            11.948e-3,
            max_relative = 1e-4
        );
    }

    #[test]
    fn cf_unit_case() {
        let liv = VcselLiv {
            threshold_current: 1e-3,
            bias_voltage: 1.0,
            bias_tee_efficiency: 1.0,
            ..VcselLiv::reference()
        };
        // P_T = I_th·V = 1 mW at zero optical output.
        let cf = cf_owc(1.0, 1.0, &liv, 0.0, 0.0, 0.999).unwrap();
        assert_relative_eq!(cf, 1.0, max_relative = 1e-12);
        assert_eq!(cf_owc(0.0, 1e9, &liv, 1e-3, 0.0, 0.1).unwrap(), 0.0);
    }
}
