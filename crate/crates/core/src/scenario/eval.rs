//! Per-kind parameter trees and evaluation of one sweep point.

use std::sync::OnceLock;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::config::{Metric, ScenarioKind};
use crate::error::{Error, Result};
use crate::geometry::Pose;
use crate::indoor_owc::{
    cf_owc, channel_gain_owc, owc_snr_from_gain, pd_bandwidth_area, GaussianBeam, PdTradeoff,
    PhotoDetector, VcselLiv,
};
use crate::indoor_thz::{
    cf_thz_link, received_power, thz_noise_power, thz_sinr, trace_multiray, AbsorptionModel,
    AbsorptionTable, ChainStage, HornPattern, Material, RoomScene, ThzChain,
};
use crate::mathkit::{QuadratureSpec, RngStream};
use crate::network::{
    cf_networked, coverage_probability, Deployment, DropPlan, NetworkPower, Technology, UserDrop,
};
use crate::outdoor::{
    outage_mc, thz_path_loss, turbulent_beam_width, uav_link_fso, uav_link_thz, AlphaMuParams,
    AngularPointing, DisplacementPointing, FsoLinkParams, MalagaParams, OutdoorChannel, SnrScale,
    ThzAngularChannel, ThzDisplacementChannel, ThzLinkParams, UavJitter, UavLinkType,
    WeatherPresets,
};
use crate::units::{db_to_linear, dbm_to_watts, linear_to_db, watts_to_dbm, SPEED_OF_LIGHT};

/// One metric at one sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricValue {
    pub value: f64,
    pub stderr: Option<f64>,
}

impl MetricValue {
    fn exact(value: f64) -> Self {
        Self {
            value,
            stderr: None,
        }
    }
}

const STANDARD_PRESSURE_PA: f64 = 101_325.0;

// ---------------------------------------------------------------- shared blocks

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PoseCfg {
    position_m: [f64; 3],
    tilt_deg: f64,
    tilt_azimuth_deg: f64,
}

impl PoseCfg {
    fn at(position_m: [f64; 3]) -> Self {
        Self {
            position_m,
            tilt_deg: 0.0,
            tilt_azimuth_deg: 0.0,
        }
    }

    fn facing_down(&self) -> Result<Pose> {
        self.check()?;
        Ok(Pose::tilted_down(
            self.position_m,
            self.tilt_deg.to_radians(),
            self.tilt_azimuth_deg.to_radians(),
        ))
    }

    fn facing_up(&self) -> Result<Pose> {
        self.check()?;
        Ok(Pose::tilted_up(
            self.position_m,
            self.tilt_deg.to_radians(),
            self.tilt_azimuth_deg.to_radians(),
        ))
    }

    fn check(&self) -> Result<()> {
        if self
            .position_m
            .iter()
            .chain([&self.tilt_deg, &self.tilt_azimuth_deg])
            .any(|v| !v.is_finite())
        {
            return Err(Error::Config("pose values must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BeamCfg {
    wavelength_m: f64,
    waist_m: f64,
    lens_magnification: f64,
    /// Overrides the lens magnification when set.
    hpbd_deg: Option<f64>,
}

impl Default for BeamCfg {
    fn default() -> Self {
        let b = GaussianBeam::reference();
        Self {
            wavelength_m: b.wavelength,
            waist_m: b.waist,
            lens_magnification: b.lens_magnification,
            hpbd_deg: None,
        }
    }
}

impl BeamCfg {
    fn build(&self) -> Result<GaussianBeam> {
        let b = GaussianBeam::new(self.wavelength_m, self.waist_m, self.lens_magnification)?;
        match self.hpbd_deg {
            Some(d) => b.with_hpbd(d.to_radians()),
            None => Ok(b),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DetectorCfg {
    /// Raw PD area; null derives it from the bandwidth.
    area_m2: Option<f64>,
    load_resistance_ohm: f64,
    responsivity_a_per_w: f64,
    /// Null matches the FoV to the beam divergence (half of the HPBD).
    cpc_half_angle_deg: Option<f64>,
    tia_noise_figure_db: f64,
    rin_db_per_hz: f64,
}

impl Default for DetectorCfg {
    fn default() -> Self {
        Self {
            area_m2: None,
            load_resistance_ohm: 50.0,
            responsivity_a_per_w: 0.6,
            cpc_half_angle_deg: None,
            tia_noise_figure_db: 5.0,
            rin_db_per_hz: -155.0,
        }
    }
}

impl DetectorCfg {
    fn build(&self, bandwidth: f64, matched_half_angle: f64) -> Result<PhotoDetector> {
        let area = match self.area_m2 {
            Some(a) => a,
            None => pd_bandwidth_area(
                self.load_resistance_ohm,
                PdTradeoff::AreaFromBandwidth,
                bandwidth,
            )?,
        };
        let pd = PhotoDetector {
            area,
            load_resistance: self.load_resistance_ohm,
            responsivity: self.responsivity_a_per_w,
            cpc_half_angle: self
                .cpc_half_angle_deg
                .map_or(matched_half_angle, f64::to_radians),
            tia_noise_figure_db: self.tia_noise_figure_db,
            rin_db_per_hz: self.rin_db_per_hz,
        };
        pd.validate()?;
        Ok(pd)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LivCfg {
    slope_efficiency_w_per_a: f64,
    threshold_current_a: f64,
    saturation_power_w: f64,
    fineness: f64,
    bias_voltage_v: f64,
    bias_tee_loss_db: f64,
}

impl Default for LivCfg {
    fn default() -> Self {
        let l = VcselLiv::reference();
        Self {
            slope_efficiency_w_per_a: l.efficiency,
            threshold_current_a: l.threshold_current,
            saturation_power_w: l.saturation_power,
            fineness: l.fineness,
            bias_voltage_v: l.bias_voltage,
            bias_tee_loss_db: 1.0,
        }
    }
}

impl LivCfg {
    fn build(&self) -> Result<VcselLiv> {
        let l = VcselLiv {
            efficiency: self.slope_efficiency_w_per_a,
            threshold_current: self.threshold_current_a,
            saturation_power: self.saturation_power_w,
            fineness: self.fineness,
            bias_voltage: self.bias_voltage_v,
            bias_tee_efficiency: db_to_linear(-self.bias_tee_loss_db),
        };
        l.validate()?;
        Ok(l)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RoomCfg {
    dimensions_m: [f64; 3],
    wall_refractive_index: f64,
    wall_roughness_m: f64,
    scatterers_per_reflection: usize,
    scatter_cloud_radius_m: f64,
    max_reflection_order: u8,
}

impl Default for RoomCfg {
    fn default() -> Self {
        let r = RoomScene::default_room();
        Self {
            dimensions_m: r.dimensions,
            wall_refractive_index: r.walls[0].refractive_index,
            wall_roughness_m: r.walls[0].roughness_sigma,
            scatterers_per_reflection: r.scatterers_per_reflection,
            scatter_cloud_radius_m: r.scatter_cloud_radius,
            max_reflection_order: r.max_reflection_order,
        }
    }
}

impl RoomCfg {
    fn build(&self) -> Result<RoomScene> {
        let room = RoomScene {
            dimensions: self.dimensions_m,
            walls: [Material {
                refractive_index: self.wall_refractive_index,
                roughness_sigma: self.wall_roughness_m,
            }; 6],
            scatterers_per_reflection: self.scatterers_per_reflection,
            scatter_cloud_radius: self.scatter_cloud_radius_m,
            max_reflection_order: self.max_reflection_order,
        };
        room.validate()?;
        Ok(room)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StageCfg {
    gain_db: f64,
    efficiency: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainCfg {
    stages: Vec<StageCfg>,
    lo_dc_power_w: f64,
    receiver_gain_db: f64,
    noise_figure_db: f64,
    pn_floor_dbc_per_hz: f64,
}

impl Default for ChainCfg {
    fn default() -> Self {
        let c = ThzChain::reference();
        Self {
            stages: c
                .stages
                .iter()
                .map(|s| StageCfg {
                    gain_db: linear_to_db(s.gain),
                    efficiency: s.efficiency,
                })
                .collect(),
            lo_dc_power_w: c.lo_dc_power,
            receiver_gain_db: linear_to_db(c.receiver_gain),
            noise_figure_db: c.noise_figure_db,
            pn_floor_dbc_per_hz: linear_to_db(c.pn_floor),
        }
    }
}

impl ChainCfg {
    fn build(&self) -> Result<ThzChain> {
        let c = ThzChain {
            stages: self
                .stages
                .iter()
                .map(|s| ChainStage {
                    gain: db_to_linear(s.gain_db),
                    efficiency: s.efficiency,
                })
                .collect(),
            lo_dc_power: self.lo_dc_power_w,
            receiver_gain: db_to_linear(self.receiver_gain_db),
            noise_figure_db: self.noise_figure_db,
            pn_floor: db_to_linear(self.pn_floor_dbc_per_hz),
        };
        c.validate()?;
        if c.stages.is_empty() {
            return Err(Error::Config("chain needs at least one stage".into()));
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum AbsorptionChoice {
    None,
    LineModel,
    BundledTable,
}

fn kappa(
    choice: AbsorptionChoice,
    f: f64,
    rh: f64,
    temperature: f64,
    pressure: f64,
) -> Result<f64> {
    static TABLE: OnceLock<AbsorptionTable> = OnceLock::new();
    let model = match choice {
        AbsorptionChoice::None => AbsorptionModel::None,
        AbsorptionChoice::LineModel => AbsorptionModel::LineModel,
        AbsorptionChoice::BundledTable => {
            AbsorptionModel::Table(TABLE.get_or_init(AbsorptionTable::bundled).clone())
        }
    };
    model.coefficient(f, rh, temperature, pressure)
}

fn weather_per_m(name: &str, override_db_per_km: Option<f64>) -> Result<f64> {
    static PRESETS: OnceLock<WeatherPresets> = OnceLock::new();
    match override_db_per_km {
        Some(db) if db >= 0.0 => Ok(db * 10f64.ln() / 10.0 / 1000.0),
        Some(db) => Err(Error::Config(format!(
            "attenuation must be >= 0 dB/km, got {db}"
        ))),
        None => PRESETS.get_or_init(WeatherPresets::bundled).per_m(name),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MalagaCfg {
    los_power: f64,
    /// 2b0.
    scatter_power: f64,
    coupling: f64,
    phase_delta_rad: f64,
    alpha: f64,
    beta: f64,
}

impl Default for MalagaCfg {
    fn default() -> Self {
        let m = MalagaParams::reference();
        Self {
            los_power: m.los_power,
            scatter_power: m.scatter_power,
            coupling: m.coupling,
            phase_delta_rad: m.phase_delta,
            alpha: m.large_scale,
            beta: m.small_scale,
        }
    }
}

impl MalagaCfg {
    fn build(&self) -> Result<MalagaParams> {
        let m = MalagaParams {
            los_power: self.los_power,
            scatter_power: self.scatter_power,
            coupling: self.coupling,
            phase_delta: self.phase_delta_rad,
            large_scale: self.alpha,
            small_scale: self.beta,
        };
        m.validate()?;
        Ok(m)
    }
}

fn default_fading() -> AlphaMuParams {
    AlphaMuParams {
        alpha: 2.0,
        mu: 1.0,
        root_mean: 1.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum SnrMode {
    Average,
    LinkBudget,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SnrCfg {
    mode: SnrMode,
    average_snr_db: f64,
    tx_power_dbm: f64,
    noise_power_dbm: f64,
    /// FSO only.
    responsivity_a_per_w: f64,
}

impl Default for SnrCfg {
    fn default() -> Self {
        Self {
            mode: SnrMode::Average,
            average_snr_db: 20.0,
            tx_power_dbm: 10.0,
            noise_power_dbm: -110.0,
            responsivity_a_per_w: 0.7,
        }
    }
}

impl SnrCfg {
    fn scale(&self, optical: bool) -> Result<SnrScale> {
        let finite = [self.average_snr_db, self.tx_power_dbm, self.noise_power_dbm];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("SNR settings must be finite".into()));
        }
        Ok(match self.mode {
            SnrMode::Average => SnrScale::Average(db_to_linear(self.average_snr_db)),
            SnrMode::LinkBudget if optical => {
                if !(self.responsivity_a_per_w > 0.0) {
                    return Err(Error::Config("responsivity must be > 0".into()));
                }
                SnrScale::fso_link_budget(
                    self.responsivity_a_per_w,
                    dbm_to_watts(self.tx_power_dbm),
                    dbm_to_watts(self.noise_power_dbm),
                )
            }
            SnrMode::LinkBudget => SnrScale::thz_link_budget(
                dbm_to_watts(self.tx_power_dbm),
                dbm_to_watts(self.noise_power_dbm),
            ),
        })
    }
}

fn positive(what: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "{what} must be finite and > 0, got {v}"
        )))
    }
}

fn non_negative(what: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "{what} must be finite and >= 0, got {v}"
        )))
    }
}

// ---------------------------------------------------------------- indoor SISO OWC

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SisoOwcCfg {
    beam: BeamCfg,
    detector: DetectorCfg,
    liv: LivCfg,
    tx: PoseCfg,
    rx: PoseCfg,
    tx_power_dbm: f64,
    bandwidth_hz: f64,
    temperature_k: f64,
    receiver_power_w: f64,
    other_power_w: f64,
}

impl Default for SisoOwcCfg {
    fn default() -> Self {
        Self {
            beam: BeamCfg::default(),
            detector: DetectorCfg::default(),
            liv: LivCfg::default(),
            tx: PoseCfg::at([1.5, 1.5, 2.95]),
            rx: PoseCfg::at([1.5, 1.5, 0.95]),
            tx_power_dbm: 0.0,
            bandwidth_hz: 1e9,
            temperature_k: 296.0,
            receiver_power_w: 0.0,
            other_power_w: 0.0,
        }
    }
}

struct SisoOwc {
    beam: GaussianBeam,
    pd: PhotoDetector,
    liv: VcselLiv,
    tx: Pose,
    rx: Pose,
    cfg: SisoOwcCfg,
}

impl SisoOwcCfg {
    fn build(self) -> Result<SisoOwc> {
        positive("bandwidth_hz", self.bandwidth_hz)?;
        positive("temperature_k", self.temperature_k)?;
        non_negative("receiver_power_w", self.receiver_power_w)?;
        non_negative("other_power_w", self.other_power_w)?;
        let beam = self.beam.build()?;
        let hpbd = crate::indoor_owc::hpbd_after_lens(&beam);
        Ok(SisoOwc {
            pd: self.detector.build(self.bandwidth_hz, hpbd / 2.0)?,
            liv: self.liv.build()?,
            tx: self.tx.facing_down()?,
            rx: self.rx.facing_up()?,
            beam,
            cfg: self,
        })
    }
}

fn eval_siso_owc(m: &SisoOwc, metrics: &[Metric]) -> Result<Vec<MetricValue>> {
    let spec = QuadratureSpec::default();
    let h = channel_gain_owc(&m.beam, &m.tx, &m.rx, &m.pd, &spec)?;
    let pt = dbm_to_watts(m.cfg.tx_power_dbm);
    let snr = owc_snr_from_gain(&m.pd, h, pt, m.cfg.bandwidth_hz, m.cfg.temperature_k);
    metrics
        .iter()
        .map(|metric| {
            Ok(MetricValue::exact(match metric {
                Metric::Snr => linear_to_db(snr),
                Metric::ChannelGainDb => linear_to_db(h),
                Metric::Cf => cf_owc(
                    snr,
                    m.cfg.bandwidth_hz,
                    &m.liv,
                    pt,
                    m.cfg.receiver_power_w,
                    m.cfg.other_power_w,
                )?,
                _ => unreachable!("rejected at load"),
            }))
        })
        .collect()
}

// ---------------------------------------------------------------- indoor SISO THz

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SisoThzCfg {
    frequency_hz: f64,
    relative_humidity: f64,
    temperature_k: f64,
    pressure_pa: f64,
    absorption_model: AbsorptionChoice,
    /// HPBW of the horns at both ends.
    hpbw_deg: f64,
    tx: PoseCfg,
    rx: PoseCfg,
    room: RoomCfg,
    chain: ChainCfg,
    tx_power_dbm: f64,
    bandwidth_hz: f64,
    other_power_w: f64,
}

impl Default for SisoThzCfg {
    fn default() -> Self {
        Self {
            frequency_hz: 350e9,
            relative_humidity: 0.5,
            temperature_k: 296.0,
            pressure_pa: STANDARD_PRESSURE_PA,
            absorption_model: AbsorptionChoice::LineModel,
            hpbw_deg: 8.0,
            tx: PoseCfg::at([1.5, 1.5, 2.95]),
            rx: PoseCfg::at([1.5, 1.5, 0.95]),
            room: RoomCfg::default(),
            chain: ChainCfg::default(),
            tx_power_dbm: watts_to_dbm(40e-6),
            bandwidth_hz: 1e9,
            other_power_w: 0.0,
        }
    }
}

struct SisoThz {
    kappa: f64,
    pattern: HornPattern,
    tx: Pose,
    rx: Pose,
    room: RoomScene,
    chain: ThzChain,
    cfg: SisoThzCfg,
}

impl SisoThzCfg {
    fn build(self) -> Result<SisoThz> {
        positive("bandwidth_hz", self.bandwidth_hz)?;
        positive("temperature_k", self.temperature_k)?;
        non_negative("other_power_w", self.other_power_w)?;
        let room = self.room.build()?;
        let tx = self.tx.facing_down()?;
        let rx = self.rx.facing_up()?;
        for p in [&tx, &rx] {
            if !room.contains(&p.point()) {
                return Err(Error::Config(
                    "transmitter and receiver must lie inside the room".into(),
                ));
            }
        }
        Ok(SisoThz {
            kappa: kappa(
                self.absorption_model,
                self.frequency_hz,
                self.relative_humidity,
                self.temperature_k,
                self.pressure_pa,
            )?,
            pattern: HornPattern::from_beamwidth(self.hpbw_deg.to_radians())?,
            chain: self.chain.build()?,
            tx,
            rx,
            room,
            cfg: self,
        })
    }
}

fn eval_siso_thz(m: &SisoThz, metrics: &[Metric]) -> Result<Vec<MetricValue>> {
    let c = &m.cfg;
    let (_, transfer) = trace_multiray(
        &m.room,
        &m.tx,
        &m.rx,
        &m.pattern,
        &m.pattern,
        c.frequency_hz,
        m.kappa,
    )?;
    let gain = transfer.norm_sqr();
    let pt = dbm_to_watts(c.tx_power_dbm);
    let received = received_power(pt, gain, &m.chain);
    metrics
        .iter()
        .map(|metric| {
            Ok(MetricValue::exact(match metric {
                Metric::Snr => linear_to_db(
                    received
                        / thz_noise_power(c.bandwidth_hz, c.temperature_k, m.chain.noise_figure_db),
                ),
                Metric::Sinr => linear_to_db(thz_sinr(
                    received,
                    c.bandwidth_hz,
                    c.temperature_k,
                    &m.chain,
                )),
                Metric::ChannelGainDb => linear_to_db(gain),
                Metric::Cf => cf_thz_link(
                    pt,
                    gain,
                    c.bandwidth_hz,
                    c.temperature_k,
                    &m.chain,
                    c.other_power_w,
                )?,
                _ => unreachable!("rejected at load"),
            }))
        })
        .collect()
}

// ---------------------------------------------------------------- indoor network

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum NetTech {
    Thz,
    Owc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetThzCfg {
    frequency_hz: f64,
    relative_humidity: f64,
    pressure_pa: f64,
    absorption_model: AbsorptionChoice,
    chain: ChainCfg,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetOwcCfg {
    wavelength_m: f64,
    waist_m: f64,
    detector: DetectorCfg,
    liv: LivCfg,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkCfg {
    technology: NetTech,
    grid_side: usize,
    room: RoomCfg,
    ap_height_m: f64,
    receiver_height_m: f64,
    /// THz HPBW, or VCSEL HPBD with the receiver FoV matched to it.
    beam_deg: f64,
    /// Null picks 40 µW for THz and 1 mW for OWC.
    tx_power_w: Option<f64>,
    bandwidth_hz: f64,
    temperature_k: f64,
    threshold_db: f64,
    /// Users placed for the networked CF.
    users: usize,
    others_per_ap_w: f64,
    receiver_power_w: f64,
    thz: NetThzCfg,
    owc: NetOwcCfg,
}

impl Default for NetworkCfg {
    fn default() -> Self {
        let b = GaussianBeam::reference();
        Self {
            technology: NetTech::Thz,
            grid_side: 6,
            room: RoomCfg::default(),
            ap_height_m: 2.95,
            receiver_height_m: 0.95,
            beam_deg: 6.0,
            tx_power_w: None,
            bandwidth_hz: 500e6,
            temperature_k: 296.0,
            threshold_db: 5.0,
            users: 4,
            others_per_ap_w: 0.0,
            receiver_power_w: 0.0,
            thz: NetThzCfg {
                frequency_hz: 350e9,
                relative_humidity: 0.5,
                pressure_pa: STANDARD_PRESSURE_PA,
                absorption_model: AbsorptionChoice::LineModel,
                chain: ChainCfg::default(),
            },
            owc: NetOwcCfg {
                wavelength_m: b.wavelength,
                waist_m: b.waist,
                detector: DetectorCfg::default(),
                liv: LivCfg::default(),
            },
        }
    }
}

struct Network {
    dep: Deployment,
    cfg: NetworkCfg,
}

impl NetworkCfg {
    fn build(self) -> Result<Network> {
        positive("bandwidth_hz", self.bandwidth_hz)?;
        positive("temperature_k", self.temperature_k)?;
        positive("beam_deg", self.beam_deg)?;
        non_negative("others_per_ap_w", self.others_per_ap_w)?;
        non_negative("receiver_power_w", self.receiver_power_w)?;
        if !self.threshold_db.is_finite() {
            return Err(Error::Config("threshold_db must be finite".into()));
        }
        if self.users == 0 {
            return Err(Error::Config("users must be >= 1".into()));
        }
        let room = self.room.build()?;
        if !(self.receiver_height_m >= 0.0 && self.receiver_height_m < self.ap_height_m) {
            return Err(Error::Config(
                "receiver height must lie in [0, AP height)".into(),
            ));
        }
        let width = self.beam_deg.to_radians();
        let (technology, default_power) = match self.technology {
            NetTech::Thz => {
                let t = &self.thz;
                (
                    Technology::Thz {
                        pattern: HornPattern::from_beamwidth(width)?,
                        chain: t.chain.build()?,
                        frequency: t.frequency_hz,
                        kappa: kappa(
                            t.absorption_model,
                            t.frequency_hz,
                            t.relative_humidity,
                            self.temperature_k,
                            t.pressure_pa,
                        )?,
                    },
                    40e-6,
                )
            }
            NetTech::Owc => {
                let o = &self.owc;
                (
                    Technology::Owc {
                        beam: GaussianBeam::new(o.wavelength_m, o.waist_m, 1.0)?
                            .with_hpbd(width)?,
                        detector: o.detector.build(self.bandwidth_hz, width / 2.0)?,
                        liv: o.liv.build()?,
                    },
                    1e-3,
                )
            }
        };
        let dep = Deployment {
            grid_side: self.grid_side,
            room,
            ap_height: self.ap_height_m,
            technology,
            tx_power: self.tx_power_w.unwrap_or(default_power),
        };
        dep.validate()?;
        Ok(Network { dep, cfg: self })
    }
}

fn eval_network(
    m: &Network,
    metrics: &[Metric],
    seed: u64,
    samples: usize,
) -> Result<Vec<MetricValue>> {
    let c = &m.cfg;
    let spec = QuadratureSpec::default();
    metrics
        .iter()
        .map(|metric| match metric {
            Metric::Cp => {
                let plan = DropPlan {
                    drops: samples,
                    receiver_height: c.receiver_height_m,
                    seed,
                };
                let cov = coverage_probability(
                    &m.dep,
                    db_to_linear(c.threshold_db),
                    &plan,
                    c.bandwidth_hz,
                    c.temperature_k,
                    &spec,
                )?;
                Ok(MetricValue {
                    value: cov.probability,
                    stderr: Some(cov.stderr),
                })
            }
            Metric::Cf => {
                // Substream ids below `samples` belong to the CP drops.
                let mut rng = RngStream::new(seed, u64::MAX);
                let users = UserDrop::uniform(&m.dep.room, c.receiver_height_m, c.users, &mut rng);
                let power = NetworkPower {
                    others_per_ap: c.others_per_ap_w,
                    receiver: c.receiver_power_w,
                };
                Ok(MetricValue::exact(cf_networked(
                    &m.dep,
                    &users,
                    c.bandwidth_hz,
                    c.temperature_k,
                    &power,
                    &spec,
                )?))
            }
            _ => unreachable!("rejected at load"),
        })
        .collect()
}

// ---------------------------------------------------------------- outdoor

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutdoorFsoCfg {
    wavelength_m: f64,
    waist_m: f64,
    length_m: f64,
    cn2: f64,
    aperture_radius_m: f64,
    fov_rad: f64,
    displacement_std_m: f64,
    aoa_std_rad: f64,
    /// 2 when one end vibrates, 4 when both do.
    aoa_sides: f64,
    weather: String,
    /// Overrides the weather preset when set.
    attenuation_db_per_km: Option<f64>,
    turbulence: MalagaCfg,
    snr: SnrCfg,
    threshold_db: f64,
}

impl Default for OutdoorFsoCfg {
    fn default() -> Self {
        Self {
            wavelength_m: 1550e-9,
            waist_m: 3.0,
            length_m: 1000.0,
            cn2: 1e-14,
            aperture_radius_m: 0.05,
            fov_rad: 0.02,
            displacement_std_m: 1.5,
            aoa_std_rad: 0.005,
            aoa_sides: 2.0,
            weather: "clear".into(),
            attenuation_db_per_km: None,
            turbulence: MalagaCfg::default(),
            snr: SnrCfg::default(),
            threshold_db: 5.0,
        }
    }
}

impl OutdoorFsoCfg {
    fn build(&self) -> Result<(OutdoorChannel, SnrScale, f64)> {
        let dev = FsoLinkParams {
            wavelength: self.wavelength_m,
            waist: self.waist_m,
            cn2: self.cn2,
            aperture_radius: self.aperture_radius_m,
            fov: self.fov_rad,
            attenuation_per_m: weather_per_m(&self.weather, self.attenuation_db_per_km)?,
            turbulence: self.turbulence.build()?,
        };
        let ch = dev.channel(
            self.length_m,
            self.displacement_std_m,
            self.aoa_std_rad,
            self.aoa_sides,
        )?;
        finite_threshold(self.threshold_db)?;
        Ok((
            OutdoorChannel::Fso(ch),
            self.snr.scale(true)?,
            self.threshold_db,
        ))
    }
}

fn finite_threshold(db: f64) -> Result<()> {
    if db.is_finite() {
        Ok(())
    } else {
        Err(Error::Config("threshold_db must be finite".into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum PointingModel {
    Displacement,
    Angular,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DisplacementCfg {
    waist_m: f64,
    aperture_radius_m: f64,
    displacement_std_m: f64,
    antenna_gain_dbi: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AngularCfg {
    /// N for N × N arrays at both ends.
    n_ant: f64,
    angle_std_rad: f64,
    /// Per-angle stds (Tx az, Tx el, Rx az, Rx el); overrides angle_std_rad.
    angle_stds_rad: Option<[f64; 4]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutdoorThzCfg {
    frequency_hz: f64,
    length_m: f64,
    relative_humidity: f64,
    temperature_k: f64,
    pressure_pa: f64,
    absorption_model: AbsorptionChoice,
    pointing_model: PointingModel,
    fading: AlphaMuParams,
    displacement: DisplacementCfg,
    angular: AngularCfg,
    snr: SnrCfg,
    threshold_db: f64,
}

impl Default for OutdoorThzCfg {
    fn default() -> Self {
        Self {
            frequency_hz: 350e9,
            length_m: 1000.0,
            relative_humidity: 0.1,
            temperature_k: 296.0,
            pressure_pa: STANDARD_PRESSURE_PA,
            absorption_model: AbsorptionChoice::LineModel,
            pointing_model: PointingModel::Displacement,
            fading: default_fading(),
            displacement: DisplacementCfg {
                waist_m: 3.0,
                aperture_radius_m: 0.05,
                displacement_std_m: 1.5,
                antenna_gain_dbi: 55.0,
            },
            angular: AngularCfg {
                n_ant: 80.0,
                angle_std_rad: 1e-3,
                angle_stds_rad: None,
            },
            snr: SnrCfg::default(),
            threshold_db: 5.0,
        }
    }
}

impl OutdoorThzCfg {
    fn build(&self) -> Result<(OutdoorChannel, SnrScale, f64)> {
        positive("length_m", self.length_m)?;
        let k = kappa(
            self.absorption_model,
            self.frequency_hz,
            self.relative_humidity,
            self.temperature_k,
            self.pressure_pa,
        )?;
        let ch = match self.pointing_model {
            PointingModel::Displacement => {
                let d = &self.displacement;
                let g = db_to_linear(d.antenna_gain_dbi);
                OutdoorChannel::ThzDisplacement(ThzDisplacementChannel {
                    path_gain: thz_path_loss(self.frequency_hz, self.length_m, g, g, k, true)?,
                    fading: self.fading,
                    pointing: DisplacementPointing {
                        beam_width: turbulent_beam_width(
                            d.waist_m,
                            SPEED_OF_LIGHT / self.frequency_hz,
                            self.length_m,
                            0.0,
                        )?,
                        aperture_radius: d.aperture_radius_m,
                        displacement_std: d.displacement_std_m,
                    },
                })
            }
            PointingModel::Angular => {
                let a = &self.angular;
                positive("n_ant", a.n_ant)?;
                let mut pointing = AngularPointing::ula(a.n_ant, a.angle_std_rad);
                if let Some(stds) = a.angle_stds_rad {
                    pointing.angle_stds = stds;
                }
                OutdoorChannel::ThzAngular(ThzAngularChannel {
                    path_gain: thz_path_loss(self.frequency_hz, self.length_m, 1.0, 1.0, k, false)?,
                    fading: self.fading,
                    pointing,
                })
            }
        };
        ch.validate()?;
        finite_threshold(self.threshold_db)?;
        Ok((ch, self.snr.scale(false)?, self.threshold_db))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum UavTech {
    Fso,
    Thz,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JitterCfg {
    sigma_txp_m: f64,
    sigma_typ_m: f64,
    sigma_rxp_m: f64,
    sigma_ryp_m: f64,
    sigma_txo_rad: f64,
    sigma_tyo_rad: f64,
    sigma_rxo_rad: f64,
    sigma_ryo_rad: f64,
    mu_tx_rad: f64,
    mu_ty_rad: f64,
    mu_rx_rad: f64,
    mu_ry_rad: f64,
}

impl Default for JitterCfg {
    fn default() -> Self {
        let j = UavJitter::hovering(UavLinkType::U2U);
        Self {
            sigma_txp_m: j.sigma_txp,
            sigma_typ_m: j.sigma_typ,
            sigma_rxp_m: j.sigma_rxp,
            sigma_ryp_m: j.sigma_ryp,
            sigma_txo_rad: j.sigma_txo,
            sigma_tyo_rad: j.sigma_tyo,
            sigma_rxo_rad: j.sigma_rxo,
            sigma_ryo_rad: j.sigma_ryo,
            mu_tx_rad: j.mu_tx,
            mu_ty_rad: j.mu_ty,
            mu_rx_rad: j.mu_rx,
            mu_ry_rad: j.mu_ry,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UavFsoCfg {
    wavelength_m: f64,
    waist_m: f64,
    cn2: f64,
    aperture_radius_m: f64,
    fov_rad: f64,
    weather: String,
    attenuation_db_per_km: Option<f64>,
    turbulence: MalagaCfg,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UavThzCfg {
    frequency_hz: f64,
    relative_humidity: f64,
    temperature_k: f64,
    pressure_pa: f64,
    absorption_model: AbsorptionChoice,
    n_ant: f64,
    fading: AlphaMuParams,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UavCfg {
    technology: UavTech,
    link_type: UavLinkType,
    length_m: f64,
    jitter: JitterCfg,
    fso: UavFsoCfg,
    thz: UavThzCfg,
    snr: SnrCfg,
    threshold_db: f64,
}

impl Default for UavCfg {
    fn default() -> Self {
        Self {
            technology: UavTech::Fso,
            link_type: UavLinkType::U2U,
            length_m: 200.0,
            jitter: JitterCfg::default(),
            fso: UavFsoCfg {
                wavelength_m: 1550e-9,
                waist_m: 3.0,
                cn2: 1e-14,
                aperture_radius_m: 0.05,
                fov_rad: 0.02,
                weather: "light_fog".into(),
                attenuation_db_per_km: None,
                turbulence: MalagaCfg::default(),
            },
            thz: UavThzCfg {
                frequency_hz: 350e9,
                relative_humidity: 0.4,
                temperature_k: 296.0,
                pressure_pa: STANDARD_PRESSURE_PA,
                absorption_model: AbsorptionChoice::LineModel,
                n_ant: 80.0,
                fading: default_fading(),
            },
            snr: SnrCfg::default(),
            threshold_db: 5.0,
        }
    }
}

impl UavCfg {
    fn build(&self) -> Result<(OutdoorChannel, SnrScale, f64)> {
        let j = &self.jitter;
        let jitter = UavJitter {
            sigma_txp: j.sigma_txp_m,
            sigma_typ: j.sigma_typ_m,
            sigma_rxp: j.sigma_rxp_m,
            sigma_ryp: j.sigma_ryp_m,
            sigma_txo: j.sigma_txo_rad,
            sigma_tyo: j.sigma_tyo_rad,
            sigma_rxo: j.sigma_rxo_rad,
            sigma_ryo: j.sigma_ryo_rad,
            mu_tx: j.mu_tx_rad,
            mu_ty: j.mu_ty_rad,
            mu_rx: j.mu_rx_rad,
            mu_ry: j.mu_ry_rad,
            link_type: self.link_type,
        };
        finite_threshold(self.threshold_db)?;
        match self.technology {
            UavTech::Fso => {
                let f = &self.fso;
                let dev = FsoLinkParams {
                    wavelength: f.wavelength_m,
                    waist: f.waist_m,
                    cn2: f.cn2,
                    aperture_radius: f.aperture_radius_m,
                    fov: f.fov_rad,
                    attenuation_per_m: weather_per_m(&f.weather, f.attenuation_db_per_km)?,
                    turbulence: f.turbulence.build()?,
                };
                let ch = uav_link_fso(&jitter, self.length_m, &dev)?;
                Ok((
                    OutdoorChannel::Fso(ch),
                    self.snr.scale(true)?,
                    self.threshold_db,
                ))
            }
            UavTech::Thz => {
                let t = &self.thz;
                let dev = ThzLinkParams {
                    frequency: t.frequency_hz,
                    kappa: kappa(
                        t.absorption_model,
                        t.frequency_hz,
                        t.relative_humidity,
                        t.temperature_k,
                        t.pressure_pa,
                    )?,
                    n_ant: t.n_ant,
                    fading: t.fading,
                };
                let ch = uav_link_thz(&jitter, self.length_m, &dev)?;
                Ok((
                    OutdoorChannel::ThzAngular(ch),
                    self.snr.scale(false)?,
                    self.threshold_db,
                ))
            }
        }
    }
}

fn eval_outdoor(
    channel: &OutdoorChannel,
    snr: SnrScale,
    threshold_db: f64,
    metrics: &[Metric],
    seed: u64,
    samples: usize,
) -> Result<Vec<MetricValue>> {
    let h_ref = channel.reference_gain()?;
    metrics
        .iter()
        .map(|metric| match metric {
            Metric::Outage => {
                let o = outage_mc(channel, snr, db_to_linear(threshold_db), samples, seed)?;
                Ok(MetricValue {
                    value: o.probability,
                    stderr: Some(o.stderr),
                })
            }
            Metric::Snr => Ok(MetricValue::exact(linear_to_db(
                snr.factor(channel)? * h_ref * h_ref,
            ))),
            // FSO h is an optical power gain, THz h an amplitude.
            Metric::ChannelGainDb => Ok(MetricValue::exact(match channel {
                OutdoorChannel::Fso(_) => linear_to_db(h_ref),
                _ => linear_to_db(h_ref * h_ref),
            })),
            _ => unreachable!("rejected at load"),
        })
        .collect()
}

// ---------------------------------------------------------------- dispatch

pub(super) fn supports(kind: ScenarioKind, metric: Metric) -> bool {
    use Metric::*;
    match kind {
        ScenarioKind::IndoorSisoOwc => matches!(metric, Snr | Cf | ChannelGainDb),
        ScenarioKind::IndoorSisoThz => matches!(metric, Snr | Sinr | Cf | ChannelGainDb),
        ScenarioKind::IndoorNetwork => matches!(metric, Cp | Cf),
        ScenarioKind::OutdoorFso | ScenarioKind::OutdoorThz | ScenarioKind::Uav => {
            matches!(metric, Outage | Snr | ChannelGainDb)
        }
    }
}

pub(super) fn defaults(kind: ScenarioKind) -> Value {
    let v = match kind {
        ScenarioKind::IndoorSisoOwc => serde_json::to_value(SisoOwcCfg::default()),
        ScenarioKind::IndoorSisoThz => serde_json::to_value(SisoThzCfg::default()),
        ScenarioKind::IndoorNetwork => serde_json::to_value(NetworkCfg::default()),
        ScenarioKind::OutdoorFso => serde_json::to_value(OutdoorFsoCfg::default()),
        ScenarioKind::OutdoorThz => serde_json::to_value(OutdoorThzCfg::default()),
        ScenarioKind::Uav => serde_json::to_value(UavCfg::default()),
    };
    v.expect("defaults serialise")
}

fn parse<T: DeserializeOwned>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Config(e.to_string()))
}

enum Built {
    SisoOwc(Box<SisoOwc>),
    SisoThz(Box<SisoThz>),
    Network(Box<Network>),
    Outdoor(OutdoorChannel, SnrScale, f64),
}

fn build(kind: ScenarioKind, params: &Value) -> Result<Built> {
    Ok(match kind {
        ScenarioKind::IndoorSisoOwc => {
            Built::SisoOwc(Box::new(parse::<SisoOwcCfg>(params)?.build()?))
        }
        ScenarioKind::IndoorSisoThz => {
            Built::SisoThz(Box::new(parse::<SisoThzCfg>(params)?.build()?))
        }
        ScenarioKind::IndoorNetwork => {
            Built::Network(Box::new(parse::<NetworkCfg>(params)?.build()?))
        }
        ScenarioKind::OutdoorFso => {
            let (c, s, t) = parse::<OutdoorFsoCfg>(params)?.build()?;
            Built::Outdoor(c, s, t)
        }
        ScenarioKind::OutdoorThz => {
            let (c, s, t) = parse::<OutdoorThzCfg>(params)?.build()?;
            Built::Outdoor(c, s, t)
        }
        ScenarioKind::Uav => {
            let (c, s, t) = parse::<UavCfg>(params)?.build()?;
            Built::Outdoor(c, s, t)
        }
    })
}

/// Deserialise and construct the models without evaluating anything.
pub(super) fn check(kind: ScenarioKind, params: &Value) -> Result<()> {
    build(kind, params).map(|_| ())
}

/// Evaluate the requested metrics at one parameter point.
pub(super) fn evaluate(
    kind: ScenarioKind,
    params: &Value,
    metrics: &[Metric],
    seed: u64,
    samples: usize,
) -> Result<Vec<MetricValue>> {
    match build(kind, params)? {
        Built::SisoOwc(m) => eval_siso_owc(&m, metrics),
        Built::SisoThz(m) => eval_siso_thz(&m, metrics),
        Built::Network(m) => eval_network(&m, metrics, seed, samples),
        Built::Outdoor(c, s, t) => eval_outdoor(&c, s, t, metrics, seed, samples),
    }
}
