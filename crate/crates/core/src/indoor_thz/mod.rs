//! Indoor terahertz link: antenna patterns, molecular absorption, multi-ray
//! channel over a box room, phase-noise-limited SINR and the transceiver
//! consumption factor.

mod absorption;
mod antenna;
mod link;
mod multiray;
mod surface;

pub use absorption::{
    absorption_coefficient, water_vapour_mixing_ratio, AbsorptionModel, AbsorptionTable,
    LINE_MODEL_HIGH_HZ, LINE_MODEL_LOW_HZ, REFERENCE_PRESSURE_PA, REFERENCE_TEMPERATURE_K,
};
pub use antenna::{antenna_gain, beamwidth_from_gain, gain_from_beamwidth, HornPattern};
pub use link::{
    cf_thz, cf_thz_link, chain_efficiency, link_efficiency, phase_noise_term, pn_ceiling,
    received_power, thz_noise_power, thz_sinr, thz_sinr_with_interference, ChainStage, ThzChain,
};
pub use multiray::{
    los_transfer, specular_residual, trace_multiray, Ray, RayKind, RaySet, RoomScene,
};
pub use surface::{fresnel_te, rayleigh_roughness, surface_coefficients, Material};
