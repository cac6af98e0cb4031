//! Stochastic outdoor channels for FSO and THz links, outage estimation and
//! UAV jitter mapping.

mod fso;
mod outage;
mod thz;
mod uav;

pub use fso::{
    fso_path_loss, malaga_pdf, turbulent_beam_width, AoAParams, DisplacementPointing, MalagaParams,
    MalagaSampler, WeatherPresets,
};
pub use outage::{
    fso_outage_semi_analytic, outage_from_samples, outage_mc, sample_channel, ChannelSampler,
    FsoChannel, Outage, OutdoorChannel, SnrScale, ThzAngularChannel, ThzDisplacementChannel,
};
pub use thz::{
    alpha_mu_pdf, alpha_mu_sample, angular_pointing_sample, gaussian_moment_closed_form,
    ln_gaussian_moment, thz_cdf_series, thz_path_loss, ula_beamwidth, ula_gain, AlphaMuParams,
    AngularPointing, DeltaSeries,
};
pub use uav::{
    uav_link_fso, uav_link_thz, uav_variances, FsoLinkParams, ThzLinkParams, UavJitter, UavLinkType,
};
