//! Outage of an outdoor THz link with antenna-pattern pointing error: the
//! series CDF next to a Monte Carlo estimate, for several array sizes.
//!
//! cargo run --release --example thz_outdoor_series

use thzowc::indoor_thz::AbsorptionModel;
use thzowc::outdoor::{
    outage_mc, thz_cdf_series, thz_path_loss, AlphaMuParams, AngularPointing, OutdoorChannel,
    SnrScale, ThzAngularChannel,
};
use thzowc::units::{db_to_linear, dbm_to_watts};

fn main() -> thzowc::Result<()> {
    let f = 300e9;
    let length = 200.0;
    let kappa = AbsorptionModel::LineModel.coefficient(f, 0.1, 296.0, 101_325.0)?;
    let path_gain = thz_path_loss(f, length, 1.0, 1.0, kappa, false)?;
    let fading = AlphaMuParams {
        alpha: 2.0,
        mu: 1.0,
        root_mean: 1.0,
    };
    let snr = SnrScale::thz_link_budget(dbm_to_watts(5.0), dbm_to_watts(-69.0));
    let threshold = db_to_linear(5.0);
    println!("n_ant,outage_series,outage_mc,outage_stderr");
    for n in [10.0, 20.0, 40.0, 80.0, 120.0] {
        let pointing = AngularPointing::ula(n, 1e-3);
        let ch = OutdoorChannel::ThzAngular(ThzAngularChannel {
            path_gain,
            fading,
            pointing,
        });
        // Outage is P(h < sqrt(γth/K)).
        let h_th = (threshold / snr.factor(&ch)?).sqrt();
        let series = thz_cdf_series(&pointing, &fading, path_gain, h_th, 1e-12)?;
        let mc = outage_mc(&ch, snr, threshold, 200_000, 3)?;
        println!("{n},{series:.4e},{:.4e},{:.1e}", mc.probability, mc.stderr);
    }
    Ok(())
}
