//! Consumption factor against transmit power for matched 4 degree THz and
//! OWC links at 500 MHz.
//!
//! cargo run --release --example cf_comparison

use thzowc::geometry::Pose;
use thzowc::indoor_owc::{
    cf_owc, channel_gain_owc, owc_snr_from_gain, GaussianBeam, PhotoDetector, VcselLiv,
};
use thzowc::indoor_thz::{
    cf_thz_link, trace_multiray, AbsorptionModel, HornPattern, RoomScene, ThzChain,
};
use thzowc::mathkit::QuadratureSpec;
use thzowc::units::dbm_to_watts;

fn main() -> thzowc::Result<()> {
    let bandwidth = 500e6;
    let t = 296.0;
    let width = 4f64.to_radians();
    let tx = Pose::facing_down([1.5, 1.5, 2.95]);
    let rx = Pose::facing_up([1.5, 1.5, 0.95]);

    let horn = HornPattern::from_beamwidth(width)?;
    let kappa = AbsorptionModel::LineModel.coefficient(350e9, 0.5, t, 101_325.0)?;
    let (_, h) = trace_multiray(
        &RoomScene::default_room(),
        &tx,
        &rx,
        &horn,
        &horn,
        350e9,
        kappa,
    )?;
    let chain = ThzChain::reference();

    let beam = GaussianBeam::reference().with_hpbd(width)?;
    let pd = PhotoDetector::reference_for_bandwidth(bandwidth, width / 2.0)?;
    let liv = VcselLiv::reference();
    let g = channel_gain_owc(&beam, &tx, &rx, &pd, &QuadratureSpec::default())?;

    println!("tx_power_dbm,cf_thz_bit_per_j,cf_owc_bit_per_j");
    for p in -30..=20 {
        let pt = dbm_to_watts(p as f64);
        let thz = cf_thz_link(pt, h.norm_sqr(), bandwidth, t, &chain, 0.0)?;
        // Past saturation the VCSEL cannot deliver the power.
        let owc = cf_owc(
            owc_snr_from_gain(&pd, g, pt, bandwidth, t),
            bandwidth,
            &liv,
            pt,
            0.0,
            0.0,
        )
        .map_or(String::new(), |c| format!("{c:.4e}"));
        println!("{p},{thz:.4e},{owc}");
    }
    Ok(())
}
