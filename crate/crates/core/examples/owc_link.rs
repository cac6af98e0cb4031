//! Aligned VCSEL link: channel gain and SNR as the transmitter tilts away.
//!
//! cargo run --release --example owc_link

use thzowc::geometry::Pose;
use thzowc::indoor_owc::{
    channel_gain_owc, hpbd_after_lens, owc_snr_from_gain, GaussianBeam, PhotoDetector,
};
use thzowc::mathkit::QuadratureSpec;
use thzowc::units::{dbm_to_watts, linear_to_db};

fn main() -> thzowc::Result<()> {
    let bandwidth = 1e9;
    let beam = GaussianBeam::reference();
    let hpbd = hpbd_after_lens(&beam);
    // FoV matched to the beam divergence.
    let pd = PhotoDetector::reference_for_bandwidth(bandwidth, hpbd / 2.0)?;
    let rx = Pose::facing_up([1.5, 1.5, 0.95]);
    let spec = QuadratureSpec::default();
    println!(
        "HPBD {:.2} deg, PD area {:.3e} m2",
        hpbd.to_degrees(),
        pd.area
    );
    println!("tilt_deg,gain_db,snr_db");
    for tilt in 0..=10 {
        let tx = Pose::tilted_down([1.5, 1.5, 2.95], (tilt as f64).to_radians(), 0.0);
        let h = channel_gain_owc(&beam, &tx, &rx, &pd, &spec)?;
        let snr = owc_snr_from_gain(&pd, h, dbm_to_watts(0.0), bandwidth, 296.0);
        println!("{tilt},{:.3},{:.3}", linear_to_db(h), linear_to_db(snr));
    }
    Ok(())
}
