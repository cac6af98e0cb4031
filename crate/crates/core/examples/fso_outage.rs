//! Outage of a 1 km FSO link under four weather conditions, by Monte Carlo
//! and by the semi-analytic integral.
//!
//! cargo run --release --example fso_outage

use thzowc::mathkit::QuadratureSpec;
use thzowc::outdoor::{
    fso_outage_semi_analytic, outage_mc, FsoLinkParams, MalagaParams, OutdoorChannel, SnrScale,
    WeatherPresets,
};
use thzowc::units::{db_to_linear, dbm_to_watts};

fn main() -> thzowc::Result<()> {
    let weather = WeatherPresets::bundled();
    let noise = dbm_to_watts(-110.0);
    let threshold = db_to_linear(5.0);
    let spec = QuadratureSpec::new(1e-10, 1e-300, 4000)?;
    println!("weather,tx_power_dbm,outage_mc,outage_stderr,outage_semi_analytic");
    for name in ["clear", "light_fog", "moderate_rain", "heavy_rain"] {
        let dev = FsoLinkParams {
            wavelength: 1550e-9,
            waist: 3.0,
            cn2: 1e-14,
            aperture_radius: 0.05,
            fov: 0.02,
            attenuation_per_m: weather.per_m(name)?,
            turbulence: MalagaParams::reference(),
        };
        let ch = dev.channel(1000.0, 1.5, 0.005, 2.0)?;
        for p in (-10..=30).step_by(5) {
            let snr = SnrScale::fso_link_budget(0.7, dbm_to_watts(p as f64), noise);
            let mc = outage_mc(&OutdoorChannel::Fso(ch), snr, threshold, 200_000, 7)?;
            let sa = fso_outage_semi_analytic(&ch, snr, threshold, &spec)?;
            println!(
                "{name},{p},{:.4e},{:.1e},{sa:.4e}",
                mc.probability, mc.stderr
            );
        }
    }
    Ok(())
}
