//! Hovering UAV links: the jitter variances each link type sees and the
//! resulting outage for FSO and THz at 20 dB average SNR.
//!
//! cargo run --release --example uav_links

use thzowc::indoor_thz::AbsorptionModel;
use thzowc::outdoor::{
    outage_mc, uav_link_fso, uav_link_thz, uav_variances, AlphaMuParams, FsoLinkParams,
    MalagaParams, OutdoorChannel, SnrScale, ThzLinkParams, UavJitter, UavLinkType, WeatherPresets,
};
use thzowc::units::db_to_linear;

fn main() -> thzowc::Result<()> {
    let fso = FsoLinkParams {
        wavelength: 1550e-9,
        waist: 3.0,
        cn2: 1e-14,
        aperture_radius: 0.05,
        fov: 0.02,
        attenuation_per_m: WeatherPresets::bundled().per_m("light_fog")?,
        turbulence: MalagaParams::reference(),
    };
    let thz = ThzLinkParams {
        frequency: 300e9,
        kappa: AbsorptionModel::LineModel.coefficient(300e9, 0.4, 296.0, 101_325.0)?,
        n_ant: 80.0,
        fading: AlphaMuParams {
            alpha: 2.0,
            mu: 1.0,
            root_mean: 1.0,
        },
    };
    let snr = SnrScale::Average(db_to_linear(20.0));
    let threshold = db_to_linear(5.0);
    println!("link,length_m,sigma_m,sigma_a,outage_fso,outage_thz");
    for link in [UavLinkType::G2U, UavLinkType::U2G, UavLinkType::U2U] {
        let j = UavJitter::hovering(link);
        for length in [100.0, 200.0, 300.0] {
            let (m2, a2) = uav_variances(&j, length)?;
            let f = outage_mc(
                &OutdoorChannel::Fso(uav_link_fso(&j, length, &fso)?),
                snr,
                threshold,
                200_000,
                1,
            )?;
            let t = outage_mc(
                &OutdoorChannel::ThzAngular(uav_link_thz(&j, length, &thz)?),
                snr,
                threshold,
                200_000,
                1,
            )?;
            println!(
                "{link:?},{length},{:.4},{:.5},{:.4e},{:.4e}",
                m2.sqrt(),
                a2.sqrt(),
                f.probability,
                t.probability
            );
        }
    }
    Ok(())
}
