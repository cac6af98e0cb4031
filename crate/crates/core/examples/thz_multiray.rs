//! Ray set of a THz link in the default plaster room, with the wideband
//! transfer function it implies.
//!
//! cargo run --release --example thz_multiray

use thzowc::geometry::Pose;
use thzowc::indoor_thz::{trace_multiray, AbsorptionModel, HornPattern, RoomScene};
use thzowc::units::linear_to_db;

fn main() -> thzowc::Result<()> {
    let f = 350e9;
    let kappa = AbsorptionModel::LineModel.coefficient(f, 0.5, 296.0, 101_325.0)?;
    // Wide horns so the wall bounces are visible.
    let horn = HornPattern::from_beamwidth(60f64.to_radians())?;
    let tx = Pose::facing_down([1.0, 1.2, 2.95]);
    let rx = Pose::facing_up([2.0, 1.8, 0.95]);
    let room = RoomScene::default_room();
    let (rays, h) = trace_multiray(&room, &tx, &rx, &horn, &horn, f, kappa)?;

    println!("kappa {kappa:.4e} 1/m");
    println!("kind,walls,path_m,delay_ns,power_db");
    for r in &rays.rays {
        println!(
            "{:?},{:?},{:.4},{:.4},{:.2}",
            r.kind,
            r.faces,
            r.path_length,
            r.delay * 1e9,
            linear_to_db(r.amplitude.norm_sqr())
        );
    }
    println!("total |H|^2 {:.2} dB", linear_to_db(h.norm_sqr()));

    // Frequency selectivity across a 10 GHz band.
    println!("f_ghz,gain_db");
    for k in -5..=5 {
        let fk = f + k as f64 * 1e9;
        let (_, hk) = trace_multiray(&room, &tx, &rx, &horn, &horn, fk, kappa)?;
        println!("{:.0},{:.3}", fk / 1e9, linear_to_db(hk.norm_sqr()));
    }
    Ok(())
}
