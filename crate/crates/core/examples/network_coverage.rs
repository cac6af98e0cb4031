//! Coverage probability against AP grid size for both technologies.
//!
//! cargo run --release --example network_coverage

use thzowc::indoor_owc::{GaussianBeam, PhotoDetector, VcselLiv};
use thzowc::indoor_thz::{AbsorptionModel, HornPattern, RoomScene, ThzChain};
use thzowc::mathkit::QuadratureSpec;
use thzowc::network::{coverage_from_sinrs, drop_sinrs, Deployment, DropPlan, Technology};
use thzowc::units::db_to_linear;

fn main() -> thzowc::Result<()> {
    let bandwidth = 500e6;
    let beam_deg: f64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(6.0);
    let width = beam_deg.to_radians();
    let kappa = AbsorptionModel::LineModel.coefficient(350e9, 0.5, 296.0, 101_325.0)?;
    let plan = DropPlan {
        drops: 200,
        receiver_height: 0.95,
        seed: 2024,
    };
    let spec = QuadratureSpec::default();
    let threshold = db_to_linear(5.0);
    println!("grid_side,cp_thz,cp_owc");
    for n in 1..=15 {
        let thz = Deployment {
            grid_side: n,
            room: RoomScene::default_room(),
            ap_height: 2.95,
            technology: Technology::Thz {
                pattern: HornPattern::from_beamwidth(width)?,
                chain: ThzChain::reference(),
                frequency: 350e9,
                kappa,
            },
            tx_power: 40e-6,
        };
        let owc = Deployment {
            technology: Technology::Owc {
                beam: GaussianBeam::reference().with_hpbd(width)?,
                detector: PhotoDetector::reference_for_bandwidth(bandwidth, width / 2.0)?,
                liv: VcselLiv::reference(),
            },
            tx_power: 1e-3,
            ..thz.clone()
        };
        let cp_thz = coverage_from_sinrs(
            &drop_sinrs(&thz, &plan, bandwidth, 295.0, &spec)?,
            threshold,
        );
        let cp_owc = coverage_from_sinrs(
            &drop_sinrs(&owc, &plan, bandwidth, 295.0, &spec)?,
            threshold,
        );
        println!("{n},{},{}", cp_thz.probability, cp_owc.probability);
    }
    Ok(())
}
