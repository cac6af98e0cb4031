use proptest::prelude::*;

use thzowc::indoor_owc::{pd_bandwidth_area, PdTradeoff};
use thzowc::indoor_thz::{chain_efficiency, surface_coefficients, ChainStage, Material, ThzChain};
use thzowc::mathkit::RngStream;
use thzowc::outdoor::{outage_from_samples, AlphaMuParams};
use thzowc::units::{db_to_linear, dbm_to_watts, linear_to_db, watts_to_dbm};

proptest! {
    #[test]
    fn db_round_trip(db in -200.0f64..200.0) {
        prop_assert!((linear_to_db(db_to_linear(db)) - db).abs() < 1e-9);
        prop_assert!((watts_to_dbm(dbm_to_watts(db)) - db).abs() < 1e-9);
    }

    #[test]
    fn surfaces_conserve_power(
        n in 1.0f64..5.0,
        sigma in 0.0f64..1e-3,
        f in 1e11f64..1e12,
        theta in 0.0f64..1.5,
    ) {
        let m = Material { refractive_index: n, roughness_sigma: sigma };
        let (r, s) = surface_coefficients(&m, f, theta).unwrap();
        prop_assert!(r.norm_sqr() + s.norm_sqr() <= 1.0 + 1e-12);
        prop_assert!(r.re <= 0.0);
    }

    #[test]
    fn pd_tradeoff_round_trips(b in 1e6f64..1e11, rl in 1.0f64..1000.0) {
        let a = pd_bandwidth_area(rl, PdTradeoff::AreaFromBandwidth, b).unwrap();
        let back = pd_bandwidth_area(rl, PdTradeoff::BandwidthFromArea, a).unwrap();
        prop_assert!((back - b).abs() <= 1e-9 * b);
    }

    #[test]
    fn chain_efficiency_is_a_fraction(
        stages in prop::collection::vec((0.01f64..100.0, 0.001f64..=1.0), 1..6),
    ) {
        let chain = ThzChain {
            stages: stages.iter().map(|&(gain, efficiency)| ChainStage { gain, efficiency }).collect(),
            ..ThzChain::reference()
        };
        let h = chain_efficiency(&chain).unwrap();
        prop_assert!(h > 0.0 && h <= 1.0);
        // Earlier stages only add loss on top of the final one.
        prop_assert!(h <= stages.last().unwrap().1 * (1.0 + 1e-12));
    }

    #[test]
    fn outage_is_monotone_in_threshold_and_scale(
        seed in any::<u64>(),
        t1 in 0.01f64..10.0,
        t2 in 0.01f64..10.0,
        k1 in 0.1f64..100.0,
        k2 in 0.1f64..100.0,
    ) {
        let fading = AlphaMuParams { alpha: 2.0, mu: 1.0, root_mean: 1.0 };
        let mut rng = RngStream::new(seed, 0);
        let h: Vec<f64> = (0..500).map(|_| fading.sample(&mut rng)).collect();
        let (tlo, thi) = (t1.min(t2), t1.max(t2));
        let (klo, khi) = (k1.min(k2), k1.max(k2));
        prop_assert!(outage_from_samples(&h, k1, tlo).probability <= outage_from_samples(&h, k1, thi).probability);
        prop_assert!(outage_from_samples(&h, khi, t1).probability <= outage_from_samples(&h, klo, t1).probability);
    }
}
