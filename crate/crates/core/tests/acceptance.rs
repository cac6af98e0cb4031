//! Acceptance suite: analytic anchors, dual-oracle checks and trend checks.
//! Each criterion prints one PASS/FAIL line with its runtime; the test
//! fails if any criterion does.
//!
//! cargo test --test acceptance -- --nocapture

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use statrs::distribution::{ChiSquared, ContinuousCDF};
use thzowc::geometry::Pose;
use thzowc::indoor_owc::{
    channel_gain_owc, hpbd_after_lens, pd_bandwidth_area, GaussianBeam, PdTradeoff, PhotoDetector,
};
use thzowc::indoor_thz::{
    chain_efficiency, los_transfer, specular_residual, thz_noise_power, thz_sinr, trace_multiray,
    AbsorptionModel, ChainStage, HornPattern, RayKind, RoomScene, ThzChain,
};
use thzowc::mathkit::{integrate, QuadratureSpec, RngStream};
use thzowc::network::{coverage_from_sinrs, drop_sinrs, Deployment, DropPlan, Technology};
use thzowc::outdoor::{
    fso_outage_semi_analytic, malaga_pdf, outage_from_samples, sample_channel, thz_cdf_series,
    thz_path_loss, AlphaMuParams, AngularPointing, DisplacementPointing, FsoLinkParams,
    MalagaParams, MalagaSampler, OutdoorChannel, SnrScale, ThzAngularChannel, WeatherPresets,
};
use thzowc::scenario::{load_scenario, run_sweep_with_workers, ResultTable};
use thzowc::units::{db_to_linear, linear_to_db};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn aligned() -> (Pose, Pose) {
    (
        Pose::facing_down([1.5, 1.5, 2.95]),
        Pose::facing_up([1.5, 1.5, 0.95]),
    )
}

fn pn_ceiling() -> Outcome {
    let chain = ThzChain::reference();
    let b = 1e9;
    let t = 296.0;
    // γ0 = 60 dB.
    let received = 1e6 * thz_noise_power(b, t, chain.noise_figure_db);
    let db = linear_to_db(thz_sinr(received, b, t, &chain));
    check((db - 23.02).abs() <= 0.05, format!("SINR bound {db:.4} dB"))
}

fn hpbd_anchor() -> Outcome {
    let b1 = GaussianBeam::reference();
    let b2 = GaussianBeam::new(b1.wavelength, b1.waist, 2.0).map_err(|e| e.to_string())?;
    let d1 = hpbd_after_lens(&b1).to_degrees();
    let d2 = hpbd_after_lens(&b2).to_degrees();
    check(
        (d1 - 8.0).abs() <= 0.01 && (d2 - 4.0).abs() <= 0.01,
        format!("G=1 {d1:.4} deg, G=2 {d2:.4} deg"),
    )
}

fn pd_tradeoff() -> Outcome {
    let area =
        pd_bandwidth_area(50.0, PdTradeoff::AreaFromBandwidth, 500e6).map_err(|e| e.to_string())?;
    let back =
        pd_bandwidth_area(50.0, PdTradeoff::BandwidthFromArea, area).map_err(|e| e.to_string())?;
    let rel = (area - 2.636e-6).abs() / 2.636e-6;
    let trip = (back - 500e6).abs() / 500e6;
    check(
        rel <= 1e-3 && trip <= 1e-12,
        format!("A_PD {area:.6e} m2 (rel {rel:.1e}), round trip rel {trip:.1e}"),
    )
}

fn owc_channel() -> Outcome {
    let (tx, rx) = aligned();
    let beam = GaussianBeam::reference();
    let spec = QuadratureSpec::default();
    let pd = |area: f64| PhotoDetector {
        area,
        load_resistance: 50.0,
        responsivity: 0.6,
        cpc_half_angle: 0.0,
        tia_noise_figure_db: 5.0,
        rin_db_per_hz: -155.0,
    };
    let big =
        channel_gain_owc(&beam, &tx, &rx, &pd(PI * 1.5 * 1.5), &spec).map_err(|e| e.to_string())?;
    let w2 = beam.width_squared(2.0);
    let mut worst: f64 = 0.0;
    for r in [0.02, 0.08, 0.15, 0.25, 0.4] {
        let h =
            channel_gain_owc(&beam, &tx, &rx, &pd(PI * r * r), &spec).map_err(|e| e.to_string())?;
        worst = worst.max((h - (1.0 - (-2.0 * r * r / w2).exp())).abs());
    }
    check(
        (big - 1.0).abs() <= 1e-6 && worst <= 1e-6,
        format!("wide aperture H {big:.9}, closed-form max error {worst:.1e}"),
    )
}

fn multiray_geometry() -> Outcome {
    let (tx, rx) = aligned();
    let pattern = HornPattern::from_beamwidth(8f64.to_radians()).map_err(|e| e.to_string())?;
    let f = 350e9;
    let kappa = AbsorptionModel::LineModel
        .coefficient(f, 0.5, 296.0, 101_325.0)
        .map_err(|e| e.to_string())?;
    let (_, h_abs) = trace_multiray(
        &RoomScene::absorbing([3.0; 3]),
        &tx,
        &rx,
        &pattern,
        &pattern,
        f,
        kappa,
    )
    .map_err(|e| e.to_string())?;
    let los = los_transfer(f, &tx, &rx, &pattern, &pattern, kappa).map_err(|e| e.to_string())?;
    let rel = (h_abs - los).norm() / los.norm();

    let iso = HornPattern::isotropic();
    let (rays, _) = trace_multiray(&RoomScene::default_room(), &tx, &rx, &iso, &iso, f, kappa)
        .map_err(|e| e.to_string())?;
    let first = rays
        .of_kind(RayKind::Ref)
        .find(|r| r.faces == [0])
        .ok_or("no first-order ray off the x = 0 wall")?;
    let path_err = (first.path_length - 13f64.sqrt()).abs();
    let reflected: Vec<_> = rays.of_kind(RayKind::Ref).collect();
    let worst = reflected
        .iter()
        .map(|r| specular_residual(&tx, &rx, r))
        .fold(0.0, f64::max);
    check(
        rel <= 1e-12 && path_err <= 1e-9 && worst <= 1e-9,
        format!(
            "absorbing vs LoS rel {rel:.1e}, first-order path error {path_err:.1e} m, specular residual {worst:.1e} over {} rays",
            reflected.len()
        ),
    )
}

fn chain_anchor() -> Outcome {
    let chain = ThzChain::reference();
    let h = chain_efficiency(&chain).map_err(|e| e.to_string())?;
    // Cascade by hand: 1/H = 1 + Σ_n (1/η_n − 1)/∏_{i>n} G_i.
    let g = [10.9f64, -5.0, -13.0, -12.84].map(|d| 10f64.powf(d / 10.0));
    let eta = [0.1165, 0.3162, 0.05012, 0.052];
    let inv = 1.0
        + (1.0 / eta[0] - 1.0) / (g[1] * g[2] * g[3])
        + (1.0 / eta[1] - 1.0) / (g[2] * g[3])
        + (1.0 / eta[2] - 1.0) / g[3]
        + (1.0 / eta[3] - 1.0);
    let unity = ThzChain {
        stages: vec![
            ChainStage {
                gain: 1.0,
                efficiency: 1.0
            };
            4
        ],
        ..chain.clone()
    };
    let one = chain_efficiency(&unity).map_err(|e| e.to_string())?;
    let rel = (h - 9.601e-5).abs() / 9.601e-5;
    let hand = (h * inv - 1.0).abs();
    check(
        rel <= 5e-3 && hand <= 1e-12 && one == 1.0,
        format!("H_Tx {h:.5e} (rel {rel:.1e}, vs hand cascade {hand:.1e}), unity chain {one}"),
    )
}

/// Pearson χ² p-value of samples against bin edges with expected
/// probabilities; the outer bins are open.
fn chi_square(samples: &[f64], edges: &[f64], expected: &[f64]) -> f64 {
    let mut counts = vec![0usize; expected.len()];
    for &x in samples {
        counts[edges.partition_point(|e| *e <= x)] += 1;
    }
    let n = samples.len() as f64;
    let stat: f64 = counts
        .iter()
        .zip(expected)
        .map(|(&c, &p)| (c as f64 - n * p).powi(2) / (n * p))
        .sum();
    ChiSquared::new((expected.len() - 1) as f64)
        .unwrap()
        .sf(stat)
}

fn probabilities_from_cdf(edges: &[f64], cdf: impl Fn(f64) -> f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(edges.len() + 1);
    let mut prev = 0.0;
    for &e in edges {
        let c = cdf(e);
        out.push(c - prev);
        prev = c;
    }
    out.push(1.0 - prev);
    out
}

fn draw(n: usize, seed: u64, mut f: impl FnMut(&mut RngStream) -> f64) -> Vec<f64> {
    let mut rng = RngStream::new(seed, 0);
    (0..n).map(|_| f(&mut rng)).collect()
}

fn sampler_suite() -> Outcome {
    let bins = 20;
    let mut notes = Vec::new();
    let mut ok = true;

    // α–μ(2, 1, 1) is Rayleigh with E[g²] = 1.
    let am = AlphaMuParams {
        alpha: 2.0,
        mu: 1.0,
        root_mean: 1.0,
    };
    let g = draw(100_000, 71, |r| am.sample(r));
    let surv = g.iter().filter(|x| **x > 1.0).count() as f64 / g.len() as f64;
    let edges: Vec<f64> = (1..bins)
        .map(|i| (-(1.0 - i as f64 / bins as f64).ln()).sqrt())
        .collect();
    let p_am = chi_square(
        &g,
        &edges,
        &probabilities_from_cdf(&edges, |x| 1.0 - (-x * x).exp()),
    );
    ok &= (surv - (-1.0f64).exp()).abs() <= 0.005 && p_am > 1e-3;
    notes.push(format!("alpha-mu survival {surv:.4} chi2 p {p_am:.3}"));

    // Málaga: bin probabilities from quadrature of the density.
    let mp = MalagaParams::reference();
    let sampler = MalagaSampler::new(&mp).map_err(|e| e.to_string())?;
    let h = draw(1_000_000, 72, |r| sampler.sample(r));
    let mean = h.iter().sum::<f64>() / h.len() as f64;
    let edges: Vec<f64> = (1..bins)
        .map(|i| sampler.quantile(i as f64 / bins as f64))
        .collect();
    let spec = QuadratureSpec::new(1e-11, 1e-14, 2000).map_err(|e| e.to_string())?;
    let mut expected = Vec::new();
    let mut lo = 0.0;
    for &e in &edges {
        expected.push(
            integrate(|t| malaga_pdf(&mp, t).unwrap_or(0.0), lo, e, &spec)
                .map_err(|e| e.to_string())?,
        );
        lo = e;
    }
    expected.push(1.0 - expected.iter().sum::<f64>());
    let p_mal = chi_square(&h, &edges, &expected);
    let rel = (mean - mp.mean()).abs() / mp.mean();
    ok &= rel <= 0.01 && p_mal > 1e-3;
    notes.push(format!("Malaga mean rel {rel:.1e} chi2 p {p_mal:.3}"));

    // Displacement pointing, CDF (h/A0)^ξ² written out here.
    let dp = DisplacementPointing {
        beam_width: 3.0,
        aperture_radius: 0.05,
        displacement_std: 1.5,
    };
    let v = PI.sqrt() * dp.aperture_radius / (2f64.sqrt() * dp.beam_width);
    let a0 = libm::erf(v).powi(2);
    let we2 = dp.beam_width.powi(2) * PI.sqrt() * libm::erf(v) / (2.0 * v * (-v * v).exp());
    let xi2 = we2 / (4.0 * dp.displacement_std.powi(2));
    let hp = draw(1_000_000, 73, |r| dp.sample(r));
    let mean = hp.iter().sum::<f64>() / hp.len() as f64;
    let target = a0 * xi2 / (xi2 + 1.0);
    let edges: Vec<f64> = (1..bins)
        .map(|i| a0 * (i as f64 / bins as f64).powf(1.0 / xi2))
        .collect();
    let p_dp = chi_square(
        &hp,
        &edges,
        &probabilities_from_cdf(&edges, |x| (x / a0).powf(xi2)),
    );
    let rel = (mean - target).abs() / target;
    ok &= rel <= 5e-3 && p_dp > 1e-3;
    notes.push(format!("pointing mean rel {rel:.1e} chi2 p {p_dp:.3}"));

    check(ok, notes.join("; "))
}

fn series_vs_mc() -> Outcome {
    let fading = AlphaMuParams {
        alpha: 2.0,
        mu: 1.0,
        root_mean: 1.0,
    };
    let path_gain = thz_path_loss(350e9, 200.0, 1.0, 1.0, 0.0, false).map_err(|e| e.to_string())?;
    let n = 1_000_000;
    let mut worst: f64 = 0.0;
    let mut ok = true;
    let cases = [
        ("equal", [1e-3; 4]),
        ("unequal", [1e-3, 0.5e-3, 1.5e-3, 0.8e-3]),
    ];
    for n_ant in [20.0, 80.0] {
        for (label, stds) in cases {
            let mut pointing = AngularPointing::ula(n_ant, 0.0);
            pointing.angle_stds = stds;
            let ch = OutdoorChannel::ThzAngular(ThzAngularChannel {
                path_gain,
                fading,
                pointing,
            });
            let mut s = sample_channel(&ch, n, 80 + n_ant as u64).map_err(|e| e.to_string())?;
            s.sort_by(f64::total_cmp);
            for k in 1..=9 {
                let h = s[k * n / 10];
                let mc = s.partition_point(|x| *x <= h) as f64 / n as f64;
                let series = thz_cdf_series(&pointing, &fading, path_gain, h, 1e-12)
                    .map_err(|e| e.to_string())?;
                let sigma = (series * (1.0 - series) / n as f64).sqrt();
                let z = (mc - series).abs() / sigma;
                worst = worst.max(z);
                if z >= 3.0 {
                    ok = false;
                    eprintln!("  N={n_ant} {label} h={h:.4e}: series {series:.6} mc {mc:.6}");
                }
            }
        }
    }
    check(ok, format!("max deviation {worst:.2} sigma over 36 points"))
}

fn fso_oracle() -> Outcome {
    let dev = FsoLinkParams {
        wavelength: 1550e-9,
        waist: 3.0,
        cn2: 1e-14,
        aperture_radius: 0.05,
        fov: 0.02,
        attenuation_per_m: WeatherPresets::bundled()
            .per_m("clear")
            .map_err(|e| e.to_string())?,
        turbulence: MalagaParams::reference(),
    };
    let ch = dev
        .channel(1000.0, 1.5, 0.005, 2.0)
        .map_err(|e| e.to_string())?;
    let wrapped = OutdoorChannel::Fso(ch);
    let n = 1_000_000;
    let samples = sample_channel(&wrapped, n, 99).map_err(|e| e.to_string())?;
    let spec = QuadratureSpec::new(1e-10, 1e-300, 4000).map_err(|e| e.to_string())?;
    let threshold = db_to_linear(5.0);
    let mut worst: f64 = 0.0;
    for db in [0.0, 5.0, 10.0, 15.0, 20.0, 25.0] {
        let snr = SnrScale::Average(db_to_linear(db));
        let k = snr.factor(&wrapped).map_err(|e| e.to_string())?;
        let mc = outage_from_samples(&samples, k, threshold).probability;
        let sa = fso_outage_semi_analytic(&ch, snr, threshold, &spec).map_err(|e| e.to_string())?;
        let sigma = (sa * (1.0 - sa) / n as f64).sqrt();
        worst = worst.max((mc - sa).abs() / sigma);
    }
    check(
        worst < 3.0,
        format!("max deviation {worst:.2} sigma over 6 points"),
    )
}

fn sweep(text: &str) -> Result<ResultTable, String> {
    let cfg = load_scenario(text).map_err(|e| e.to_string())?;
    let t = run_sweep_with_workers(&cfg, None).map_err(|e| e.to_string())?;
    if t.failed_rows() > 0 {
        return Err(format!("{} rows failed", t.failed_rows()));
    }
    Ok(t)
}

/// Outage curves of `t` grouped by the values of `key`, in row order.
fn curves(t: &ResultTable, key: &str) -> Vec<Vec<f64>> {
    let k = t.column(key).unwrap();
    let o = t.numbers("outage").unwrap();
    let mut groups: Vec<(String, Vec<f64>)> = Vec::new();
    for (row, p) in t.rows.iter().zip(o) {
        let name = format!("{:?}", row.cells[k]);
        match groups.iter_mut().find(|(n, _)| *n == name) {
            Some((_, v)) => v.push(p),
            None => groups.push((name, vec![p])),
        }
    }
    groups.into_iter().map(|(_, v)| v).collect()
}

fn ordered(curves: &[Vec<f64>]) -> bool {
    curves
        .windows(2)
        .all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| a <= b))
}

fn unimodal(y: &[f64]) -> (bool, usize) {
    let peak = y
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let rising = y[..=peak].windows(2).all(|w| w[0] <= w[1]);
    let falling = y[peak..].windows(2).all(|w| w[0] >= w[1]);
    (rising && falling && peak > 0 && peak + 1 < y.len(), peak)
}

fn trends() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let weather = sweep(
        r#"{"scenario_kind": "outdoor_fso",
            "params": {"snr": {"mode": "link_budget"}},
            "sweep": [{"parameter_path": "weather", "values": ["clear", "light_fog", "moderate_rain", "heavy_rain"]},
                      {"parameter_path": "snr.tx_power_dbm", "values": [-10, -5, 0, 5, 10, 15, 20, 25, 30]}],
            "metrics": ["outage"], "monte_carlo": {"seed": 31, "samples": 100000}}"#,
    )?;
    let a = ordered(&curves(&weather, "weather"));
    ok &= a;
    notes.push(format!(
        "(a) weather {}",
        if a { "ordered" } else { "NOT ordered" }
    ));

    let humidity = sweep(
        r#"{"scenario_kind": "outdoor_thz",
            "params": {"snr": {"mode": "link_budget"}},
            "sweep": [{"parameter_path": "relative_humidity", "values": [0.1, 0.5, 0.9]},
                      {"parameter_path": "snr.tx_power_dbm", "values": [-20, -15, -10, -5, 0, 5, 10]}],
            "metrics": ["outage"], "monte_carlo": {"seed": 32, "samples": 100000}}"#,
    )?;
    let b = ordered(&curves(&humidity, "relative_humidity"));
    ok &= b;
    notes.push(format!(
        "(b) humidity {}",
        if b { "ordered" } else { "NOT ordered" }
    ));

    for tech in ["fso", "thz"] {
        let t = sweep(&format!(
            r#"{{"scenario_kind": "uav",
                "params": {{"technology": "{tech}", "length_m": 200, "snr": {{"average_snr_db": 20}}}},
                "sweep": [{{"parameter_path": "link_type", "values": ["g2u", "u2g", "u2u"]}}],
                "metrics": ["outage"], "monte_carlo": {{"seed": 33, "samples": 1000000}}}}"#
        ))?;
        let o = t.numbers("outage").unwrap();
        let c = o[0] <= o[1] && o[1] <= o[2];
        ok &= c;
        notes.push(format!(
            "(c) {tech} G2U/U2G/U2U {:.3e}/{:.3e}/{:.3e}",
            o[0], o[1], o[2]
        ));
    }

    for (kind, extra) in [
        ("indoor_siso_owc", r#""beam": {"hpbd_deg": 4.0}"#),
        ("indoor_siso_thz", r#""hpbw_deg": 4.0"#),
    ] {
        let powers: Vec<String> = (0..=40).map(|i| format!("{}", -30.0 + i as f64)).collect();
        let t = sweep(&format!(
            r#"{{"scenario_kind": "{kind}", "params": {{"bandwidth_hz": 5e8, {extra}}},
                "sweep": [{{"parameter_path": "tx_power_dbm", "values": [{}]}}], "metrics": ["cf"]}}"#,
            powers.join(",")
        ))?;
        let (d, peak) = unimodal(&t.numbers("cf_bit_per_j").unwrap());
        ok &= d;
        notes.push(format!(
            "(d) {kind} CF peak at {} dBm{}",
            -30 + peak as i32,
            if d { "" } else { " NOT unimodal" }
        ));
    }

    let width = 6f64.to_radians();
    let kappa = AbsorptionModel::LineModel
        .coefficient(350e9, 0.5, 296.0, 101_325.0)
        .map_err(|e| e.to_string())?;
    let plan = DropPlan {
        drops: 200,
        receiver_height: 0.95,
        seed: 2024,
    };
    let spec = QuadratureSpec::default();
    let mut cp = Vec::new();
    for n in 1..=15 {
        let dep = Deployment {
            grid_side: n,
            room: RoomScene::default_room(),
            ap_height: 2.95,
            technology: Technology::Thz {
                pattern: HornPattern::from_beamwidth(width).map_err(|e| e.to_string())?,
                chain: ThzChain::reference(),
                frequency: 350e9,
                kappa,
            },
            tx_power: 40e-6,
        };
        let s = drop_sinrs(&dep, &plan, 500e6, 296.0, &spec).map_err(|e| e.to_string())?;
        cp.push(coverage_from_sinrs(&s, db_to_linear(5.0)).probability);
    }
    let peak = cp
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    let e = peak > 0 && peak < 14 && cp[peak] > cp[0].max(cp[14]);
    ok &= e;
    notes.push(format!(
        "(e) THz CP peaks at N_t = {} ({:.3}; N_t=1 {:.3}, N_t=15 {:.3})",
        peak + 1,
        cp[peak],
        cp[0],
        cp[14]
    ));

    check(ok, notes.join("; "))
}

fn determinism() -> Outcome {
    let configs = [
        r#"{"scenario_kind": "outdoor_fso",
            "sweep": [{"parameter_path": "weather", "values": ["clear", "heavy_rain"]},
                      {"parameter_path": "snr.average_snr_db", "values": [5, 15, 25]}],
            "metrics": ["outage", "snr"], "monte_carlo": {"seed": 4, "samples": 200000}}"#,
        r#"{"scenario_kind": "indoor_network",
            "params": {"grid_side": 4},
            "sweep": [{"parameter_path": "technology", "values": ["thz", "owc"]}],
            "metrics": ["cp", "cf"], "monte_carlo": {"seed": 4, "samples": 100}}"#,
        r#"{"scenario_kind": "indoor_siso_thz",
            "sweep": [{"parameter_path": "tx.tilt_deg", "values": [0, 3, 6]}],
            "metrics": ["sinr", "cf"]}"#,
    ];
    for text in configs {
        let cfg = load_scenario(text).map_err(|e| e.to_string())?;
        let csv = |w| {
            run_sweep_with_workers(&cfg, w)
                .map(|t| t.to_csv_string())
                .map_err(|e| e.to_string())
        };
        let first = csv(None)?;
        if csv(None)? != first || csv(Some(1))? != first || csv(Some(8))? != first {
            return Err(format!("{} output differs between runs", cfg.kind.name()));
        }
    }
    Ok("3 configs byte-identical across repeat, 1 and 8 workers".into())
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 11] = [
        ("1 phase-noise ceiling", pn_ceiling, Duration::from_secs(1)),
        ("2 HPBD anchor", hpbd_anchor, Duration::from_secs(1)),
        (
            "3 PD bandwidth-area anchor",
            pd_tradeoff,
            Duration::from_secs(1),
        ),
        ("4 OWC channel", owc_channel, Duration::from_secs(10)),
        (
            "5 multi-ray geometry",
            multiray_geometry,
            Duration::from_secs(5),
        ),
        ("6 chain efficiency", chain_anchor, Duration::from_secs(1)),
        ("7 sampler suite", sampler_suite, Duration::from_secs(60)),
        (
            "8 THz series vs Monte Carlo",
            series_vs_mc,
            Duration::from_secs(60),
        ),
        (
            "9 FSO semi-analytic vs Monte Carlo",
            fso_oracle,
            Duration::from_secs(60),
        ),
        ("10 trend suite", trends, Duration::from_secs(300)),
        ("11 determinism", determinism, Duration::from_secs(30)),
    ];
    let mut failed = Vec::new();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(d) if took <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over the {budget:?} budget")),
            Err(d) => (false, d),
        };
        println!(
            "criterion {name}: {} ({detail}) [{:.2} s]",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
        if !pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
