//! Ready-made scenario files for the standard indoor and outdoor studies.

use serde_json::{json, Value};

fn range(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step).round() as usize;
    (0..=n).map(|i| start + i as f64 * step).collect()
}

fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("preset serialises");
    s.push('\n');
    s
}

/// `(file name, scenario text)` for every bundled preset.
pub fn presets() -> Vec<(&'static str, String)> {
    let power = range(-15.0, 10.0, 1.0);
    let tilt = range(0.0, 15.0, 1.0);
    let shift: Vec<f64> = range(0.0, 0.4, 0.025).iter().map(|d| 1.5 + d).collect();
    let snr_grid = range(0.0, 40.0, 2.5);
    vec![
        (
            "indoor_thz_power_tilt.json",
            pretty(json!({
                "scenario_kind": "indoor_siso_thz",
                "params": {"hpbw_deg": 8.0},
                "sweep": [
                    {"parameter_path": "tx_power_dbm", "values": power},
                    {"parameter_path": "tx.tilt_deg", "values": tilt}
                ],
                "metrics": ["sinr", "channel_gain_db"]
            })),
        ),
        (
            "indoor_owc_power_tilt.json",
            pretty(json!({
                "scenario_kind": "indoor_siso_owc",
                "params": {"beam": {"hpbd_deg": 8.0}},
                "sweep": [
                    {"parameter_path": "tx_power_dbm", "values": power},
                    {"parameter_path": "tx.tilt_deg", "values": tilt}
                ],
                "metrics": ["snr", "channel_gain_db"]
            })),
        ),
        (
            "indoor_thz_power_displacement.json",
            pretty(json!({
                "scenario_kind": "indoor_siso_thz",
                "params": {"hpbw_deg": 8.0},
                "sweep": [
                    {"parameter_path": "tx_power_dbm", "values": power},
                    {"parameter_path": "tx.position_m.0", "values": shift}
                ],
                "metrics": ["sinr"]
            })),
        ),
        (
            "indoor_owc_power_displacement.json",
            pretty(json!({
                "scenario_kind": "indoor_siso_owc",
                "params": {"beam": {"hpbd_deg": 8.0}},
                "sweep": [
                    {"parameter_path": "tx_power_dbm", "values": power},
                    {"parameter_path": "tx.position_m.0", "values": shift}
                ],
                "metrics": ["snr"]
            })),
        ),
        (
            "indoor_cf_power_thz.json",
            pretty(json!({
                "scenario_kind": "indoor_siso_thz",
                "params": {"bandwidth_hz": 500e6, "hpbw_deg": 4.0},
                "sweep": [{"parameter_path": "tx_power_dbm", "values": range(-30.0, 20.0, 1.0)}],
                "metrics": ["sinr", "cf"]
            })),
        ),
        (
            "indoor_cf_power_owc.json",
            pretty(json!({
                "scenario_kind": "indoor_siso_owc",
                "params": {"bandwidth_hz": 500e6, "beam": {"hpbd_deg": 4.0}},
                "sweep": [{"parameter_path": "tx_power_dbm", "values": range(-30.0, 11.5, 0.5)}],
                "metrics": ["snr", "cf"]
            })),
        ),
        (
            "network_cp_grid.json",
            pretty(json!({
                "scenario_kind": "indoor_network",
                "params": {"threshold_db": 5.0},
                "sweep": [
                    {"parameter_path": "technology", "values": ["thz", "owc"]},
                    {"parameter_path": "beam_deg", "values": [4.0, 6.0]},
                    {"parameter_path": "grid_side", "values": (1..=15).collect::<Vec<_>>()}
                ],
                "metrics": ["cp"],
                "monte_carlo": {"seed": 2024, "samples": 200}
            })),
        ),
        (
            "outdoor_fso_weather.json",
            pretty(json!({
                "scenario_kind": "outdoor_fso",
                "params": {"snr": {"mode": "link_budget"}},
                "sweep": [
                    {"parameter_path": "weather", "values": ["clear", "light_fog", "moderate_rain", "heavy_rain"]},
                    {"parameter_path": "snr.tx_power_dbm", "values": range(-10.0, 30.0, 2.0)}
                ],
                "metrics": ["outage"],
                "monte_carlo": {"seed": 7, "samples": 100000}
            })),
        ),
        (
            "outdoor_thz_humidity.json",
            pretty(json!({
                "scenario_kind": "outdoor_thz",
                "params": {"snr": {"mode": "link_budget"}},
                "sweep": [
                    {"parameter_path": "relative_humidity", "values": [0.1, 0.5, 0.9]},
                    {"parameter_path": "snr.tx_power_dbm", "values": range(-30.0, 10.0, 2.0)}
                ],
                "metrics": ["outage"],
                "monte_carlo": {"seed": 7, "samples": 100000}
            })),
        ),
        (
            "outdoor_thz_antennas.json",
            pretty(json!({
                "scenario_kind": "outdoor_thz",
                "params": {
                    "pointing_model": "angular",
                    "snr": {"mode": "link_budget", "tx_power_dbm": 5.0, "noise_power_dbm": -69.0}
                },
                "sweep": [
                    {"parameter_path": "length_m", "values": [200.0, 500.0, 1000.0]},
                    {"parameter_path": "angular.angle_std_rad", "values": [1e-3, 5e-3]},
                    {"parameter_path": "angular.n_ant", "values": range(10.0, 150.0, 10.0)}
                ],
                "metrics": ["outage"],
                "monte_carlo": {"seed": 11, "samples": 100000}
            })),
        ),
        (
            "uav_fso.json",
            pretty(json!({
                "scenario_kind": "uav",
                "params": {"technology": "fso"},
                "sweep": [
                    {"parameter_path": "link_type", "values": ["u2u", "u2g", "g2u"]},
                    {"parameter_path": "length_m", "values": [200.0, 300.0]},
                    {"parameter_path": "snr.average_snr_db", "values": snr_grid}
                ],
                "metrics": ["outage"],
                "monte_carlo": {"seed": 5, "samples": 100000}
            })),
        ),
        (
            "uav_thz.json",
            pretty(json!({
                "scenario_kind": "uav",
                "params": {"technology": "thz"},
                "sweep": [
                    {"parameter_path": "link_type", "values": ["u2u", "u2g", "g2u"]},
                    {"parameter_path": "length_m", "values": [200.0, 300.0]},
                    {"parameter_path": "snr.average_snr_db", "values": snr_grid}
                ],
                "metrics": ["outage"],
                "monte_carlo": {"seed": 5, "samples": 100000}
            })),
        ),
    ]
}
