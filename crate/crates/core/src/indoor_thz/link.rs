//! Phase-noise-limited SINR, transceiver chain efficiency and the THz
//! consumption factor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{db_to_linear, BOLTZMANN};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainStage {
    /// Linear power gain.
    pub gain: f64,
    /// Ratio of useful output power to consumed power.
    pub efficiency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThzChain {
    pub stages: Vec<ChainStage>,
    pub lo_dc_power: f64,
    /// Linear receiver gain.
    pub receiver_gain: f64,
    pub noise_figure_db: f64,
    /// Linear phase-noise floor, 1/Hz.
    pub pn_floor: f64,
}

impl ThzChain {
    /// PA, BPF, mixer, BPF chain at 350 GHz.
    pub fn reference() -> Self {
        let stage = |g_db: f64, eff: f64| ChainStage {
            gain: db_to_linear(g_db),
            efficiency: eff,
        };
        Self {
            stages: vec![
                stage(10.9, 0.1165),
                stage(-5.0, 0.3162),
                stage(-13.0, 0.05012),
                stage(-12.84, 0.052),
            ],
            lo_dc_power: 0.1,
            receiver_gain: 1.0,
            noise_figure_db: 10.6,
            pn_floor: db_to_linear(-110.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.stages {
            if !(s.gain > 0.0) || !(s.efficiency > 0.0 && s.efficiency <= 1.0) {
                return Err(Error::domain(
                    "ThzChain",
                    "stage gains must be > 0 and efficiencies in (0, 1]",
                ));
            }
        }
        if !(self.pn_floor >= 0.0) || !(self.receiver_gain > 0.0) || !(self.lo_dc_power >= 0.0) {
            return Err(Error::domain(
                "ThzChain",
                "need pn floor >= 0, receiver gain > 0 and LO power >= 0",
            ));
        }
        Ok(())
    }

    /// Product of stage gains.
    pub fn total_gain(&self) -> f64 {
        self.stages.iter().map(|s| s.gain).product()
    }
}

/// Received power P_t·H_thz·∏G_i.
pub fn received_power(tx_power: f64, channel_gain: f64, chain: &ThzChain) -> f64 {
    tx_power * channel_gain * chain.total_gain()
}

/// Thermal noise power kTBF.
pub fn thz_noise_power(bandwidth: f64, temperature: f64, noise_figure_db: f64) -> f64 {
    BOLTZMANN * temperature * bandwidth * db_to_linear(noise_figure_db)
}

/// Phase-noise term 2(1 − e^(−K0·B/4)).
pub fn phase_noise_term(pn_floor: f64, bandwidth: f64) -> f64 {
    2.0 * (-(-pn_floor * bandwidth / 4.0).exp_m1())
}

/// SINR ceiling imposed by phase noise alone.
pub fn pn_ceiling(pn_floor: f64, bandwidth: f64) -> f64 {
    1.0 / phase_noise_term(pn_floor, bandwidth)
}

/// γ = 1/(2(1 − e^(−K0B/4)) + 1/γ0) with γ0 = P_rec/(kTBF).
pub fn thz_sinr(received: f64, bandwidth: f64, temperature: f64, chain: &ThzChain) -> f64 {
    thz_sinr_with_interference(received, 0.0, bandwidth, temperature, chain)
}

/// SINR with interfering received power added to the thermal noise.
pub fn thz_sinr_with_interference(
    received: f64,
    interference: f64,
    bandwidth: f64,
    temperature: f64,
    chain: &ThzChain,
) -> f64 {
    if !(received > 0.0) {
        return 0.0;
    }
    let noise = thz_noise_power(bandwidth, temperature, chain.noise_figure_db);
    1.0 / (phase_noise_term(chain.pn_floor, bandwidth) + (interference + noise) / received)
}

/// Cascade efficiency {1 + Σ_n (1/∏_{i>n} G_i)(1/η_n − 1)}⁻¹.
pub fn chain_efficiency(chain: &ThzChain) -> Result<f64> {
    if chain.stages.is_empty() {
        return Err(Error::domain("chain_efficiency", "chain has no stages"));
    }
    chain.validate()?;
    let n = chain.stages.len();
    let mut sum = 1.0;
    for k in 0..n {
        let downstream: f64 = chain.stages[k + 1..].iter().map(|s| s.gain).product();
        sum += (1.0 / chain.stages[k].efficiency - 1.0) / downstream;
    }
    Ok(1.0 / sum)
}

/// H_link from transmitter/receiver efficiencies, channel gain and receiver gain.
pub fn link_efficiency(h_tx: f64, h_rx: f64, h_thz: f64, receiver_gain: f64) -> Result<f64> {
    if !(h_thz > 0.0) {
        return Err(Error::DegenerateLink(format!(
            "channel power gain must be > 0, got {h_thz}"
        )));
    }
    if !(h_tx > 0.0) || !(h_rx > 0.0) || !(receiver_gain > 0.0) {
        return Err(Error::domain(
            "link_efficiency",
            "efficiencies and receiver gain must be > 0",
        ));
    }
    let inv = 1.0 / h_rx
        + (1.0 / h_thz - 1.0) / receiver_gain
        + (1.0 / h_tx - 1.0) / (receiver_gain * h_thz);
    Ok(1.0 / inv)
}

/// CF = B·log2(1+γ)/(P_rec/H_link + 2·P_DC + P_others).
pub fn cf_thz(
    sinr: f64,
    bandwidth: f64,
    received: f64,
    h_link: f64,
    chain: &ThzChain,
    other_power: f64,
) -> Result<f64> {
    let denom = received / h_link + 2.0 * chain.lo_dc_power + other_power;
    if !(denom > 0.0) || !denom.is_finite() {
        return Err(Error::domain(
            "cf_thz",
            "consumed power must be finite and > 0",
        ));
    }
    Ok(bandwidth * (1.0 + sinr.max(0.0)).log2() / denom)
}

/// CF of a single link with identical transmit and receive chains, so
/// H_Rx = H_Tx.
pub fn cf_thz_link(
    tx_power: f64,
    channel_gain: f64,
    bandwidth: f64,
    temperature: f64,
    chain: &ThzChain,
    other_power: f64,
) -> Result<f64> {
    let received = received_power(tx_power, channel_gain, chain);
    let sinr = thz_sinr(received, bandwidth, temperature, chain);
    let h_tx = chain_efficiency(chain)?;
    let h_link = link_efficiency(h_tx, h_tx, channel_gain, chain.receiver_gain)?;
    cf_thz(sinr, bandwidth, received, h_link, chain, other_power)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::linear_to_db;
    use approx::assert_relative_eq;

    #[test]
    fn pn_ceiling_at_1ghz() {
        let c = pn_ceiling(1e-11, 1e9);
        assert_relative_eq!(c, 200.2501, max_relative = 1e-6);
        assert_relative_eq!(linear_to_db(c), 23.0157, epsilon = 1e-4);
        let chain = ThzChain::reference();
        let noise = thz_noise_power(1e9, 295.0, chain.noise_figure_db);
        let g = thz_sinr(1e6 * noise, 1e9, 295.0, &chain);
        assert!(g < c && (linear_to_db(g) - 23.0157).abs() < 0.05);
    }

    #[test]
    fn no_phase_noise_reduces_to_awgn() {
        let chain = ThzChain {
            pn_floor: 0.0,
            ..ThzChain::reference()
        };
        let noise = thz_noise_power(1e9, 295.0, 10.6);
        assert_relative_eq!(noise, 4.6763e-11, max_relative = 1e-4);
        assert_relative_eq!(
            thz_sinr(3.0 * noise, 1e9, 295.0, &chain),
            3.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn sinr_monotone_and_bounded() {
        let chain = ThzChain::reference();
        let mut prev = 0.0;
        for k in -150..-20 {
            let g = thz_sinr(10f64.powf(k as f64 / 10.0), 5e8, 295.0, &chain);
            assert!(g >= prev && g < pn_ceiling(chain.pn_floor, 5e8));
            prev = g;
        }
    }

    #[test]
    fn chain_efficiency_cases() {
        let h = chain_efficiency(&ThzChain::reference()).unwrap();
        assert_relative_eq!(h, 9.601e-5, max_relative = 5e-3);
        // Direct expansion of the four-stage cascade.
        let g = |db: f64| 10f64.powf(db / 10.0);
        let (g2, g3, g4) = (g(-5.0), g(-13.0), g(-12.84));
        let inv = 1.0
            + (1.0 / 0.1165 - 1.0) / (g2 * g3 * g4)
            + (1.0 / 0.3162 - 1.0) / (g3 * g4)
            + (1.0 / 0.05012 - 1.0) / g4
            + (1.0 / 0.052 - 1.0);
        assert_relative_eq!(h, 1.0 / inv, max_relative = 1e-14);
        let unity = ThzChain {
            stages: vec![
                ChainStage {
                    gain: 3.0,
                    efficiency: 1.0
                };
                4
            ],
            ..ThzChain::reference()
        };
        assert_eq!(chain_efficiency(&unity).unwrap(), 1.0);
        let single = ThzChain {
            stages: vec![ChainStage {
                gain: 7.0,
                efficiency: 0.3,
            }],
            ..ThzChain::reference()
        };
        assert_relative_eq!(
            chain_efficiency(&single).unwrap(),
            0.3,
            max_relative = 1e-15
        );
        let empty = ThzChain {
            stages: vec![],
            ..ThzChain::reference()
        };
        assert!(chain_efficiency(&empty).is_err());
    }

    #[test]
    fn chain_efficiency_drops_with_any_stage_efficiency() {
        let base = ThzChain::reference();
        let h0 = chain_efficiency(&base).unwrap();
        for k in 0..4 {
            let mut c = base.clone();
            c.stages[k].efficiency *= 0.9;
            assert!(chain_efficiency(&c).unwrap() < h0);
        }
    }

    #[test]
    fn link_efficiency_cases() {
        assert_relative_eq!(
            link_efficiency(1.0, 1.0, 0.25, 1.0).unwrap(),
            0.25,
            max_relative = 1e-15
        );
        let (htx, hrx) = (0.2, 0.5);
        let lossless = link_efficiency(htx, hrx, 1.0, 2.0).unwrap();
        assert_relative_eq!(
            1.0 / lossless,
            1.0 / hrx + (1.0 / htx - 1.0) / 2.0,
            max_relative = 1e-15
        );
        assert!(matches!(
            link_efficiency(0.5, 0.5, 0.0, 1.0),
            Err(Error::DegenerateLink(_))
        ));
        let h = chain_efficiency(&ThzChain::reference()).unwrap();
        let l = link_efficiency(h, h, 1e-9, 1.0).unwrap();
        let dominant = (1.0 / h - 1.0) / 1e-9;
        assert!((1.0 / l - dominant) / dominant < 1e-3);
        assert!(l <= h);
    }

    #[test]
    fn cf_unit_cases() {
        let chain = ThzChain {
            lo_dc_power: 0.0,
            ..ThzChain::reference()
        };
        assert_eq!(cf_thz(0.0, 1e9, 1e-6, 1e-3, &chain, 0.1).unwrap(), 0.0);
        assert_relative_eq!(cf_thz(1.0, 1.0, 0.0, 1.0, &chain, 1.0).unwrap(), 1.0);
    }
}
