//! Composed outdoor channels and outage estimation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fso::{AoAParams, DisplacementPointing, MalagaParams, MalagaSampler};
use super::thz::{AlphaMuParams, AngularPointing};
use crate::error::{Error, Result};
use crate::mathkit::{gamma_fn, integrate, integrate_semi_infinite, QuadratureSpec, RngStream};

/// h = h_l·h_t·h_p·h_a.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FsoChannel {
    pub path_loss: f64,
    pub turbulence: MalagaParams,
    pub pointing: DisplacementPointing,
    pub aoa: AoAParams,
}

/// h = g_l·g_t·h_p with the Gaussian-beam displacement pointing model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThzDisplacementChannel {
    /// g_l, antennas included.
    pub path_gain: f64,
    pub fading: AlphaMuParams,
    pub pointing: DisplacementPointing,
}

/// h = g_l′·g_t·g_p with the antenna-pattern pointing model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThzAngularChannel {
    /// g_l′, antennas excluded.
    pub path_gain: f64,
    pub fading: AlphaMuParams,
    pub pointing: AngularPointing,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum OutdoorChannel {
    Fso(FsoChannel),
    ThzDisplacement(ThzDisplacementChannel),
    ThzAngular(ThzAngularChannel),
}

fn alpha_mu_mean(f: &AlphaMuParams) -> Result<f64> {
    Ok(
        f.root_mean * gamma_fn(f.mu + 1.0 / f.alpha)?
            / (gamma_fn(f.mu)? * f.mu.powf(1.0 / f.alpha)),
    )
}

impl OutdoorChannel {
    pub fn validate(&self) -> Result<()> {
        let positive = |what: &'static str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::domain(
                    what,
                    format!("path gain must be finite and > 0, got {v}"),
                ))
            }
        };
        match self {
            OutdoorChannel::Fso(c) => {
                positive("FsoChannel", c.path_loss)?;
                c.turbulence.validate()?;
                c.pointing.validate()?;
                c.aoa.validate()
            }
            OutdoorChannel::ThzDisplacement(c) => {
                positive("ThzDisplacementChannel", c.path_gain)?;
                c.fading.validate()?;
                c.pointing.validate()
            }
            OutdoorChannel::ThzAngular(c) => {
                positive("ThzAngularChannel", c.path_gain)?;
                c.fading.validate()?;
                c.pointing.validate()
            }
        }
    }

    /// Reference amplitude h_ref at which the instantaneous SNR equals the
    /// average SNR γ̄.
    pub fn reference_gain(&self) -> Result<f64> {
        self.validate()?;
        Ok(match self {
            OutdoorChannel::Fso(c) => {
                c.path_loss
                    * c.pointing.a0()
                    * c.turbulence.mean()
                    * (1.0 - c.aoa.interruption_probability())
            }
            OutdoorChannel::ThzDisplacement(c) => {
                c.path_gain * alpha_mu_mean(&c.fading)? * c.pointing.mean()
            }
            OutdoorChannel::ThzAngular(c) => c.path_gain * c.pointing.max_gain,
        })
    }
}

/// Maps a channel amplitude to SNR: γ = scale·h².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "value", rename_all = "snake_case")]
pub enum SnrScale {
    /// γ = γ̄·(h/h_ref)².
    Average(f64),
    /// γ = K·h² with K fixed by the link budget.
    LinkBudget(f64),
}

impl SnrScale {
    pub fn factor(&self, channel: &OutdoorChannel) -> Result<f64> {
        match *self {
            SnrScale::Average(g) => {
                if !(g >= 0.0) {
                    return Err(Error::domain("SnrScale", "average SNR must be >= 0"));
                }
                Ok(g / channel.reference_gain()?.powi(2))
            }
            SnrScale::LinkBudget(k) => {
                if !(k >= 0.0) {
                    return Err(Error::domain("SnrScale", "link-budget factor must be >= 0"));
                }
                Ok(k)
            }
        }
    }

    /// K = (R·P_t)²/N for intensity-modulated FSO.
    pub fn fso_link_budget(responsivity: f64, tx_power: f64, noise_power: f64) -> Self {
        SnrScale::LinkBudget((responsivity * tx_power).powi(2) / noise_power)
    }

    /// K = P_t/N for THz.
    pub fn thz_link_budget(tx_power: f64, noise_power: f64) -> Self {
        SnrScale::LinkBudget(tx_power / noise_power)
    }
}

/// Draws channel amplitudes. Each draw consumes random numbers in a fixed
/// order, so sweeps over pointing or loss parameters share random numbers.
#[derive(Debug, Clone)]
pub struct ChannelSampler {
    channel: OutdoorChannel,
    malaga: Option<MalagaSampler>,
}

impl ChannelSampler {
    pub fn new(channel: &OutdoorChannel) -> Result<Self> {
        channel.validate()?;
        let malaga = match channel {
            OutdoorChannel::Fso(c) => Some(MalagaSampler::new(&c.turbulence)?),
            _ => None,
        };
        Ok(Self {
            channel: *channel,
            malaga,
        })
    }

    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        match &self.channel {
            OutdoorChannel::Fso(c) => {
                let t = self.malaga.as_ref().expect("built for FSO").sample(rng);
                let p = c.pointing.sample(rng);
                let a = c.aoa.sample(rng);
                c.path_loss * t * p * a
            }
            OutdoorChannel::ThzDisplacement(c) => {
                let t = c.fading.sample(rng);
                c.path_gain * t * c.pointing.sample(rng)
            }
            OutdoorChannel::ThzAngular(c) => {
                let t = c.fading.sample(rng);
                c.path_gain * t * c.pointing.sample(rng)
            }
        }
    }
}

const CHUNK: usize = 4096;

/// `n` channel amplitudes; chunk `c` of 4096 draws uses substream `c` of
/// `seed`, so the output is independent of the worker count.
pub fn sample_channel(channel: &OutdoorChannel, n: usize, seed: u64) -> Result<Vec<f64>> {
    let sampler = ChannelSampler::new(channel)?;
    let mut out = vec![0.0; n];
    out.par_chunks_mut(CHUNK)
        .enumerate()
        .for_each(|(c, chunk)| {
            let mut rng = RngStream::new(seed, c as u64);
            for v in chunk {
                *v = sampler.sample(&mut rng);
            }
        });
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outage {
    pub probability: f64,
    pub stderr: f64,
}

/// P(scale·h² < γ_th) over the given amplitudes.
pub fn outage_from_samples(samples: &[f64], scale: f64, threshold: f64) -> Outage {
    let n = samples.len() as f64;
    let below = samples
        .iter()
        .filter(|h| scale * **h * **h < threshold)
        .count() as f64;
    let p = below / n;
    Outage {
        probability: p,
        stderr: (p * (1.0 - p) / n).sqrt(),
    }
}

/// Monte Carlo outage probability P(γ < γ_th).
pub fn outage_mc(
    channel: &OutdoorChannel,
    snr: SnrScale,
    threshold: f64,
    n: usize,
    seed: u64,
) -> Result<Outage> {
    if n == 0 {
        return Err(Error::domain("outage_mc", "need at least one sample"));
    }
    let scale = snr.factor(channel)?;
    let samples = sample_channel(channel, n, seed)?;
    Ok(outage_from_samples(&samples, scale, threshold))
}

/// FSO outage by numerical integration of the product distribution:
/// P = a1 + (1 − a1)·P(h_t·h_p < x), with the pointing CDF in closed form
/// and the Málaga density integrated by quadrature.
pub fn fso_outage_semi_analytic(
    channel: &FsoChannel,
    snr: SnrScale,
    threshold: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let wrapped = OutdoorChannel::Fso(*channel);
    let scale = snr.factor(&wrapped)?;
    if threshold <= 0.0 {
        return Ok(0.0);
    }
    let a1 = channel.aoa.interruption_probability();
    if scale == 0.0 {
        return Ok(1.0);
    }
    let x = (threshold / scale).sqrt() / channel.path_loss;
    let p = &channel.pointing;
    let a0 = p.a0();
    let xi2 = p.xi().powi(2);
    let pdf = |t: f64| {
        if t > 0.0 {
            super::fso::malaga_pdf(&channel.turbulence, t).unwrap_or(0.0)
        } else {
            0.0
        }
    };
    let y = x / a0;
    let below = integrate(pdf, 0.0, y, spec)?;
    let product = if xi2.is_infinite() {
        below
    } else {
        let tail = integrate_semi_infinite(|t| pdf(y + t) * (y / (y + t)).powf(xi2), 0.0, spec)?;
        below + tail
    };
    Ok(a1 + (1.0 - a1) * product.clamp(0.0, 1.0))
}
