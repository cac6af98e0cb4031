//! Outdoor THz impairments: path loss, α–μ fading and the antenna-pattern
//! pointing model with its series CDF.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mathkit::{
    binomial, gamma_fn, gamma_lower_incomplete, gamma_upper_incomplete, integrate_with_breaks,
    ln_gamma, sample_standard_normal, QuadratureSpec, RngStream,
};
use crate::units::SPEED_OF_LIGHT;

/// Amplitude path gain c/(4πfL)·e^(−κL/2), times √(G_tx·G_rx) when the
/// antennas are part of the path budget.
pub fn thz_path_loss(
    f: f64,
    length: f64,
    g_tx: f64,
    g_rx: f64,
    kappa: f64,
    include_antennas: bool,
) -> Result<f64> {
    if !(f > 0.0) || !(length > 0.0) || !(kappa >= 0.0) {
        return Err(Error::domain(
            "thz_path_loss",
            "need f > 0, L > 0 and kappa >= 0",
        ));
    }
    let free = SPEED_OF_LIGHT / (4.0 * PI * f * length) * (-0.5 * kappa * length).exp();
    Ok(if include_antennas {
        free * (g_tx * g_rx).sqrt()
    } else {
        free
    })
}

/// Max gain π·N² of an N × N array.
pub fn ula_gain(n_ant: f64) -> f64 {
    PI * n_ant * n_ant
}

/// Half-power beamwidth 1.061/N of an N × N array, rad.
pub fn ula_beamwidth(n_ant: f64) -> f64 {
    1.061 / n_ant
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaMuParams {
    pub alpha: f64,
    /// Positive integer.
    pub mu: f64,
    /// α-root mean value ĝ.
    pub root_mean: f64,
}

impl AlphaMuParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) || !(self.root_mean > 0.0) {
            return Err(Error::domain("AlphaMuParams", "need α > 0 and ĝ > 0"));
        }
        if !(self.mu >= 1.0) || self.mu.fract() != 0.0 || self.mu > 1e4 {
            return Err(Error::domain(
                "AlphaMuParams",
                format!("μ must be a positive integer, got {}", self.mu),
            ));
        }
        Ok(())
    }

    pub fn pdf(&self, g: f64) -> f64 {
        if !(g > 0.0) {
            return 0.0;
        }
        let (a, m, r) = (self.alpha, self.mu, self.root_mean);
        let ln = a.ln() + m * m.ln() - a * m * r.ln() - ln_gamma(m).unwrap_or(f64::NAN)
            + (a * m - 1.0) * g.ln()
            - m * (g / r).powf(a);
        ln.exp()
    }

    /// P(g_t ≤ g) = γ(μ, μ(g/ĝ)^α)/Γ(μ).
    pub fn cdf(&self, g: f64) -> f64 {
        if !(g > 0.0) {
            return 0.0;
        }
        let x = self.mu * (g / self.root_mean).powf(self.alpha);
        let lower = gamma_lower_incomplete(self.mu, x).unwrap_or(f64::NAN);
        (lower / gamma_fn(self.mu).unwrap_or(f64::NAN)).clamp(0.0, 1.0)
    }

    /// g = ĝ·(G/μ)^(1/α) with G ~ Gamma(μ, 1) drawn as a sum of μ
    /// exponentials, so every draw consumes exactly μ uniforms.
    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        let mut g = 0.0;
        for _ in 0..self.mu as u32 {
            g -= rng.uniform_open().ln();
        }
        self.root_mean * (g / self.mu).powf(1.0 / self.alpha)
    }
}

pub fn alpha_mu_pdf(p: &AlphaMuParams, g: f64) -> Result<f64> {
    p.validate()?;
    Ok(p.pdf(g))
}

pub fn alpha_mu_sample(p: &AlphaMuParams, rng: &mut RngStream) -> Result<f64> {
    p.validate()?;
    Ok(p.sample(rng))
}

/// Antenna-pattern pointing error with Gaussian angle jitter at both ends.
///
/// Angle order is (Tx azimuth, Tx elevation, Rx azimuth, Rx elevation).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularPointing {
    pub angle_stds: [f64; 4],
    pub beamwidths: [f64; 4],
    pub max_gain: f64,
}

impl AngularPointing {
    /// Same jitter on all four angles, N × N arrays at both ends.
    pub fn ula(n_ant: f64, angle_std: f64) -> Self {
        Self {
            angle_stds: [angle_std; 4],
            beamwidths: [ula_beamwidth(n_ant); 4],
            max_gain: ula_gain(n_ant),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.angle_stds.iter().any(|s| !(*s >= 0.0))
            || self.beamwidths.iter().any(|b| !(*b > 0.0))
        {
            return Err(Error::domain(
                "AngularPointing",
                "need angle stds >= 0 and beamwidths > 0",
            ));
        }
        if !(self.max_gain > 0.0) {
            return Err(Error::domain("AngularPointing", "max gain must be > 0"));
        }
        Ok(())
    }

    /// ξᵢ = σᵢ²/(θᵢ^bw)².
    pub fn xi(&self) -> [f64; 4] {
        std::array::from_fn(|i| (self.angle_stds[i] / self.beamwidths[i]).powi(2))
    }

    pub fn xi_min(&self) -> f64 {
        self.xi().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// C_g = ∏√(ξ′/ξᵢ).
    pub fn c_g(&self) -> f64 {
        let m = self.xi_min();
        self.xi().iter().map(|x| (m / x).sqrt()).product()
    }

    /// g_p = √G_tx·√G_rx = G0·exp(−½Σ(θᵢ/θᵢ^bw)²).
    pub fn gain_at(&self, angles: [f64; 4]) -> f64 {
        let e: f64 = (0..4)
            .map(|i| (angles[i] / self.beamwidths[i]).powi(2))
            .sum();
        self.max_gain * (-0.5 * e).exp()
    }

    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        let angles = std::array::from_fn(|i| self.angle_stds[i] * sample_standard_normal(rng));
        self.gain_at(angles)
    }
}

pub fn angular_pointing_sample(p: &AngularPointing, rng: &mut RngStream) -> Result<f64> {
    p.validate()?;
    Ok(p.sample(rng))
}

/// Mixture weights Δ_k of −ln(g_p/G0) as a sum of Gamma(½, ξᵢ) variables,
/// Δ_k = (1/k)·Σ_{i=1}^{k} i·γᵢ·Δ_{k−i}, γᵢ = Σ_j (1 − ξ′/ξ_j)^i/(2i).
#[derive(Debug, Clone)]
pub struct DeltaSeries {
    ratios: [f64; 4],
    deltas: Vec<f64>,
}

impl DeltaSeries {
    pub fn new(p: &AngularPointing) -> Self {
        let m = p.xi_min();
        Self {
            ratios: p.xi().map(|x| 1.0 - m / x),
            deltas: vec![1.0],
        }
    }

    /// i·γᵢ.
    fn i_gamma(&self, i: usize) -> f64 {
        0.5 * self.ratios.iter().map(|q| q.powi(i as i32)).sum::<f64>()
    }

    pub fn get(&mut self, k: usize) -> f64 {
        while self.deltas.len() <= k {
            let n = self.deltas.len();
            let s: f64 = (1..=n).map(|i| self.i_gamma(i) * self.deltas[n - i]).sum();
            self.deltas.push(s / n as f64);
        }
        self.deltas[k]
    }

    /// True when every ξᵢ is equal, so Δ_k = 0 for k ≥ 1.
    pub fn is_trivial(&self) -> bool {
        self.ratios.iter().all(|q| *q == 0.0)
    }
}

/// ln J_n for J_n = ∫₀^∞ yⁿ·exp(−a·y − b·y²) dy with b > 0, by adaptive
/// quadrature of the integrand rescaled about its peak.
pub fn ln_gaussian_moment(n: u32, a: f64, b: f64) -> Result<f64> {
    if !(b > 0.0) || n == 0 {
        return Err(Error::domain("ln_gaussian_moment", "need n >= 1 and b > 0"));
    }
    let nf = n as f64;
    let disc = (a * a + 8.0 * b * nf).sqrt();
    let peak = if a >= 0.0 {
        2.0 * nf / (a + disc)
    } else {
        (disc - a) / (4.0 * b)
    };
    let (ap, bp) = (a * peak, b * peak * peak);
    let ln_at = |s: f64| nf * s.ln() - ap * (s - 1.0) - bp * (s * s - 1.0);
    let width = 1.0 / (nf + 2.0 * bp).sqrt();
    let upper = 1.0 + 60.0 * width;
    let breaks: Vec<f64> = [-6.0, -3.0, -1.0, 1.0, 3.0, 6.0, 12.0, 24.0]
        .iter()
        .map(|k| 1.0 + k * width)
        .filter(|s| *s > 0.0 && *s < upper)
        .chain(std::iter::once(1.0))
        .collect();
    let spec = QuadratureSpec::new(1e-12, 1e-300, 2000)?;
    let integral = integrate_with_breaks(
        |s| if s > 0.0 { ln_at(s).exp() } else { 0.0 },
        0.0,
        upper,
        &breaks,
        &spec,
    )?;
    Ok(peak.ln() + nf * peak.ln() - ap - bp + integral.ln())
}

/// J_n = ∫₀^∞ yⁿ·exp(A1·y − (A3/2)·y²) dy by completing the square and
/// expanding binomially into incomplete gamma functions. Suffers from
/// cancellation when A1²/A3 is large; used as a cross-check.
pub fn gaussian_moment_closed_form(n: u32, a1: f64, a3: f64) -> Result<f64> {
    if !(a3 > 0.0) {
        return Err(Error::domain(
            "gaussian_moment_closed_form",
            "A3 must be > 0",
        ));
    }
    let c = 0.5 * a3;
    let y0 = a1 / a3;
    let x = c * y0 * y0;
    let mut sum = 0.0;
    for j in 0..=n {
        let s = 0.5 * (j as f64 + 1.0);
        // ∫_{−y0}^∞ t^j e^(−c t²) dt
        let part = if y0 <= 0.0 {
            gamma_upper_incomplete(s, x)?
        } else {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            gamma_fn(s)? + sign * gamma_lower_incomplete(s, x)?
        };
        let tail = 0.5 * c.powf(-s) * part;
        sum += binomial(n as u64, j as u64) * y0.powi((n - j) as i32) * tail;
    }
    Ok(sum * x.exp())
}

/// Truncated-series CDF of h = g_l′·g_t·g_p for α–μ fading and the
/// antenna-pattern pointing model.
///
/// The exponent e^(αy) in the fading survival is expanded to second order
/// in y = −ln(g_p/G0), which is accurate when the pointing factors ξᵢ are small.
pub fn thz_cdf_series(
    pointing: &AngularPointing,
    fading: &AlphaMuParams,
    path_gain: f64,
    h: f64,
    truncation_tol: f64,
) -> Result<f64> {
    pointing.validate()?;
    fading.validate()?;
    if !(h > 0.0) || !(path_gain > 0.0) || !(truncation_tol > 0.0) {
        return Err(Error::domain(
            "thz_cdf_series",
            "need h, g_l′ and truncation tolerance > 0",
        ));
    }
    let xi_min = pointing.xi_min();
    if xi_min == 0.0 {
        // No pointing jitter: g_p = G0.
        return Ok(fading.cdf(h / (path_gain * pointing.max_gain)));
    }
    let alpha = fading.alpha;
    let a2 = fading.mu / fading.root_mean.powf(alpha);
    let big_a0 = (h / (pointing.max_gain * path_gain)).powf(alpha);
    let a3 = alpha * alpha * a2 * big_a0;
    let ln_cg = pointing.c_g().ln();
    let mut deltas = DeltaSeries::new(pointing);
    let trivial = deltas.is_trivial();
    let mut total = 0.0;
    let mut prev = f64::INFINITY;
    for k in 0..10_000usize {
        let dk = deltas.get(k);
        let mut term_k = 0.0;
        if dk > 0.0 {
            for m in 0..fading.mu as u32 {
                let mf = m as f64;
                let a1 = mf * alpha - 1.0 / xi_min - a2 * big_a0 * alpha;
                let ln_j = ln_gaussian_moment(k as u32 + 1, -a1, 0.5 * a3)?;
                let ln_pow = if m == 0 { 0.0 } else { mf * (a2 * big_a0).ln() };
                let ln_t = ln_cg + ln_pow - ln_gamma(mf + 1.0)? - a2 * big_a0 + dk.ln()
                    - ln_gamma(k as f64 + 2.0)?
                    - (k as f64 + 2.0) * xi_min.ln()
                    + ln_j;
                term_k += ln_t.exp();
            }
        }
        total += term_k;
        if trivial || (term_k < truncation_tol && term_k <= prev && k > 0) {
            return Ok((1.0 - total).clamp(0.0, 1.0));
        }
        prev = term_k;
    }
    Err(Error::Convergence {
        what: "THz pointing CDF series",
        best_estimate: (1.0 - total).clamp(0.0, 1.0),
        error_estimate: prev,
    })
}
