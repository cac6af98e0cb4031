//! FSO impairments: Beer–Lambert loss, Málaga turbulence, Gaussian-beam
//! pointing error and AoA link interruption.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mathkit::{
    bessel_k, binomial, erf, integrate, integrate_semi_infinite, ln_gamma, QuadratureSpec,
    RngStream,
};

/// h_l = exp(−ξ_l·L).
pub fn fso_path_loss(attenuation_per_m: f64, length: f64) -> f64 {
    (-attenuation_per_m * length).exp()
}

/// Beam radius at distance L including turbulence-induced spreading,
/// w_z = w0·√(1 + (1 + 2w0²/ρ0²)(L/z_R)²) with ρ0 = (0.55·C_n²·k²·L)^(−3/5).
pub fn turbulent_beam_width(waist: f64, wavelength: f64, length: f64, cn2: f64) -> Result<f64> {
    if !(waist > 0.0) || !(wavelength > 0.0) || !(length > 0.0) || !(cn2 >= 0.0) {
        return Err(Error::domain(
            "turbulent_beam_width",
            "need waist, wavelength, length > 0 and C_n² >= 0",
        ));
    }
    let k = 2.0 * PI / wavelength;
    let z_r = PI * waist * waist / wavelength;
    let spread = if cn2 == 0.0 {
        1.0
    } else {
        let rho0 = (0.55 * cn2 * k * k * length).powf(-0.6);
        1.0 + 2.0 * waist * waist / (rho0 * rho0)
    };
    let r = length / z_r;
    Ok(waist * (1.0 + spread * r * r).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MalagaParams {
    /// Ω, average power of the LoS component.
    pub los_power: f64,
    /// 2b0, average power of all scatter components.
    pub scatter_power: f64,
    /// ρ, fraction of scatter power coupled to the LoS component.
    pub coupling: f64,
    /// φ_a − φ_b, rad.
    pub phase_delta: f64,
    /// ε, large-scale scattering parameter.
    pub large_scale: f64,
    /// β, small-scale scattering parameter (positive integer).
    pub small_scale: f64,
}

impl MalagaParams {
    /// Parameter set used for the outdoor comparisons (ε = 2.5, β = 2).
    pub fn reference() -> Self {
        Self {
            los_power: 1.3265,
            scatter_power: 2.0 * 0.1079,
            coupling: 0.596,
            phase_delta: 0.0,
            large_scale: 2.5,
            small_scale: 2.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let b = self.small_scale;
        if !(b >= 1.0) || b.fract() != 0.0 || b > 1e4 {
            return Err(Error::domain(
                "MalagaParams",
                format!("β must be a positive integer, got {b}"),
            ));
        }
        if !(self.large_scale > 0.0) || !(self.los_power >= 0.0) || !(self.scatter_power > 0.0) {
            return Err(Error::domain(
                "MalagaParams",
                "need ε > 0, Ω >= 0 and 2b0 > 0",
            ));
        }
        if !(0.0..=1.0).contains(&self.coupling) {
            return Err(Error::domain("MalagaParams", "ρ must lie in [0, 1)"));
        }
        if self.coupling == 1.0 {
            return Err(Error::DegenerateParameter(
                "ρ = 1 leaves no uncoupled scatter power (g = 0)".into(),
            ));
        }
        if self.omega_prime() < 0.0 {
            return Err(Error::domain("MalagaParams", "Ω′ must be >= 0"));
        }
        Ok(())
    }

    /// g = 2b0(1 − ρ).
    pub fn g(&self) -> f64 {
        self.scatter_power * (1.0 - self.coupling)
    }

    /// Ω′ = Ω + 2b0ρ + 2√(2b0ρΩ)·cos(φ_a − φ_b).
    pub fn omega_prime(&self) -> f64 {
        let c = self.scatter_power * self.coupling;
        self.los_power + c + 2.0 * (c * self.los_power).sqrt() * self.phase_delta.cos()
    }

    /// E[h_t] = g + Ω′.
    pub fn mean(&self) -> f64 {
        self.g() + self.omega_prime()
    }

    fn beta(&self) -> u32 {
        self.small_scale as u32
    }
}

/// Málaga density
/// f(h) = A Σ_{s=1}^{β} a_s h^((ε+s)/2 − 1) K_{ε−s}(2√(εβh/(gβ+Ω′))).
pub fn malaga_pdf(p: &MalagaParams, h: f64) -> Result<f64> {
    p.validate()?;
    if !(h > 0.0) {
        return Err(Error::domain(
            "malaga_pdf",
            format!("h must be > 0, got {h}"),
        ));
    }
    Ok(malaga_pdf_unchecked(p, h))
}

fn malaga_pdf_unchecked(p: &MalagaParams, h: f64) -> f64 {
    let (eps, beta) = (p.large_scale, p.small_scale);
    let (g, om) = (p.g(), p.omega_prime());
    let gbo = g * beta + om;
    // ln A
    let ln_a = std::f64::consts::LN_2 + 0.5 * eps * eps.ln()
        - (1.0 + 0.5 * eps) * g.ln()
        - ln_gamma(eps).unwrap_or(f64::NAN)
        + (beta + 0.5 * eps) * (g * beta / gbo).ln();
    let x = 2.0 * (eps * beta * h / gbo).sqrt();
    let mut sum = 0.0;
    for s in 1..=p.beta() {
        let sf = s as f64;
        let ratio_term = if sf > 1.0 {
            (sf - 1.0) * (om / g).ln()
        } else {
            0.0
        };
        let ln_as = binomial(p.beta() as u64 - 1, s as u64 - 1).ln() + (1.0 - 0.5 * sf) * gbo.ln()
            - ln_gamma(sf).unwrap_or(0.0)
            + ratio_term
            + 0.5 * sf * (eps / beta).ln();
        let k = bessel_k(eps - sf, x).unwrap_or(0.0);
        if k > 0.0 && k.is_finite() {
            sum += (ln_a + ln_as + (0.5 * (eps + sf) - 1.0) * h.ln() + k.ln()).exp();
        }
    }
    sum
}

/// Inverse-transform sampler over a tabulated Málaga CDF.
///
/// The CDF is integrated on 512 log-spaced knots and inverted by monotone
/// cubic (PCHIP) interpolation of ln h against F.
#[derive(Debug, Clone)]
pub struct MalagaSampler {
    params: MalagaParams,
    cdf: Vec<f64>,
    ln_h: Vec<f64>,
    slopes: Vec<f64>,
}

const MALAGA_KNOTS: usize = 512;

impl MalagaSampler {
    pub fn new(params: &MalagaParams) -> Result<Self> {
        params.validate()?;
        let spec = QuadratureSpec::new(1e-10, 1e-300, 4000)?;
        let f = |h: f64| malaga_pdf_unchecked(params, h);
        let mean = params.mean();
        let lo = mean * 1e-8;
        let mut hi = mean * 10.0;
        while integrate_semi_infinite(|t| f(hi + t), 0.0, &spec)? > 1e-13 {
            hi *= 2.0;
            if hi > mean * 1e8 {
                return Err(Error::Convergence {
                    what: "Málaga tail bound",
                    best_estimate: hi,
                    error_estimate: f64::NAN,
                });
            }
        }
        let step = (hi / lo).ln() / (MALAGA_KNOTS - 1) as f64;
        let knots: Vec<f64> = (0..MALAGA_KNOTS)
            .map(|i| lo * (step * i as f64).exp())
            .collect();
        let mut acc = integrate(f, 0.0, lo, &spec)?;
        let mut cdf = vec![acc];
        let mut ln_h = vec![lo.ln()];
        for w in knots.windows(2) {
            acc += integrate(f, w[0], w[1], &spec)?;
            if acc > *cdf.last().expect("non-empty") {
                cdf.push(acc);
                ln_h.push(w[1].ln());
            }
        }
        let total = acc;
        for c in &mut cdf {
            *c /= total;
        }
        let slopes = pchip_slopes(&cdf, &ln_h);
        Ok(Self {
            params: *params,
            cdf,
            ln_h,
            slopes,
        })
    }

    pub fn params(&self) -> &MalagaParams {
        &self.params
    }

    /// Quantile for u ∈ (0, 1).
    pub fn quantile(&self, u: f64) -> f64 {
        let first = self.cdf[0];
        if u <= first {
            // Below the first knot the density is treated as flat.
            return self.ln_h[0].exp() * u / first;
        }
        let n = self.cdf.len();
        if u >= self.cdf[n - 1] {
            return self.ln_h[n - 1].exp();
        }
        let i = self.cdf.partition_point(|c| *c <= u) - 1;
        hermite(
            u,
            (self.cdf[i], self.cdf[i + 1]),
            (self.ln_h[i], self.ln_h[i + 1]),
            (self.slopes[i], self.slopes[i + 1]),
        )
        .exp()
    }

    /// Tabulated CDF at h.
    pub fn cdf(&self, h: f64) -> f64 {
        if !(h > 0.0) {
            return 0.0;
        }
        let x = h.ln();
        if x <= self.ln_h[0] {
            return self.cdf[0] * h / self.ln_h[0].exp();
        }
        if x >= *self.ln_h.last().expect("non-empty") {
            return 1.0;
        }
        // F is monotone in ln h; bisect on the interpolant.
        let (mut a, mut b) = (0.0, 1.0);
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if self.quantile(m).ln() < x {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        self.quantile(rng.uniform_open())
    }
}

/// Fritsch–Carlson monotone slopes.
fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n < 2 {
        return vec![0.0; n];
    }
    let d: Vec<f64> = (0..n - 1)
        .map(|i| (y[i + 1] - y[i]) / (x[i + 1] - x[i]))
        .collect();
    let mut m = vec![0.0; n];
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for i in 1..n - 1 {
        if d[i - 1] * d[i] > 0.0 {
            let h0 = x[i] - x[i - 1];
            let h1 = x[i + 1] - x[i];
            let w1 = 2.0 * h1 + h0;
            let w2 = h1 + 2.0 * h0;
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    m
}

fn hermite(x: f64, (x0, x1): (f64, f64), (y0, y1): (f64, f64), (m0, m1): (f64, f64)) -> f64 {
    let h = x1 - x0;
    let t = (x - x0) / h;
    let t2 = t * t;
    let t3 = t2 * t;
    (2.0 * t3 - 3.0 * t2 + 1.0) * y0
        + (t3 - 2.0 * t2 + t) * h * m0
        + (-2.0 * t3 + 3.0 * t2) * y1
        + (t3 - t2) * h * m1
}

/// Gaussian-beam displacement pointing error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisplacementPointing {
    /// w_z, beam radius at the receiver, m.
    pub beam_width: f64,
    /// r_a, m.
    pub aperture_radius: f64,
    /// σ_m, m.
    pub displacement_std: f64,
}

impl DisplacementPointing {
    pub fn validate(&self) -> Result<()> {
        if !(self.beam_width > 0.0)
            || !(self.aperture_radius > 0.0)
            || !(self.displacement_std >= 0.0)
        {
            return Err(Error::domain(
                "DisplacementPointing",
                "need beam width and aperture radius > 0, displacement std >= 0",
            ));
        }
        Ok(())
    }

    /// v = √(π/2)·r_a/w_z.
    pub fn v(&self) -> f64 {
        (PI / 2.0).sqrt() * self.aperture_radius / self.beam_width
    }

    /// A0 = erf(v)², the collected fraction with no pointing error.
    pub fn a0(&self) -> f64 {
        erf(self.v()).powi(2)
    }

    /// Equivalent beam radius w_e = w_z·√(√π·erf(v)/(2v·e^(−v²))).
    pub fn equivalent_width(&self) -> f64 {
        let v = self.v();
        self.beam_width * (PI.sqrt() * erf(v) / (2.0 * v * (-v * v).exp())).sqrt()
    }

    /// ξ_p = w_e/(2σ_m); infinite without jitter.
    pub fn xi(&self) -> f64 {
        if self.displacement_std == 0.0 {
            f64::INFINITY
        } else {
            self.equivalent_width() / (2.0 * self.displacement_std)
        }
    }

    /// f(h) = ξ²/A0^(ξ²)·h^(ξ²−1) on (0, A0].
    pub fn pdf(&self, h: f64) -> f64 {
        let (a0, x2) = (self.a0(), self.xi().powi(2));
        if !(h > 0.0) || h > a0 || x2.is_infinite() {
            return 0.0;
        }
        x2 / a0 * (h / a0).powf(x2 - 1.0)
    }

    pub fn cdf(&self, h: f64) -> f64 {
        let a0 = self.a0();
        if h >= a0 {
            return 1.0;
        }
        if !(h > 0.0) {
            return 0.0;
        }
        let x2 = self.xi().powi(2);
        if x2.is_infinite() {
            0.0
        } else {
            (h / a0).powf(x2)
        }
    }

    /// E[h_p] = A0·ξ²/(ξ² + 1).
    pub fn mean(&self) -> f64 {
        let x2 = self.xi().powi(2);
        if x2.is_infinite() {
            self.a0()
        } else {
            self.a0() * x2 / (x2 + 1.0)
        }
    }

    /// Inverse-CDF draw h = A0·u^(1/ξ²).
    pub fn sample_with(&self, u: f64) -> f64 {
        let x2 = self.xi().powi(2);
        if x2.is_infinite() {
            self.a0()
        } else {
            self.a0() * u.powf(1.0 / x2)
        }
    }

    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        self.sample_with(rng.uniform_open())
    }
}

/// Angle-of-arrival fluctuation causing link interruption.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AoAParams {
    /// θ_FoV, rad.
    pub fov: f64,
    /// σ_a, rad.
    pub aoa_std: f64,
    /// 2 when one end vibrates, 4 when both do.
    pub sides: f64,
}

impl AoAParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.fov > 0.0) || !(self.aoa_std >= 0.0) || !(self.sides == 2.0 || self.sides == 4.0)
        {
            return Err(Error::domain(
                "AoAParams",
                "need θ_FoV > 0, σ_a >= 0 and a2 in {2, 4}",
            ));
        }
        Ok(())
    }

    /// a1 = exp(−θ_FoV²/(a2·σ_a²)), the interruption probability.
    pub fn interruption_probability(&self) -> f64 {
        if self.aoa_std == 0.0 {
            return 0.0;
        }
        (-self.fov * self.fov / (self.sides * self.aoa_std * self.aoa_std)).exp()
    }

    pub fn sample_with(&self, u: f64) -> f64 {
        if u < self.interruption_probability() {
            0.0
        } else {
            1.0
        }
    }

    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        self.sample_with(rng.uniform_open())
    }
}

/// Named weather conditions with their attenuation factor ξ_l.
#[derive(Debug, Clone, PartialEq)]
pub struct WeatherPresets {
    entries: Vec<(String, f64)>,
}

impl WeatherPresets {
    pub fn bundled() -> Self {
        Self::parse(
            include_str!("../../data/weather_presets.csv"),
            Path::new("<bundled weather presets>"),
        )
        .expect("bundled weather table is valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    /// Parses `condition_name,xi_l_per_km` rows with a header line.
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let bad = |message: String| Error::DataFile {
            path: origin.to_path_buf(),
            message,
        };
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut entries = Vec::new();
        for (line, row) in reader.records().enumerate() {
            let row = row.map_err(|e| bad(e.to_string()))?;
            if row.len() != 2 {
                return Err(bad(format!("row {}: expected 2 columns", line + 2)));
            }
            let value: f64 = row[1]
                .parse()
                .map_err(|_| bad(format!("row {}: bad attenuation '{}'", line + 2, &row[1])))?;
            if !(value >= 0.0) {
                return Err(bad(format!("row {}: attenuation must be >= 0", line + 2)));
            }
            entries.push((row[0].to_string(), value));
        }
        if entries.is_empty() {
            return Err(bad("no weather conditions".into()));
        }
        Ok(Self { entries })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    /// ξ_l in 1/km.
    pub fn per_km(&self, name: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    /// ξ_l in 1/m.
    pub fn per_m(&self, name: &str) -> Result<f64> {
        self.per_km(name).map(|v| v / 1000.0).ok_or_else(|| {
            Error::domain(
                "WeatherPresets",
                format!(
                    "unknown weather condition '{name}' (known: {})",
                    self.names().collect::<Vec<_>>().join(", ")
                ),
            )
        })
    }
}
