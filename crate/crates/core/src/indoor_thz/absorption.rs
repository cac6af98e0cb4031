//! Molecular absorption coefficient κ(f).
//!
//! Two backends: a six-line water-vapour/oxygen model valid over 100–450 GHz,
//! and a table of κ over (frequency, relative humidity) with bilinear
//! interpolation. The bundled default table is a sampling of the line model
//! at 296 K and 1 atm.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::units::SPEED_OF_LIGHT;

pub const LINE_MODEL_LOW_HZ: f64 = 100e9;
pub const LINE_MODEL_HIGH_HZ: f64 = 450e9;
pub const REFERENCE_TEMPERATURE_K: f64 = 296.0;
pub const REFERENCE_PRESSURE_PA: f64 = 101_325.0;

const DEFAULT_TABLE: &str = include_str!("../../data/absorption_default.csv");

/// Line centres in cm⁻¹.
const LINE_CENTRES: [f64; 6] = [3.96, 6.11, 10.84, 12.68, 14.65, 14.94];

#[derive(Debug, Clone, PartialEq)]
pub enum AbsorptionModel {
    /// No absorption (vacuum).
    None,
    /// Six-line model, 100–450 GHz.
    LineModel,
    Table(AbsorptionTable),
}

impl AbsorptionModel {
    pub fn coefficient(
        &self,
        f: f64,
        relative_humidity: f64,
        temperature: f64,
        pressure: f64,
    ) -> Result<f64> {
        absorption_coefficient(self, f, relative_humidity, temperature, pressure)
    }
}

/// Volume mixing ratio of water vapour, from the Buck saturation pressure.
pub fn water_vapour_mixing_ratio(relative_humidity: f64, temperature: f64, pressure: f64) -> f64 {
    let p_hpa = pressure / 100.0;
    let t_c = temperature - 273.15;
    let p_sat = 6.1121 * (1.0007 + 3.46e-6 * p_hpa) * (17.502 * t_c / (240.97 + t_c)).exp();
    relative_humidity * p_sat / p_hpa
}

fn line_model(f: f64, relative_humidity: f64, temperature: f64, pressure: f64) -> f64 {
    let mu = water_vapour_mixing_ratio(relative_humidity, temperature, pressure);
    let dry = 1.0 - mu;
    let strengths = [
        (
            5.159e-5 * dry * (-6.65e-5 * dry + 0.0159),
            (-2.09e-4 * dry + 0.05).powi(2),
        ),
        (
            0.1925 * mu * (0.1350 * mu + 0.0318),
            (0.4241 * mu + 0.0998).powi(2),
        ),
        (
            0.2251 * mu * (0.1314 * mu + 0.0297),
            (0.4127 * mu + 0.0932).powi(2),
        ),
        (
            2.053 * mu * (0.1717 * mu + 0.0306),
            (0.5394 * mu + 0.0961).powi(2),
        ),
        (
            0.177 * mu * (0.0832 * mu + 0.0213),
            (0.2615 * mu + 0.0668).powi(2),
        ),
        (
            2.146 * mu * (0.1206 * mu + 0.0277),
            (0.3789 * mu + 0.0871).powi(2),
        ),
    ];
    let wavenumber = f / (100.0 * SPEED_OF_LIGHT);
    let lines: f64 = strengths
        .iter()
        .zip(LINE_CENTRES)
        .map(|(&(a, b), c)| a / (b + (wavenumber - c).powi(2)))
        .sum();
    let continuum = mu / 0.0157 * (2e-4 + 0.915e-112 * f.powf(9.42));
    lines + continuum
}

/// κ(f) in 1/m.
pub fn absorption_coefficient(
    model: &AbsorptionModel,
    f: f64,
    relative_humidity: f64,
    temperature: f64,
    pressure: f64,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&relative_humidity) {
        return Err(Error::domain(
            "absorption_coefficient",
            format!("relative humidity must be a fraction in [0, 1], got {relative_humidity}"),
        ));
    }
    match model {
        AbsorptionModel::None => Ok(0.0),
        AbsorptionModel::LineModel => {
            if !(LINE_MODEL_LOW_HZ..=LINE_MODEL_HIGH_HZ).contains(&f) {
                return Err(Error::OutOfBand {
                    frequency_hz: f,
                    low_hz: LINE_MODEL_LOW_HZ,
                    high_hz: LINE_MODEL_HIGH_HZ,
                });
            }
            if !(temperature > 0.0) || !(pressure > 0.0) {
                return Err(Error::domain(
                    "absorption_coefficient",
                    "temperature and pressure must be > 0",
                ));
            }
            Ok(line_model(f, relative_humidity, temperature, pressure))
        }
        AbsorptionModel::Table(t) => t.interpolate(f, relative_humidity),
    }
}

/// κ sampled on a rectangular (frequency × relative humidity) grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsorptionTable {
    frequencies: Vec<f64>,
    humidities: Vec<f64>,
    /// Row-major: kappa[i_f * humidities.len() + i_rh].
    kappa: Vec<f64>,
}

impl AbsorptionTable {
    /// The bundled table sampled from the line model.
    pub fn bundled() -> Self {
        Self::parse(DEFAULT_TABLE, Path::new("<bundled absorption table>"))
            .expect("bundled absorption table is well formed")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    /// Parse `frequency_Hz,RH_fraction,kappa_per_m` CSV text.
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let bad = |message: String| Error::DataFile {
            path: PathBuf::from(origin),
            message,
        };
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = rdr.headers().map_err(|e| bad(e.to_string()))?.clone();
        let expected = ["frequency_Hz", "RH_fraction", "kappa_per_m"];
        if headers.len() != 3 || headers.iter().zip(expected).any(|(h, e)| h != e) {
            return Err(bad(format!("header must be {}", expected.join(","))));
        }
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| bad(e.to_string()))?;
            let mut vals = [0.0; 3];
            for (k, v) in vals.iter_mut().enumerate() {
                *v = rec[k]
                    .parse::<f64>()
                    .map_err(|e| bad(format!("row {}: column {}: {e}", i + 2, expected[k])))?;
            }
            if !(vals[2] >= 0.0) {
                return Err(bad(format!("row {}: kappa must be >= 0", i + 2)));
            }
            rows.push(vals);
        }
        Self::from_rows(&rows).map_err(|e| match e {
            Error::Domain { detail, .. } => bad(detail),
            other => other,
        })
    }

    /// Build from (frequency, RH, κ) triples covering a full grid.
    pub fn from_rows(rows: &[[f64; 3]]) -> Result<Self> {
        let mut frequencies: Vec<f64> = rows.iter().map(|r| r[0]).collect();
        let mut humidities: Vec<f64> = rows.iter().map(|r| r[1]).collect();
        for v in [&mut frequencies, &mut humidities] {
            v.sort_by(f64::total_cmp);
            v.dedup();
        }
        if frequencies.len() < 2 || humidities.is_empty() {
            return Err(Error::domain(
                "AbsorptionTable",
                "need at least two frequencies",
            ));
        }
        if rows.len() != frequencies.len() * humidities.len() {
            return Err(Error::domain(
                "AbsorptionTable",
                format!(
                    "grid is not rectangular: {} rows for {} frequencies x {} humidities",
                    rows.len(),
                    frequencies.len(),
                    humidities.len()
                ),
            ));
        }
        let mut kappa = vec![f64::NAN; rows.len()];
        for r in rows {
            let i = frequencies
                .binary_search_by(|x| x.total_cmp(&r[0]))
                .unwrap();
            let j = humidities.binary_search_by(|x| x.total_cmp(&r[1])).unwrap();
            kappa[i * humidities.len() + j] = r[2];
        }
        if kappa.iter().any(|k| k.is_nan()) {
            return Err(Error::domain("AbsorptionTable", "duplicate grid points"));
        }
        Ok(Self {
            frequencies,
            humidities,
            kappa,
        })
    }

    pub fn frequency_range(&self) -> (f64, f64) {
        (self.frequencies[0], *self.frequencies.last().unwrap())
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.kappa[i * self.humidities.len() + j]
    }

    pub fn interpolate(&self, f: f64, relative_humidity: f64) -> Result<f64> {
        let (lo, hi) = self.frequency_range();
        if !(lo..=hi).contains(&f) {
            return Err(Error::OutOfBand {
                frequency_hz: f,
                low_hz: lo,
                high_hz: hi,
            });
        }
        let (i, tf) = bracket(&self.frequencies, f);
        if self.humidities.len() == 1 {
            return Ok(self.at(i, 0) * (1.0 - tf) + self.at(i + 1, 0) * tf);
        }
        let (rh_lo, rh_hi) = (self.humidities[0], *self.humidities.last().unwrap());
        if !(rh_lo..=rh_hi).contains(&relative_humidity) {
            return Err(Error::domain(
                "AbsorptionTable",
                format!(
                    "relative humidity {relative_humidity} outside table range [{rh_lo}, {rh_hi}]"
                ),
            ));
        }
        let (j, th) = bracket(&self.humidities, relative_humidity);
        let k00 = self.at(i, j);
        let k01 = self.at(i, j + 1);
        let k10 = self.at(i + 1, j);
        let k11 = self.at(i + 1, j + 1);
        Ok((1.0 - tf) * ((1.0 - th) * k00 + th * k01) + tf * ((1.0 - th) * k10 + th * k11))
    }

    /// Table with κ = 0 everywhere on the same grid.
    pub fn zeroed(&self) -> Self {
        Self {
            kappa: vec![0.0; self.kappa.len()],
            ..self.clone()
        }
    }

    /// Sample the line model on a grid, at the reference temperature and pressure.
    pub fn sample_line_model(frequencies: &[f64], humidities: &[f64]) -> Result<Self> {
        let mut rows = Vec::with_capacity(frequencies.len() * humidities.len());
        for &f in frequencies {
            for &rh in humidities {
                let k = absorption_coefficient(
                    &AbsorptionModel::LineModel,
                    f,
                    rh,
                    REFERENCE_TEMPERATURE_K,
                    REFERENCE_PRESSURE_PA,
                )?;
                rows.push([f, rh, k]);
            }
        }
        Self::from_rows(&rows)
    }

    /// CSV text in the table file format.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("frequency_Hz,RH_fraction,kappa_per_m\n");
        for (i, f) in self.frequencies.iter().enumerate() {
            for (j, rh) in self.humidities.iter().enumerate() {
                out.push_str(&format!("{f:.6e},{rh},{:.9e}\n", self.at(i, j)));
            }
        }
        out
    }
}

/// Index of the lower grid node and the fractional position within the cell.
fn bracket(grid: &[f64], x: f64) -> (usize, f64) {
    let n = grid.len();
    let i = match grid.binary_search_by(|g| g.total_cmp(&x)) {
        Ok(i) => i.min(n - 2),
        Err(i) => i.saturating_sub(1).min(n - 2),
    };
    let t = (x - grid[i]) / (grid[i + 1] - grid[i]);
    (i, t)
}
