//! Adaptive Gauss–Kronrod quadrature on intervals, half-lines and disks.

use std::cell::RefCell;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Tolerances and work limit for an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub relative_tolerance: f64,
    pub absolute_tolerance: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            relative_tolerance: 1e-9,
            absolute_tolerance: 1e-14,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(
        relative_tolerance: f64,
        absolute_tolerance: f64,
        max_subdivisions: usize,
    ) -> Result<Self> {
        let spec = Self {
            relative_tolerance,
            absolute_tolerance,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.relative_tolerance > 0.0) || !(self.absolute_tolerance > 0.0) {
            return Err(Error::domain("QuadratureSpec", "tolerances must be > 0"));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::domain(
                "QuadratureSpec",
                "max_subdivisions must be >= 1",
            ));
        }
        Ok(())
    }

    fn tighter(&self, factor: f64) -> Self {
        Self {
            relative_tolerance: self.relative_tolerance * factor,
            absolute_tolerance: self.absolute_tolerance * factor,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Segment { a, b, value, error }
}

/// Globally adaptive Gauss–Kronrod (7/15) on [a, b], optionally pre-split at
/// the given interior breakpoints.
pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    if a == b {
        return Ok(0.0);
    }
    let mut edges = vec![a];
    edges.extend(breaks.iter().copied().filter(|&x| (x - a) * (x - b) < 0.0));
    edges.push(b);
    if a < b {
        edges.sort_by(f64::total_cmp);
    } else {
        edges.sort_by(|x, y| y.total_cmp(x));
    }
    let mut heap = BinaryHeap::new();
    for w in edges.windows(2) {
        if w[0] != w[1] {
            heap.push(gk15(&mut f, w[0], w[1]));
        }
    }
    let mut splits = 0;
    loop {
        let (total, err) = heap
            .iter()
            .fold((0.0, 0.0), |(s, e), seg| (s + seg.value, e + seg.error));
        if !total.is_finite() {
            return Err(Error::Convergence {
                what: "adaptive quadrature",
                best_estimate: total,
                error_estimate: err,
            });
        }
        if err
            <= spec
                .absolute_tolerance
                .max(spec.relative_tolerance * total.abs())
        {
            return Ok(total);
        }
        if splits >= spec.max_subdivisions {
            return Err(Error::Convergence {
                what: "adaptive quadrature",
                best_estimate: total,
                error_estimate: err,
            });
        }
        let worst = heap.pop().expect("heap is never empty here");
        let mid = 0.5 * (worst.a + worst.b);
        if mid == worst.a || mid == worst.b {
            // Interval cannot be refined further in floating point.
            heap.push(Segment {
                error: 0.0,
                ..worst
            });
            continue;
        }
        heap.push(gk15(&mut f, worst.a, mid));
        heap.push(gk15(&mut f, mid, worst.b));
        splits += 1;
    }
}

/// Adaptive integral of `f` over [a, b].
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    integrate_with_breaks(f, a, b, &[], spec)
}

/// Adaptive integral of `f` over [a, ∞) using x = a + t/(1 − t).
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    integrate(
        |t| {
            let one_minus = 1.0 - t;
            let x = a + t / one_minus;
            let v = f(x) / (one_minus * one_minus);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        0.0,
        1.0,
        spec,
    )
}

/// Integral of a scalar field over the disk of `radius` centred at `center`.
///
/// Evaluated in polar coordinates about the centre with nested adaptive
/// quadrature, so the disk boundary is represented exactly.
pub fn integrate_disk<F: Fn([f64; 2]) -> f64>(
    f: F,
    center: [f64; 2],
    radius: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::domain(
            "integrate_disk",
            format!("radius must be > 0, got {radius}"),
        ));
    }
    let inner_spec = spec.tighter(0.1);
    let inner_failure: RefCell<Option<Error>> = RefCell::new(None);
    let outer = integrate_with_breaks(
        |theta| {
            let (s, c) = theta.sin_cos();
            let radial = integrate(
                |r| r * f([center[0] + r * c, center[1] + r * s]),
                0.0,
                radius,
                &inner_spec,
            );
            match radial {
                Ok(v) => v,
                Err(e) => {
                    let estimate = match &e {
                        Error::Convergence { best_estimate, .. } => *best_estimate,
                        _ => f64::NAN,
                    };
                    inner_failure.borrow_mut().get_or_insert(e);
                    estimate
                }
            }
        },
        0.0,
        2.0 * PI,
        &[0.5 * PI, PI, 1.5 * PI],
        spec,
    );
    match (outer, inner_failure.into_inner()) {
        (Ok(v), None) => Ok(v),
        (Ok(v), Some(Error::Convergence { error_estimate, .. })) => Err(Error::Convergence {
            what: "integrate_disk",
            best_estimate: v,
            error_estimate,
        }),
        (Ok(_), Some(other)) => Err(other),
        (Err(e), _) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathkit::RngStream;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_exact() {
        let v = integrate(|x| 3.0 * x * x, 0.0, 2.0, &QuadratureSpec::default()).unwrap();
        assert_relative_eq!(v, 8.0, max_relative = 1e-14);
    }

    #[test]
    fn semi_infinite_exponential() {
        let v = integrate_semi_infinite(|x| (-x).exp(), 0.0, &QuadratureSpec::default()).unwrap();
        assert_relative_eq!(v, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn unit_disk_area() {
        let v = integrate_disk(|_| 1.0, [0.0, 0.0], 1.0, &QuadratureSpec::default()).unwrap();
        assert_relative_eq!(v, PI, max_relative = 1e-12);
    }

    #[test]
    fn centered_gaussian_normalized() {
        let s = 0.05;
        let g =
            |p: [f64; 2]| (-(p[0] * p[0] + p[1] * p[1]) / (2.0 * s * s)).exp() / (2.0 * PI * s * s);
        let v = integrate_disk(g, [0.0, 0.0], 2.0, &QuadratureSpec::default()).unwrap();
        assert!((v - 1.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn offset_gaussian_matches_hit_count() {
        // Gaussian centred at (0.6, 0.2) with sigma 0.4, integrated over the
        // unit disk; the oracle counts normal draws that land inside it.
        let (mx, my, s) = (0.6, 0.2, 0.4);
        let g = |p: [f64; 2]| {
            let dx = p[0] - mx;
            let dy = p[1] - my;
            (-(dx * dx + dy * dy) / (2.0 * s * s)).exp() / (2.0 * PI * s * s)
        };
        let v = integrate_disk(g, [0.0, 0.0], 1.0, &QuadratureSpec::default()).unwrap();
        let mut rng = RngStream::new(5, 0);
        let n = 400_000;
        let mut hits = 0u32;
        for _ in 0..n {
            let (u1, u2) = (rng.uniform_open(), rng.uniform_open());
            let r = (-2.0 * u1.ln()).sqrt();
            let x = mx + s * r * (2.0 * PI * u2).cos();
            let y = my + s * r * (2.0 * PI * u2).sin();
            if x * x + y * y <= 1.0 {
                hits += 1;
            }
        }
        let p = hits as f64 / n as f64;
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        assert!((v - p).abs() < 3.0 * sigma, "quad {v} mc {p} sigma {sigma}");
    }

    #[test]
    fn rotation_invariance_of_asymmetric_field() {
        let f =
            |p: [f64; 2]| (1.0 + p[0] + 2.0 * p[1] * p[1]) * (-(p[0] - 0.3).powi(2) * 4.0).exp();
        let rotated = |p: [f64; 2]| f([p[1], -p[0]]);
        let spec = QuadratureSpec::default();
        let a = integrate_disk(f, [0.0, 0.0], 0.8, &spec).unwrap();
        let b = integrate_disk(rotated, [0.0, 0.0], 0.8, &spec).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-8);
    }

    #[test]
    fn nonconvergence_reports_best_estimate() {
        let spec = QuadratureSpec::new(1e-15, 1e-300, 1).unwrap();
        let err = integrate(|x: f64| x.sqrt().sin() / x.sqrt(), 1e-12, 100.0, &spec).unwrap_err();
        assert!(
            matches!(err, Error::Convergence { best_estimate, .. } if best_estimate.is_finite())
        );
    }

    #[test]
    fn invalid_spec_rejected() {
        assert!(QuadratureSpec::new(0.0, 1e-9, 10).is_err());
        assert!(QuadratureSpec::new(1e-6, 1e-9, 0).is_err());
        assert!(integrate_disk(|_| 1.0, [0.0, 0.0], 0.0, &QuadratureSpec::default()).is_err());
    }
}
