//! Special functions used by the fading and pointing models.
//!
//! Gamma and incomplete gamma delegate to `statrs`, erf to `libm`; the modified Bessel
//! function of the second kind for real order is computed here with Temme's
//! series for small arguments and Steed's continued fraction otherwise.

use std::f64::consts::PI;

use statrs::function::gamma as sgamma;

use crate::error::{Error, Result};

/// Γ(a) for a > 0.
pub fn gamma_fn(a: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(
            "gamma_fn",
            format!("argument must be > 0, got {a}"),
        ));
    }
    Ok(sgamma::gamma(a))
}

/// ln Γ(a) for a > 0.
pub fn ln_gamma(a: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(
            "ln_gamma",
            format!("argument must be > 0, got {a}"),
        ));
    }
    Ok(sgamma::ln_gamma(a))
}

/// Upper incomplete gamma Γ(a, x) = ∫ₓ^∞ t^(a−1) e^(−t) dt (not regularized).
pub fn gamma_upper_incomplete(a: f64, x: f64) -> Result<f64> {
    check_incomplete_args("gamma_upper_incomplete", a, x)?;
    if x == 0.0 {
        return Ok(sgamma::gamma(a));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    Ok(sgamma::gamma_ur(a, x) * sgamma::gamma(a))
}

/// Lower incomplete gamma γ(a, x) = ∫₀ˣ t^(a−1) e^(−t) dt (not regularized).
pub fn gamma_lower_incomplete(a: f64, x: f64) -> Result<f64> {
    check_incomplete_args("gamma_lower_incomplete", a, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(sgamma::gamma(a));
    }
    Ok(sgamma::gamma_lr(a, x) * sgamma::gamma(a))
}

fn check_incomplete_args(what: &'static str, a: f64, x: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(what, format!("shape must be > 0, got {a}")));
    }
    if !(x >= 0.0) {
        return Err(Error::domain(what, format!("x must be >= 0, got {x}")));
    }
    Ok(())
}

/// Error function.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Binomial coefficient C(n, k) as a float.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

// Taylor coefficients of 1/Γ(1+z) about z = 0, as published.
#[allow(clippy::excessive_precision)]
const RECIP_GAMMA_TAYLOR: [f64; 21] = [
    1.0,
    0.577_215_664_901_532_860_6,
    -0.655_878_071_520_253_881_1,
    -0.042_002_635_034_095_235_53,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_75,
    -0.009_621_971_527_876_973_562,
    0.007_218_943_246_663_099_542,
    -0.001_165_167_591_859_065_112,
    -0.000_215_241_674_114_950_972_8,
    0.000_128_050_282_388_116_186_2,
    -0.000_020_134_854_780_788_238_66,
    -1.250_493_482_142_670_657e-6,
    1.133_027_231_981_695_882e-6,
    -2.056_338_416_977_607_104e-7,
    6.116_095_104_481_415_818e-9,
    5.002_007_644_469_222_930e-9,
    -1.181_274_570_487_020_145e-9,
    1.043_426_711_691_100_511e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708e-12,
];

/// Temme's auxiliary functions for |μ| ≤ 1/2:
/// gam1 = (1/Γ(1−μ) − 1/Γ(1+μ)) / (2μ), gam2 = (1/Γ(1−μ) + 1/Γ(1+μ)) / 2,
/// together with 1/Γ(1+μ) and 1/Γ(1−μ).
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mu2 = mu * mu;
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    let mut p = 1.0;
    for pair in RECIP_GAMMA_TAYLOR.chunks(2) {
        gam2 += pair[0] * p;
        if let Some(&odd) = pair.get(1) {
            gam1 -= odd * p;
        }
        p *= mu2;
    }
    let gampl = gam2 - mu * gam1; // 1/Γ(1+μ)
    let gammi = gam2 + mu * gam1; // 1/Γ(1−μ)
    (gam1, gam2, gampl, gammi)
}

/// Modified Bessel function of the second kind K_ν(x) for real ν and x > 0.
pub fn bessel_k(order: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "bessel_k",
            format!("argument must be > 0, got {x}"),
        ));
    }
    if !order.is_finite() {
        return Err(Error::domain("bessel_k", "order must be finite"));
    }
    let nu = order.abs();
    let nl = (nu + 0.5).floor();
    let mu = nu - nl;
    let (mut k_mu, mut k_mu1) = if x < 2.0 {
        temme_small_x(mu, x)
    } else {
        steed_large_x(mu, x)?
    };
    // Upward recurrence K_{μ+i+1} = 2(μ+i)/x K_{μ+i} + K_{μ+i−1}.
    let steps = nl as u64;
    for i in 1..=steps {
        let next = 2.0 * (mu + i as f64) / x * k_mu1 + k_mu;
        k_mu = k_mu1;
        k_mu1 = next;
        if !k_mu.is_finite() {
            return Ok(f64::INFINITY);
        }
    }
    Ok(k_mu)
}

fn temme_small_x(mu: f64, x: f64) -> (f64, f64) {
    const EPS: f64 = 1e-16;
    let x2 = 0.5 * x;
    let pimu = PI * mu;
    let fact = if pimu.abs() < EPS {
        1.0
    } else {
        pimu / pimu.sin()
    };
    let d = -x2.ln();
    let e = mu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let dd = x2 * x2;
    let mut sum1 = p;
    let mu2 = mu * mu;
    for i in 1..10_000 {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu2);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            break;
        }
    }
    (sum, sum1 * 2.0 / x)
}

fn steed_large_x(mu: f64, x: f64) -> Result<(f64, f64)> {
    const EPS: f64 = 1e-16;
    let mu2 = mu * mu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            what: "bessel_k continued fraction",
            best_estimate: s,
            error_estimate: f64::NAN,
        });
    }
    h *= a1;
    let k_mu = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
    Ok((k_mu, k_mu1))
}
