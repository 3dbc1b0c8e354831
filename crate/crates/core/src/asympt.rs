//! Growth constants and estimators for `(α_n / n!)^{1/n}`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{binomial, CountSequence};
use crate::formulas::gaussian;
use crate::series::{ln_biguint, ln_factorials};

/// Published value of the `123` multiplicative constant.
pub const GAMMA1_REFERENCE: f64 = 1.830_519_4;
/// Published value of `ρ_1`.
pub const RHO1_REFERENCE: f64 = 0.826_993_3;
/// Published value of `ρ_2`.
pub const RHO2_REFERENCE: f64 = 0.783_976_9;
/// Published value of `γ_2`.
pub const GAMMA2_REFERENCE: f64 = 2.255_814_2;

const ROOT_SERIES_ORDER: usize = 48;
const ROOT_MAX_ITER: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptError {
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("root not located to {tolerance} within {iterations} iterations")]
    NoConvergence { tolerance: f64, iterations: usize },
    #[error("need at least {need} terms, have {have}")]
    TooShort { need: usize, have: usize },
}

/// `ρ_1 = 3√3 / (2π)`.
pub fn rho1() -> f64 {
    3.0 * 3f64.sqrt() / (2.0 * std::f64::consts::PI)
}

pub fn gamma1_reference() -> f64 {
    GAMMA1_REFERENCE
}

/// `F(x) = ∫_0^x e^{-t²/2} dt - 1` from the truncated exact series.
pub fn erf_gap(x: f64) -> f64 {
    gaussian(ROOT_SERIES_ORDER).integrate().eval_f64(x) - 1.0
}

/// The positive root `x` of `∫_0^x e^{-t²/2} dt = 1`, on `[1, 1.5]`.
pub fn erf_root(tolerance: f64) -> Result<f64, AsymptError> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(AsymptError::BadTolerance(tolerance));
    }
    let series = gaussian(ROOT_SERIES_ORDER).integrate();
    let last = series.order();
    let tail = series.coeff(last).to_f64().unwrap_or(f64::INFINITY).abs() * 1.5f64.powi(last as i32);
    assert!(tail < 1e-15, "series tail {tail} too large");
    let f = |x: f64| series.eval_f64(x) - 1.0;
    let (mut lo, mut hi) = (1.0, 1.5);
    assert!(f(lo) < 0.0 && f(hi) > 0.0);
    let mut x = 1.25;
    for _ in 0..ROOT_MAX_ITER {
        let fx = f(x);
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / (-x * x / 2.0).exp();
        let next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() < tolerance {
            return Ok(next);
        }
        x = next;
    }
    Err(AsymptError::NoConvergence {
        tolerance,
        iterations: ROOT_MAX_ITER,
    })
}

/// `ρ_2 = 1 / x` for the root `x` of [`erf_root`].
pub fn rho2(tolerance: f64) -> Result<f64, AsymptError> {
    erf_root(tolerance).map(|x| 1.0 / x)
}

/// `γ_2 = e^{x²/2}` at the same root.
pub fn gamma2() -> f64 {
    let x = erf_root(1e-14).expect("bracketed root");
    (x * x / 2.0).exp()
}

/// `λ` with `λ ln λ = n`, by Newton's method.
pub fn bell_lambda(n: f64) -> f64 {
    let mut x = if n >= 3.0 { n / n.ln() } else { 1.0 + n };
    for _ in 0..100 {
        let step = (x * x.ln() - n) / (x.ln() + 1.0);
        x -= step;
        if step.abs() <= 1e-15 * x {
            break;
        }
    }
    x
}

/// `n^{-1/2} λ^{n + 1/2} e^{λ - n - 1}`.
pub fn bell_asymptotic(n: usize) -> f64 {
    let nf = n as f64;
    let l = bell_lambda(nf);
    (-0.5 * nf.ln() + (nf + 0.5) * l.ln() + l - nf - 1.0).exp()
}

/// `α_n / (n! ρ^n)`, an estimate of the multiplicative constant.
pub fn gamma_estimate(seq: &CountSequence, rho: f64, n: usize) -> Option<f64> {
    let a = seq.get(n)?;
    let lf = ln_factorials(n);
    Some((ln_biguint(a) - lf[n] - n as f64 * rho.ln()).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthMethod {
    NthRoot,
    ConsecutiveRatio,
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsReport {
    pub pattern: String,
    pub source: crate::enumerate::Method,
    pub method: GrowthMethod,
    /// Entry `i` is for `n = i + 1`.
    pub ratios: Vec<f64>,
    pub growth_estimate: f64,
    pub reference: Option<f64>,
}

/// `a_n / (n a_{n-1})` for `n = 1..`, element `i` holding `n = i + 1`.
pub fn consecutive_ratios(counts: &[BigUint]) -> Vec<f64> {
    (1..counts.len())
        .map(|n| {
            if counts[n - 1] == BigUint::ZERO {
                return f64::NAN;
            }
            if counts[n] == BigUint::ZERO {
                return 0.0;
            }
            (ln_biguint(&counts[n]) - ln_biguint(&counts[n - 1]) - (n as f64).ln()).exp()
        })
        .collect()
}

pub fn estimate_growth(
    seq: &CountSequence,
    method: GrowthMethod,
    reference: Option<f64>,
) -> Result<AsymptoticsReport, AsymptError> {
    if seq.counts.len() < 5 {
        return Err(AsymptError::TooShort {
            need: 5,
            have: seq.counts.len(),
        });
    }
    let ratios = match method {
        GrowthMethod::NthRoot => crate::series::nth_root_ratios_of_counts(&seq.counts),
        GrowthMethod::ConsecutiveRatio => consecutive_ratios(&seq.counts),
    };
    Ok(AsymptoticsReport {
        pattern: seq.pattern.to_string(),
        source: seq.method,
        method,
        growth_estimate: *ratios.last().expect("at least five terms"),
        ratios,
        reference,
    })
}

/// `α_{m+n}/(m+n)! ≤ (α_m/m!)(α_n/n!)` for every `m, n ≥ 1` in range,
/// checked exactly as `α_{m+n} ≤ C(m+n, n) α_m α_n`.
pub fn fekete_check(seq: &CountSequence) -> bool {
    let top = seq.n_max();
    (1..top).all(|m| {
        (1..=top - m).all(|n| seq.counts[m + n] <= binomial(m + n, n) * &seq.counts[m] * &seq.counts[n])
    })
}
