//! Named exponential generating functions and coefficient bounds.
//!
//! Each series here has a matching pattern whose brute-force counts it must
//! reproduce (or bracket), and [`BoundsReport`] records that comparison per
//! `n`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{
    binomial, count_consecutive_dp, count_sequence_with, CountSequence, EnumerateError, Limits,
};
use crate::expoly::s_series;
use crate::pattern::GeneralizedPattern;
use crate::series::{rat, EgfSeries, FloatSeries, SeriesError};

#[derive(Debug, Error)]
pub enum FormulaError {
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("A_σ must have constant term 1, got {0}")]
    ConstantTerm(String),
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn e_minus_one(order: usize) -> EgfSeries {
    EgfSeries::exp_z(order).add_constant(&int(-1))
}

/// `e^{e^z - 1}`.
pub fn bell_egf(order: usize) -> EgfSeries {
    e_minus_one(order)
        .exp_series()
        .expect("e^z - 1 has no constant term")
}

/// Catalan numbers `C_0..=C_n` by the convolution recurrence.
pub fn catalan_numbers(n: usize) -> Vec<BigUint> {
    let mut c = vec![BigUint::one()];
    for m in 0..n {
        let next = (0..=m).map(|i| &c[i] * &c[m - i]).sum();
        c.push(next);
    }
    c
}

/// `C^exp(z) = Σ C_n z^n / n!`.
pub fn catalan_egf(order: usize) -> EgfSeries {
    EgfSeries::from_counts(&catalan_numbers(order))
}

/// `e^{-z²/2}`.
pub fn gaussian(order: usize) -> EgfSeries {
    EgfSeries::monomial(rat(-1, 2), 2, order)
        .exp_series()
        .expect("no constant term")
}

/// `A_132 = 1 / (1 - ∫_0^z e^{-t²/2} dt)`.
pub fn a132_egf(order: usize) -> EgfSeries {
    EgfSeries::one(order)
        .sub(&gaussian(order).integrate())
        .reciprocal()
        .expect("constant term 1")
}

/// EGF coefficients of the solution of `u'' + u' + u = 0`, `u(0) = 1`,
/// `u'(0) = -1`, as counts: `u_{n+2} = -u_{n+1} - u_n`.
pub fn a123_denominator_counts(order: usize) -> Vec<BigInt> {
    let mut u = vec![BigInt::one(), -BigInt::one()];
    while u.len() <= order {
        let n = u.len();
        let next = -(&u[n - 1] + &u[n - 2]);
        u.push(next);
    }
    u.truncate(order + 1);
    u
}

/// `A_123 = 1/U` with `U` from [`a123_denominator_counts`].
pub fn a123_egf(order: usize) -> EgfSeries {
    EgfSeries::from_counts(&a123_denominator_counts(order))
        .reciprocal()
        .expect("constant term 1")
}

/// `(√3/2) e^{x/2} / cos((√3/2) x + π/6)`.
pub fn a123_closed_form(x: f64) -> f64 {
    let r = 3f64.sqrt() / 2.0;
    r * (x / 2.0).exp() / (r * x + std::f64::consts::FRAC_PI_6).cos()
}

/// EGF of the avoiders of a consecutive pattern, from the transfer DP.
pub fn a_consecutive_egf(
    pat: &GeneralizedPattern,
    order: usize,
) -> Result<EgfSeries, FormulaError> {
    let seq = count_consecutive_dp(pat, order)?;
    Ok(EgfSeries::from_counts(&seq.counts))
}

fn require_unit_constant(a_sigma: &EgfSeries) -> Result<(), FormulaError> {
    if a_sigma.coeff(0).is_one() {
        Ok(())
    } else {
        Err(FormulaError::ConstantTerm(a_sigma.coeff(0).to_string()))
    }
}

/// `A_{1-σ} = exp(∫_0^z A_σ)`, at the order of `a_sigma`.
pub fn a_one_dash_sigma(a_sigma: &EgfSeries) -> Result<EgfSeries, FormulaError> {
    require_unit_constant(a_sigma)?;
    Ok(a_sigma
        .integrate()
        .truncate(a_sigma.order())
        .exp_series()?)
}

/// `|ratio_n(A_{1-σ}) / ratio_n(A_σ) - 1|` with `ratio_n = f_n^{1/n}`.
pub fn shared_radius_deviation(a_sigma: &EgfSeries, n: usize) -> Result<f64, FormulaError> {
    let one_dash = a_one_dash_sigma(&a_sigma.truncate(n))?;
    let (r1, r) = (
        crate::series::nth_root_of(one_dash.coeff(n), n),
        crate::series::nth_root_of(a_sigma.coeff(n), n),
    );
    Ok((r1 / r - 1.0).abs())
}

/// The bounds for `12-34`: `(e^S, e^{S + e^z + z - 1})`.
pub fn series_12_34(order: usize) -> (EgfSeries, EgfSeries) {
    let s = s_series(order);
    let extra = e_minus_one(order).add(&EgfSeries::z(order));
    let lower = s.exp_series().expect("S has no constant term");
    let upper = s.add(&extra).exp_series().expect("no constant term");
    (lower, upper)
}

/// Float mirror of [`series_12_34`]; `S` is expanded exactly first.
pub fn series_12_34_float(order: usize) -> (FloatSeries, FloatSeries) {
    let s = FloatSeries::from_exact(&s_series(order));
    let extra = FloatSeries::exp_z(order)
        .add_constant(-1.0)
        .add(&FloatSeries::z(order));
    let lower = s.exp_series().expect("S has no constant term");
    let upper = s.add(&extra).exp_series().expect("no constant term");
    (lower, upper)
}

/// `½ ∫_0^z (e^{2e^y - 2} - 1) dy`, with the integrand built by composing
/// `exp` with `2(e^z - 1)`.
pub fn lower_1_23_4(order: usize) -> EgfSeries {
    let inner = e_minus_one(order).scale(&int(2));
    EgfSeries::exp_z(order)
        .compose(&inner)
        .expect("no constant term")
        .add_constant(&int(-1))
        .integrate()
        .scale(&rat(1, 2))
        .truncate(order)
}

/// `½ ∫_0^z e^{2e^y - 2} dy - z/2`, the other written form of the same bound.
pub fn lower_1_23_4_alternative(order: usize) -> EgfSeries {
    e_minus_one(order)
        .scale(&int(2))
        .exp_series()
        .expect("no constant term")
        .integrate()
        .scale(&rat(1, 2))
        .truncate(order)
        .sub(&EgfSeries::z(order).scale(&rat(1, 2)))
}

/// `C^exp(e^z - 1)`.
pub fn upper_1_23_4(order: usize) -> EgfSeries {
    catalan_egf(order)
        .compose(&e_minus_one(order))
        .expect("no constant term")
}

/// Float mirror of the `1-23-4` bounds.
pub fn series_1_23_4_float(order: usize) -> (FloatSeries, FloatSeries) {
    let inner = FloatSeries::exp_z(order).add_constant(-1.0);
    let lower = FloatSeries::exp_z(order)
        .compose(&inner.scale(2.0))
        .expect("no constant term")
        .add_constant(-1.0)
        .integrate()
        .scale(0.5)
        .truncate(order);
    let upper = FloatSeries::from_counts(&catalan_numbers(order))
        .compose(&inner)
        .expect("no constant term");
    (lower, upper)
}

/// Bounds for `1-σ'-k` from `A_σ`:
/// `∫∫ exp(2∫A_σ + y)` below and `C^exp(∫A_σ)` above.
pub fn bounds_1_sigma_k(a_sigma: &EgfSeries) -> Result<(EgfSeries, EgfSeries), FormulaError> {
    require_unit_constant(a_sigma)?;
    let order = a_sigma.order();
    let i = a_sigma.integrate().truncate(order);
    let lower = i
        .scale(&int(2))
        .add(&EgfSeries::z(order))
        .exp_series()?
        .integrate()
        .integrate()
        .truncate(order);
    let upper = catalan_egf(order).compose(&i)?;
    Ok((lower, upper))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    /// `lower < α_n < upper`.
    Strict,
    /// Not violated, but one side is an equality.
    Tight,
    Violated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub n: usize,
    pub lower_vs_alpha: Ordering,
    pub alpha_vs_upper: Ordering,
    pub status: VerdictStatus,
}

#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub pattern: GeneralizedPattern,
    pub order: usize,
    pub lower: EgfSeries,
    pub upper: EgfSeries,
    pub bruteforce: CountSequence,
    pub verdicts: Vec<Verdict>,
}

impl BoundsReport {
    pub fn new(
        pattern: GeneralizedPattern,
        lower: EgfSeries,
        upper: EgfSeries,
        bruteforce: CountSequence,
    ) -> Self {
        assert_eq!(lower.order(), upper.order());
        let (lc, uc) = (lower.counts(), upper.counts());
        let verdicts = (0..=lower.order().min(bruteforce.n_max()))
            .map(|n| {
                let alpha = BigRational::from_integer(BigInt::from(bruteforce.counts[n].clone()));
                let lower_vs_alpha = lc[n].cmp(&alpha);
                let alpha_vs_upper = alpha.cmp(&uc[n]);
                let status = match (lower_vs_alpha, alpha_vs_upper) {
                    (Ordering::Less, Ordering::Less) => VerdictStatus::Strict,
                    (Ordering::Greater, _) | (_, Ordering::Greater) => VerdictStatus::Violated,
                    _ => VerdictStatus::Tight,
                };
                Verdict {
                    n,
                    lower_vs_alpha,
                    alpha_vs_upper,
                    status,
                }
            })
            .collect();
        Self {
            order: lower.order(),
            pattern,
            lower,
            upper,
            bruteforce,
            verdicts,
        }
    }

    /// Every verdict for `n` in `range` is strict.
    pub fn strict_on(&self, range: std::ops::RangeInclusive<usize>) -> bool {
        range.into_iter().all(|n| {
            self.verdicts
                .get(n)
                .is_some_and(|v| v.status == VerdictStatus::Strict)
        })
    }

    pub fn violations(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts
            .iter()
            .filter(|v| v.status == VerdictStatus::Violated)
    }
}

fn parse(text: &str) -> GeneralizedPattern {
    text.parse().expect("built-in pattern")
}

pub fn bounds_12_34(
    order: usize,
    bf_cap: usize,
    limits: Limits,
) -> Result<BoundsReport, FormulaError> {
    let pat = parse("12-34");
    let (lower, upper) = series_12_34(order);
    let bf = count_sequence_with(&pat, bf_cap, limits)?;
    Ok(BoundsReport::new(pat, lower, upper, bf))
}

pub fn bounds_1_23_4(
    order: usize,
    bf_cap: usize,
    limits: Limits,
) -> Result<BoundsReport, FormulaError> {
    let pat = parse("1-23-4");
    let lower = lower_1_23_4(order);
    assert_eq!(lower, lower_1_23_4_alternative(order));
    let upper = upper_1_23_4(order);
    let bf = count_sequence_with(&pat, bf_cap, limits)?;
    Ok(BoundsReport::new(pat, lower, upper, bf))
}

/// The `1-σ'-k` bounds checked against brute force on that pattern, with
/// `A_σ` from the transfer DP.
pub fn bounds_1_sigma_k_report(
    sigma: &GeneralizedPattern,
    order: usize,
    bf_cap: usize,
    limits: Limits,
) -> Result<BoundsReport, FormulaError> {
    let pat = GeneralizedPattern::one_dash_dash_max(sigma);
    let (lower, upper) = bounds_1_sigma_k(&a_consecutive_egf(sigma, order)?)?;
    let bf = count_sequence_with(&pat, bf_cap, limits)?;
    Ok(BoundsReport::new(pat, lower, upper, bf))
}

/// `f_n < g_n` for all `n` in `range`.
pub fn coefficientwise_less(
    f: &EgfSeries,
    g: &EgfSeries,
    range: std::ops::RangeInclusive<usize>,
) -> bool {
    range.into_iter().all(|n| f.coeff(n) < g.coeff(n))
}

/// `true` when no coefficient is negative.
pub fn is_nonnegative(f: &EgfSeries) -> bool {
    f.coeffs().iter().all(|c| !c.is_negative())
}

/// `C(2n, n) / (n + 1)`, a closed form used to cross-check
/// [`catalan_numbers`].
pub fn catalan_closed(n: usize) -> BigUint {
    binomial(2 * n, n) / BigUint::from(n + 1)
}
