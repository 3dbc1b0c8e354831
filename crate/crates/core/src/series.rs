//! Truncated exponential generating functions.
//!
//! [`EgfSeries`] keeps the true power-series coefficients `f_n` of
//! `Σ f_n z^n` as exact rationals, so a counting sequence `a_n` enters as
//! `f_n = a_n / n!` and the constructions on labeled classes (union, labeled
//! product, set, boxed and double boxed product) apply verbatim.
//!
//! The `order` of a series is the highest power whose coefficient is known.
//! Binary operations use the smaller order of their operands, `integrate`
//! raises the order by one and `differentiate` lowers it by one.
//!
//! [`FloatSeries`] mirrors the same operations in `f64` for orders beyond
//! what exact rationals handle comfortably.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("exp of a series with nonzero constant term {0}")]
    NonzeroConstant(String),
    #[error("reciprocal of a series with zero constant term")]
    ZeroConstant,
    #[error("composition needs an inner series with zero constant term, got {0}")]
    InnerConstant(String),
    #[error("series of order {order} is too short for this operation (needs {needed})")]
    TooShort { order: usize, needed: usize },
    #[error("malformed series document: {0}")]
    Malformed(String),
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `ln |x|` for a big integer, accurate to f64 precision at any size.
pub fn ln_bigint(x: &BigInt) -> f64 {
    ln_biguint(x.magnitude())
}

pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `(sign, ln |q|)`, or `None` for zero.
pub fn ln_abs_rational(q: &BigRational) -> Option<(f64, f64)> {
    if q.is_zero() {
        return None;
    }
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    Some((sign, ln_bigint(q.numer()) - ln_bigint(q.denom())))
}

/// `ln k!` for `k = 0..=n`.
pub fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = BigInt::one();
    out.push(acc.clone());
    for k in 1..=n {
        acc *= k;
        out.push(acc.clone());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgfSeries {
    coeffs: Vec<BigRational>,
}

impl EgfSeries {
    /// Takes coefficients `f_0..=f_N`; an empty vector means the zero series
    /// of order 0.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        Self::monomial(BigRational::one(), 1, order)
    }

    pub fn monomial(c: BigRational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// `e^{c z}`.
    pub fn exp_linear(c: &BigRational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = BigRational::one();
        coeffs.push(term.clone());
        for n in 1..=order {
            term = term * c / int(n);
            coeffs.push(term.clone());
        }
        Self { coeffs }
    }

    pub fn exp_z(order: usize) -> Self {
        Self::exp_linear(&BigRational::one(), order)
    }

    /// `f_n = a_n / n!`.
    pub fn from_counts<T: Clone + Into<BigInt>>(counts: &[T]) -> Self {
        let fact = factorials(counts.len().saturating_sub(1));
        Self::from_coeffs(
            counts
                .iter()
                .zip(&fact)
                .map(|(a, f)| BigRational::new(a.clone().into(), f.clone()))
                .collect(),
        )
    }

    /// `a_n = n! f_n`, exact rationals.
    pub fn counts(&self) -> Vec<BigRational> {
        let fact = factorials(self.order());
        self.coeffs
            .iter()
            .zip(fact)
            .map(|(f, n_fact)| f * int(n_fact))
            .collect()
    }

    /// `a_n = n! f_n` when all are integers.
    pub fn integer_counts(&self) -> Option<Vec<BigInt>> {
        self.counts()
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] + &other.coeffs[n])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] - &other.coeffs[n])
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Adds `c` to the constant term.
    pub fn add_constant(&self, c: &BigRational) -> Self {
        let mut s = self.clone();
        s.coeffs[0] += c;
        s
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_to(other, self.order().min(other.order()))
    }

    fn mul_to(&self, other: &Self, order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|n| {
                let mut acc = BigRational::zero();
                for i in 0..=n {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[n - i]);
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect();
        Self { coeffs }
    }

    /// `∫_0^z`, one order higher.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c / int(n + 1)),
        );
        Self { coeffs }
    }

    /// `d/dz`, one order lower (order 0 maps to the zero series).
    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(n, c)| c * int(n + 1))
                .collect(),
        }
    }

    /// `exp(A)` for `A(0) = 0`, via `E' = A' E`.
    pub fn exp_series(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant(self.coeffs[0].to_string()));
        }
        let order = self.order();
        let weighted: Vec<BigRational> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * int(k))
            .collect();
        let mut e = Vec::with_capacity(order + 1);
        e.push(BigRational::one());
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !weighted[k].is_zero() && !e[n - k].is_zero() {
                    acc += &weighted[k] * &e[n - k];
                }
            }
            e.push(acc / int(n));
        }
        Ok(Self { coeffs: e })
    }

    /// `1 / A` for `A(0) ≠ 0`.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::ZeroConstant);
        }
        let inv = a0.recip();
        let mut b: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        b.push(inv.clone());
        for n in 1..=self.order() {
            let mut acc = BigRational::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() && !b[n - i].is_zero() {
                    acc += &self.coeffs[i] * &b[n - i];
                }
            }
            b.push(-acc * &inv);
        }
        Ok(Self { coeffs: b })
    }

    /// `self(inner(z))` for `inner(0) = 0`, by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::InnerConstant(inner.coeffs[0].to_string()));
        }
        let order = self.order().min(inner.order());
        // after folding in f_k the accumulator is Σ_{j≥k} f_j G^{j-k}, which
        // only matters up to degree order - k
        let mut acc = Self::constant(self.coeffs[order].clone(), 0);
        for k in (0..order).rev() {
            let need = order - k;
            let mut next = acc.padded(need).mul_to(inner, need);
            next.coeffs[0] += &self.coeffs[k];
            acc = next;
        }
        Ok(acc.padded(order))
    }

    fn padded(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigRational::zero());
        coeffs.truncate(order + 1);
        Self { coeffs }
    }

    /// Boxed product: `∫_0^z B'(t) C(t) dt`.
    pub fn boxed(b: &Self, c: &Self) -> Result<Self, SeriesError> {
        if b.order() < 1 {
            return Err(SeriesError::TooShort {
                order: b.order(),
                needed: 1,
            });
        }
        Ok(b.differentiate().mul(c).integrate())
    }

    /// Double boxed product: `∫_0^z ∫_0^y B''(t) C(t) dt dy`.
    pub fn double_boxed(b: &Self, c: &Self) -> Result<Self, SeriesError> {
        if b.order() < 2 {
            return Err(SeriesError::TooShort {
                order: b.order(),
                needed: 2,
            });
        }
        Ok(b.differentiate()
            .differentiate()
            .mul(c)
            .integrate()
            .integrate())
    }

    /// Evaluates the truncated series at `x` in floating point.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// `(f_n)^{1/n}` for `n = 1..=order`, element `i` holding `n = i + 1`.
    pub fn nth_root_ratios(&self) -> Vec<f64> {
        (1..=self.order())
            .map(|n| nth_root_of(&self.coeffs[n], n))
            .collect()
    }

    pub fn to_document(&self) -> SeriesDocument {
        SeriesDocument {
            order: self.order(),
            coeff_numerators: self.coeffs.iter().map(|c| c.numer().to_string()).collect(),
            coeff_denominators: self.coeffs.iter().map(|c| c.denom().to_string()).collect(),
        }
    }

    pub fn from_document(doc: &SeriesDocument) -> Result<Self, SeriesError> {
        if doc.coeff_numerators.len() != doc.order + 1
            || doc.coeff_denominators.len() != doc.order + 1
        {
            return Err(SeriesError::Malformed(format!(
                "order {} needs {} coefficients",
                doc.order,
                doc.order + 1
            )));
        }
        let parse = |s: &String| {
            s.parse::<BigInt>()
                .map_err(|e| SeriesError::Malformed(format!("{s:?}: {e}")))
        };
        let coeffs = doc
            .coeff_numerators
            .iter()
            .zip(&doc.coeff_denominators)
            .map(|(n, d)| {
                let d = parse(d)?;
                if d.is_zero() {
                    return Err(SeriesError::Malformed("zero denominator".into()));
                }
                Ok(BigRational::new(parse(n)?, d))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { coeffs })
    }

    /// CSV rows `n,count,coeff` with `count = n! f_n`.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "count", "coeff"])?;
        for (n, (count, coeff)) in self.counts().iter().zip(&self.coeffs).enumerate() {
            w.write_record([n.to_string(), format_rational(count), format_rational(coeff)])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// JSON form of a series: `{order, coeff_numerators, coeff_denominators}`,
/// big integers as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub order: usize,
    pub coeff_numerators: Vec<String>,
    pub coeff_denominators: Vec<String>,
}

/// Integers print bare, everything else as `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `q^{1/n}` computed in the log domain; `0` for zero, NaN for negative.
pub fn nth_root_of(q: &BigRational, n: usize) -> f64 {
    match ln_abs_rational(q) {
        None => 0.0,
        Some((s, _)) if s < 0.0 => f64::NAN,
        Some((_, ln)) => (ln / n as f64).exp(),
    }
}

/// `(a_n / n!)^{1/n}` for `n = 1..`, element `i` holding `n = i + 1`.
pub fn nth_root_ratios_of_counts(counts: &[BigUint]) -> Vec<f64> {
    let lf = ln_factorials(counts.len().saturating_sub(1));
    counts
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, a)| {
            if a.is_zero() {
                0.0
            } else {
                ((ln_biguint(a) - lf[n]) / n as f64).exp()
            }
        })
        .collect()
}

impl fmt::Display for EgfSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// Floating mirror of [`EgfSeries`].
///
/// Coefficients are held in the balanced basis `g_n = f_n · √(n!)`. For the
/// series met here `f_n` spans roughly `1/n!..1`, which would underflow `f64`
/// past `n ≈ 170`; `g_n` stays within `(n!)^{±1/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatSeries {
    balanced: Vec<f64>,
    ln_fact: Vec<f64>,
}

impl FloatSeries {
    fn with_balanced(balanced: Vec<f64>) -> Self {
        let ln_fact = ln_factorials(balanced.len() - 1);
        Self { balanced, ln_fact }
    }

    pub fn zero(order: usize) -> Self {
        Self::with_balanced(vec![0.0; order + 1])
    }

    pub fn constant(c: f64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.balanced[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(1.0, order)
    }

    pub fn z(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.balanced[1] = 1.0;
        }
        s
    }

    /// `e^{c z}`: `g_n = c^n / √(n!)`.
    pub fn exp_linear(c: f64, order: usize) -> Self {
        let lf = ln_factorials(order);
        let balanced = (0..=order)
            .map(|n| {
                if c == 0.0 {
                    if n == 0 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    let sign = if c < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
                    sign * (n as f64 * c.abs().ln() - 0.5 * lf[n]).exp()
                }
            })
            .collect();
        Self::with_balanced(balanced)
    }

    pub fn exp_z(order: usize) -> Self {
        Self::exp_linear(1.0, order)
    }

    pub fn from_exact(s: &EgfSeries) -> Self {
        let lf = ln_factorials(s.order());
        let balanced = s
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| match ln_abs_rational(c) {
                None => 0.0,
                Some((sign, ln)) => sign * (ln + 0.5 * lf[n]).exp(),
            })
            .collect();
        Self::with_balanced(balanced)
    }

    /// From counts `a_n`: `g_n = a_n / √(n!)`.
    pub fn from_counts(counts: &[BigUint]) -> Self {
        let lf = ln_factorials(counts.len().saturating_sub(1));
        let balanced = counts
            .iter()
            .enumerate()
            .map(|(n, a)| {
                if a.is_zero() {
                    0.0
                } else {
                    (ln_biguint(a) - 0.5 * lf[n]).exp()
                }
            })
            .collect();
        Self::with_balanced(balanced)
    }

    pub fn order(&self) -> usize {
        self.balanced.len() - 1
    }

    /// `f_n` (may underflow to zero for large `n`).
    pub fn coeff(&self, n: usize) -> f64 {
        self.balanced[n] * (-0.5 * self.ln_fact[n]).exp()
    }

    /// `ln |f_n|`, `-∞` for zero.
    pub fn ln_abs_coeff(&self, n: usize) -> f64 {
        self.balanced[n].abs().ln() - 0.5 * self.ln_fact[n]
    }

    /// `ln |a_n|` with `a_n = n! f_n`.
    pub fn ln_abs_count(&self, n: usize) -> f64 {
        self.balanced[n].abs().ln() + 0.5 * self.ln_fact[n]
    }

    pub fn sign(&self, n: usize) -> f64 {
        self.balanced[n].signum()
    }

    pub fn nth_root(&self, n: usize) -> f64 {
        if self.balanced[n] == 0.0 {
            0.0
        } else if self.balanced[n] < 0.0 {
            f64::NAN
        } else {
            (self.ln_abs_coeff(n) / n as f64).exp()
        }
    }

    pub fn nth_root_ratios(&self) -> Vec<f64> {
        (1..=self.order()).map(|n| self.nth_root(n)).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::with_balanced(self.balanced[..=order.min(self.order())].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::with_balanced(
            (0..=order)
                .map(|n| self.balanced[n] + other.balanced[n])
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::with_balanced(
            (0..=order)
                .map(|n| self.balanced[n] - other.balanced[n])
                .collect(),
        )
    }

    pub fn scale(&self, q: f64) -> Self {
        Self::with_balanced(self.balanced.iter().map(|g| g * q).collect())
    }

    pub fn add_constant(&self, c: f64) -> Self {
        let mut s = self.clone();
        s.balanced[0] += c;
        s
    }

    /// `√C(n, i)` for `i = 0..=n`.
    fn sqrt_binomials(&self, n: usize) -> Vec<f64> {
        let lf = &self.ln_fact;
        (0..=n)
            .map(|i| (0.5 * (lf[n] - lf[i] - lf[n - i])).exp())
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_to(other, self.order().min(other.order()))
    }

    fn mul_to(&self, other: &Self, order: usize) -> Self {
        let ln_fact = ln_factorials(order.max(self.order()).max(other.order()));
        let lhs = Self {
            balanced: self.balanced.clone(),
            ln_fact,
        };
        let balanced = (0..=order)
            .map(|n| {
                let w = lhs.sqrt_binomials(n);
                (0..=n)
                    .map(|i| self.balanced[i] * other.balanced[n - i] * w[i])
                    .sum()
            })
            .collect();
        Self::with_balanced(balanced)
    }

    pub fn integrate(&self) -> Self {
        let mut balanced = Vec::with_capacity(self.balanced.len() + 1);
        balanced.push(0.0);
        balanced.extend(
            self.balanced
                .iter()
                .enumerate()
                .map(|(n, g)| g / ((n + 1) as f64).sqrt()),
        );
        Self::with_balanced(balanced)
    }

    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::with_balanced(
            self.balanced[1..]
                .iter()
                .enumerate()
                .map(|(n, g)| g * ((n + 1) as f64).sqrt())
                .collect(),
        )
    }

    pub fn exp_series(&self) -> Result<Self, SeriesError> {
        if self.balanced[0] != 0.0 {
            return Err(SeriesError::NonzeroConstant(self.balanced[0].to_string()));
        }
        let order = self.order();
        let mut e = vec![0.0; order + 1];
        e[0] = 1.0;
        for n in 1..=order {
            let w = self.sqrt_binomials(n);
            let acc: f64 = (1..=n)
                .map(|k| k as f64 * self.balanced[k] * e[n - k] * w[k])
                .sum();
            e[n] = acc / n as f64;
        }
        Ok(Self::with_balanced(e))
    }

    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a0 = self.balanced[0];
        if a0 == 0.0 {
            return Err(SeriesError::ZeroConstant);
        }
        let order = self.order();
        let mut b = vec![0.0; order + 1];
        b[0] = 1.0 / a0;
        for n in 1..=order {
            let w = self.sqrt_binomials(n);
            let acc: f64 = (1..=n).map(|i| self.balanced[i] * b[n - i] * w[i]).sum();
            b[n] = -acc / a0;
        }
        Ok(Self::with_balanced(b))
    }

    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if inner.balanced[0] != 0.0 {
            return Err(SeriesError::InnerConstant(inner.balanced[0].to_string()));
        }
        let order = self.order().min(inner.order());
        let mut acc = Self::constant(self.balanced[order] * (-0.5 * self.ln_fact[order]).exp(), 0);
        // Horner coefficients are the plain f_k; they can underflow only when
        // f_k itself is below f64 range, in which case it contributes nothing.
        for k in (0..order).rev() {
            let need = order - k;
            let mut next = acc.padded(need).mul_to(inner, need);
            next.balanced[0] += self.coeff(k);
            acc = next;
        }
        Ok(acc.padded(order))
    }

    fn padded(&self, order: usize) -> Self {
        let mut balanced = self.balanced.clone();
        balanced.resize(order + 1, 0.0);
        balanced.truncate(order + 1);
        Self::with_balanced(balanced)
    }

    pub fn eval(&self, x: f64) -> f64 {
        (0..=self.order())
            .rev()
            .fold(0.0, |acc, n| acc * x + self.coeff(n))
    }
}

/// `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_error(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Relative error between a float coefficient and an exact one, computed in
/// the log domain so magnitudes outside `f64` range still compare.
pub fn coeff_relative_error(float: &FloatSeries, exact: &EgfSeries, n: usize) -> f64 {
    match ln_abs_rational(exact.coeff(n)) {
        None => float.balanced[n].abs(),
        Some((sign, ln)) => {
            if float.sign(n) != sign {
                return f64::INFINITY;
            }
            (float.ln_abs_coeff(n) - ln).exp_m1().abs()
        }
    }
}
