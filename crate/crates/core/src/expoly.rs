//! Exponential polynomials `Σ_i p_i(z) e^{iz}` with rational `p_i`.
//!
//! These are closed under the operations used by the `b_k`, `c_k` families
//! (products with `e^z`, integration from zero), so the families are kept
//! exact and order-free until [`ExpPoly::to_series`] truncates them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::enumerate::binomial;
use crate::series::EgfSeries;

/// `h_k = 1 + 1/2 + ⋯ + 1/k`, with `h_0 = 0`.
pub fn harmonic(k: usize) -> BigRational {
    (1..=k).fold(BigRational::zero(), |acc, j| {
        acc + BigRational::new(BigInt::one(), BigInt::from(j))
    })
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn binom(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(binomial(n, k)))
}

/// Polynomial coefficients, lowest degree first, no trailing zeros.
type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Canonical exponential polynomial: frequency → nonzero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExpPoly {
    terms: BTreeMap<u32, Poly>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `p(z) e^{freq·z}`, `p` given lowest degree first.
    pub fn term(freq: u32, mut poly: Vec<BigRational>) -> Self {
        trim(&mut poly);
        let mut terms = BTreeMap::new();
        if !poly.is_empty() {
            terms.insert(freq, poly);
        }
        Self { terms }
    }

    /// `c z^m e^{freq·z}`.
    pub fn monomial(c: BigRational, m: usize, freq: u32) -> Self {
        let mut poly = vec![BigRational::zero(); m + 1];
        poly[m] = c;
        Self::term(freq, poly)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn z() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    /// `e^{freq·z}`.
    pub fn exp(freq: u32) -> Self {
        Self::monomial(BigRational::one(), 0, freq)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(frequency, coefficients lowest degree first)`, frequencies ascending.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &[BigRational])> {
        self.terms.iter().map(|(f, p)| (*f, p.as_slice()))
    }

    pub fn max_frequency(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    fn insert_add(&mut self, freq: u32, poly: &Poly) {
        let sum = match self.terms.get(&freq) {
            Some(p) => poly_add(p, poly),
            None => poly.clone(),
        };
        if sum.is_empty() {
            self.terms.remove(&freq);
        } else {
            self.terms.insert(freq, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (f, p) in &other.terms {
            out.insert_add(*f, p);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(f, p)| (*f, p.iter().map(|c| c * q).collect()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (fa, pa) in &self.terms {
            for (fb, pb) in &other.terms {
                out.insert_add(fa + fb, &poly_mul(pa, pb));
            }
        }
        out
    }

    /// Multiplication by `e^z`.
    pub fn mul_exp(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(f, p)| (f + 1, p.clone())).collect(),
        }
    }

    /// The antiderivative vanishing at `z = 0`.
    pub fn integrate0(&self) -> Self {
        let mut out = Self::zero();
        for (&freq, poly) in &self.terms {
            if freq == 0 {
                let mut integral = vec![BigRational::zero()];
                integral.extend(poly.iter().enumerate().map(|(m, c)| c / int(m + 1)));
                out.insert_add(0, &integral);
                continue;
            }
            let i = int(freq);
            let mut amplitude: Poly = vec![BigRational::zero(); poly.len()];
            let mut at_zero = BigRational::zero();
            for (m, c) in poly.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                // ∫ z^m e^{iz} = e^{iz} Σ_j (-1)^j m!/(m-j)! z^{m-j} / i^{j+1}
                let mut falling = BigRational::one();
                let mut i_pow = i.clone();
                for j in 0..=m {
                    let t = c * &falling / &i_pow;
                    if j % 2 == 0 {
                        amplitude[m - j] += &t;
                    } else {
                        amplitude[m - j] -= &t;
                    }
                    if j == m {
                        if m % 2 == 0 {
                            at_zero += &t;
                        } else {
                            at_zero -= &t;
                        }
                    }
                    falling *= int(m - j);
                    i_pow *= &i;
                }
            }
            trim(&mut amplitude);
            out.insert_add(freq, &amplitude);
            out.insert_add(0, &vec![-at_zero]);
        }
        out
    }

    pub fn differentiate(&self) -> Self {
        let mut out = Self::zero();
        for (&freq, poly) in &self.terms {
            // (p e^{iz})' = (p' + i p) e^{iz}
            let mut d: Poly = poly.iter().map(|c| c * int(freq)).collect();
            for (m, c) in poly.iter().enumerate().skip(1) {
                d[m - 1] += c * int(m);
            }
            trim(&mut d);
            out.insert_add(freq, &d);
        }
        out
    }

    /// Taylor expansion through `z^order`. The coefficient of `z^n` in
    /// `z^m e^{iz}` is `i^{n-m} / (n-m)!`.
    pub fn to_series(&self, order: usize) -> EgfSeries {
        // accumulate n!·f_n, which is Σ c_m · n!/(n-m)! · i^{n-m}
        let mut scaled = vec![BigRational::zero(); order + 1];
        for (&freq, poly) in &self.terms {
            let i = BigInt::from(freq);
            for (m, c) in poly.iter().enumerate() {
                if c.is_zero() || m > order {
                    continue;
                }
                let mut falling = BigInt::one();
                for k in 0..m {
                    falling *= m - k;
                }
                // n = m
                let mut factor = falling.clone();
                scaled[m] += c * BigRational::from_integer(factor.clone());
                if freq == 0 {
                    continue;
                }
                for (n, slot) in scaled.iter_mut().enumerate().skip(m + 1) {
                    // n!/(n-m)! i^{n-m} from (n-1)!/(n-1-m)! i^{n-1-m}
                    factor = factor * n * &i / (n - m);
                    *slot += c * BigRational::from_integer(factor.clone());
                }
            }
        }
        let mut fact = BigInt::one();
        let coeffs = scaled
            .into_iter()
            .enumerate()
            .map(|(n, a)| {
                if n > 0 {
                    fact *= n;
                }
                a / BigRational::from_integer(fact.clone())
            })
            .collect();
        EgfSeries::from_coeffs(coeffs)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(f, p)| {
                let poly = p
                    .iter()
                    .rev()
                    .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN));
                poly * (f64::from(*f) * x).exp()
            })
            .sum()
    }
}

/// `b_k` from its double-integral recurrence, `b_0 = z`.
pub fn b_recurrence(k: usize) -> ExpPoly {
    let mut b = ExpPoly::z();
    for j in 1..=k {
        b = b.mul_exp().integrate0().integrate0().scale(&int(j * j));
    }
    b
}

/// `c_k` from its double-integral recurrence, `c_0 = e^z - 1 - z`.
pub fn c_recurrence(k: usize) -> ExpPoly {
    let mut c = ExpPoly::exp(1)
        .sub(&ExpPoly::constant(BigRational::one()))
        .sub(&ExpPoly::z());
    for j in 1..=k {
        c = c.mul_exp().integrate0().integrate0().scale(&int(j * (j + 1)));
    }
    c
}

/// `b_k = Σ_i C(k,i)² [z + 2(h_{k-i} - h_i)] e^{iz}`.
pub fn b_closed(k: usize) -> ExpPoly {
    let h: Vec<BigRational> = (0..=k).map(harmonic).collect();
    let mut out = ExpPoly::zero();
    for i in 0..=k {
        let w = binom(k, i) * binom(k, i);
        let constant = int(2) * (&h[k - i] - &h[i]);
        out = out.add(&ExpPoly::term(
            i as u32,
            vec![&w * constant, w],
        ));
    }
    out
}

/// `c_k = e^{(k+1)z}/(k+1) - Σ_i C(k,i) C(k+1,i) [z + 2(h_{k-i} - h_i) + 1/(k+1-i)] e^{iz}`.
pub fn c_closed(k: usize) -> ExpPoly {
    let h: Vec<BigRational> = (0..=k).map(harmonic).collect();
    let mut out = ExpPoly::monomial(
        BigRational::new(BigInt::one(), BigInt::from(k + 1)),
        0,
        k as u32 + 1,
    );
    for i in 0..=k {
        let w = binom(k, i) * binom(k + 1, i);
        let constant = int(2) * (&h[k - i] - &h[i])
            + BigRational::new(BigInt::one(), BigInt::from(k + 1 - i));
        out = out.sub(&ExpPoly::term(i as u32, vec![&w * constant, w]));
    }
    out
}

/// `S(z) = Σ_{k≥1} (b_k + c_k)` through `z^order`.
///
/// `b_k` starts at degree `2k+1` and `c_k` at `2k+2`, so `k ≤ ⌈order/2⌉`
/// suffices; the first omitted pair is checked to vanish to this order.
pub fn s_series(order: usize) -> EgfSeries {
    let top = order.div_ceil(2);
    let mut sum = ExpPoly::zero();
    for k in 1..=top {
        sum = sum.add(&b_closed(k)).add(&c_closed(k));
    }
    for omitted in [b_closed(top + 1), c_closed(top + 1)] {
        assert!(
            omitted.to_series(order).is_zero(),
            "omitted term k = {} does not vanish to order {order}",
            top + 1
        );
    }
    sum.to_series(order)
}

fn write_coeff_body(f: &mut fmt::Formatter<'_>, c: &BigRational, body: &str, first: bool) -> fmt::Result {
    let sign_neg = c.is_negative();
    if sign_neg {
        f.write_str("-")?;
    } else if !first {
        f.write_str("+")?;
    }
    let mag = c.abs();
    let (p, q) = (mag.numer(), mag.denom());
    if body.is_empty() {
        return if q.is_one() {
            write!(f, "{p}")
        } else {
            write!(f, "{p}/{q}")
        };
    }
    if !p.is_one() {
        write!(f, "{p}")?;
    }
    f.write_str(body)?;
    if !q.is_one() {
        write!(f, "/{q}")?;
    }
    Ok(())
}

fn z_power(m: usize) -> String {
    match m {
        0 => String::new(),
        1 => "z".into(),
        _ => format!("z^{m}"),
    }
}

fn exp_part(freq: u32) -> String {
    match freq {
        0 => String::new(),
        1 => "e^z".into(),
        _ => format!("e^{{{freq}z}}"),
    }
}

/// Descending frequency, each amplitude by descending degree, e.g.
/// `(z-3)e^{2z}+4ze^z+z+3`.
impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&freq, poly) in self.terms.iter().rev() {
            let nonzero: Vec<(usize, &BigRational)> = poly
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if freq == 0 || nonzero.len() == 1 {
                for (m, c) in nonzero {
                    let body = format!("{}{}", z_power(m), exp_part(freq));
                    write_coeff_body(f, c, &body, first)?;
                    first = false;
                }
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            f.write_str("(")?;
            let mut inner_first = true;
            for (m, c) in nonzero {
                write_coeff_body(f, c, &z_power(m), inner_first)?;
                inner_first = false;
            }
            write!(f, "){}", exp_part(freq))?;
        }
        Ok(())
    }
}
