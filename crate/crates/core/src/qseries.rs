//! Integer polynomials, rational generating functions and truncated power
//! series.
//!
//! Every series operation takes an explicit truncation order `N` and returns
//! the exact coefficients of `q^0..=q^N`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::partitions::triangular_number;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QSeriesError {
    #[error("denominator must have constant term 1, found {0}")]
    InvalidDenominator(BigInt),
    #[error("no generating function is known for Durfee triangle size {0} (supported: 2..=5)")]
    UnsupportedK(u32),
}

/// Polynomial in `q` with arbitrary-precision integer coefficients; index is
/// the exponent. Trailing zeros are stripped, so zero is the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `c · q^e`.
    pub fn monomial(c: i64, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::from(c);
        Self::new(coeffs)
    }

    /// `1 − q^d`.
    pub fn one_minus_q_pow(d: usize) -> Self {
        assert!(d > 0, "1 - q^0 is the zero polynomial");
        Self::one() - Self::monomial(1, d)
    }

    /// `1 + q^d`.
    pub fn one_plus_q_pow(d: usize) -> Self {
        Self::one() + Self::monomial(1, d)
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^e`, zero past the degree.
    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Value at `q = 1`, i.e. the coefficient sum.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

pub fn poly_add(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    a + b
}

pub fn poly_mul(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    a * b
}

/// Coefficients of `q^0..=q^N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeriesPrefix {
    coeffs: Vec<BigInt>,
}

impl SeriesPrefix {
    /// `coeffs` must be nonempty; its length fixes the truncation order.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series prefix holds at least q^0");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigInt::zero(); order + 1])
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^n`; panics beyond the truncation order.
    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    /// JSON array of exact integers.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(crate::report::json_int).collect())
    }

    /// OEIS b-file text, one `n a(n)` line per coefficient from `start` on.
    pub fn to_bfile(&self, start: usize) -> String {
        let mut out = String::new();
        for (n, c) in self.coeffs.iter().enumerate().skip(start) {
            out.push_str(&format!("{n} {c}\n"));
        }
        out
    }

    /// Running prefix sums: division by `1 − q`.
    pub fn divide_by_one_minus_q(&self) -> Self {
        let mut acc = BigInt::zero();
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    acc += c;
                    acc.clone()
                })
                .collect(),
        )
    }
}

/// `numerator / denominator` with the denominator normalised to constant
/// term 1 so every series coefficient is an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    numerator: IntPolynomial,
    denominator: IntPolynomial,
    denominator_factors: Vec<IntPolynomial>,
}

impl RationalGF {
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> Result<Self, QSeriesError> {
        Self::from_factors(numerator, vec![denominator])
    }

    /// Keeps the factor list and expands it once.
    pub fn from_factors(
        numerator: IntPolynomial,
        factors: Vec<IntPolynomial>,
    ) -> Result<Self, QSeriesError> {
        let denominator = factors
            .iter()
            .fold(IntPolynomial::one(), |acc, f| &acc * f);
        let constant = denominator.coeff(0);
        if !constant.is_one() {
            return Err(QSeriesError::InvalidDenominator(constant));
        }
        Ok(Self {
            numerator,
            denominator,
            denominator_factors: factors,
        })
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.denominator
    }

    pub fn denominator_factors(&self) -> &[IntPolynomial] {
        &self.denominator_factors
    }

    /// Maclaurin coefficients up to `q^N`.
    pub fn expand(&self, order: usize) -> SeriesPrefix {
        // a_n = num_n − Σ_{j≥1} d_j a_{n−j}
        let den = self.denominator.coeffs();
        let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut a = self.numerator.coeff(n);
            for (j, d) in den.iter().enumerate().skip(1).take(n) {
                if !d.is_zero() {
                    a -= d * &out[n - j];
                }
            }
            out.push(a);
        }
        SeriesPrefix::new(out)
    }
}

pub fn expand_rational(gf: &RationalGF, order: usize) -> SeriesPrefix {
    gf.expand(order)
}

fn one_minus(d: usize) -> IntPolynomial {
    IntPolynomial::one_minus_q_pow(d)
}

/// Generating function of partitions whose Durfee triangle has size `k`,
/// for `k` in `2..=5`.
pub fn gf_durfee_triangle(k: u32) -> Result<RationalGF, QSeriesError> {
    let (shift, numerator, factors): (usize, &[i64], Vec<IntPolynomial>) = match k {
        2 => (
            3,
            &[1, 2, 1, 1, -1],
            vec![one_minus(1), one_minus(1), IntPolynomial::one_plus_q_pow(1)],
        ),
        3 => (
            6,
            &[1, 2, 1, 2, -1, 0, -1, -1, 1],
            vec![
                one_minus(1),
                one_minus(1),
                one_minus(1),
                IntPolynomial::from_i64(&[1, 1, 1]),
            ],
        ),
        4 => (
            10,
            &[1, 4, 6, 7, 6, 2, 0, -5, -5, -5, 0, 1, 3, 2, 0, 0, -1],
            vec![one_minus(1), one_minus(2), one_minus(3), one_minus(4)],
        ),
        5 => (
            15,
            &[
                1, 4, 6, 8, 8, 4, 4, -5, -5, -10, -7, -5, 0, 4, 6, 7, 0, 2, -4, -1, -1, -1, 1, -1,
                1,
            ],
            vec![one_minus(1), one_minus(1), one_minus(3), one_minus(4), one_minus(5)],
        ),
        other => return Err(QSeriesError::UnsupportedK(other)),
    };
    RationalGF::from_factors(IntPolynomial::from_i64(numerator).shift(shift), factors)
}

/// Coefficients of `q^{k²} / (q;q)_k²`, partitions with Durfee square of size `k`.
pub fn gf_durfee_square_series(k: u32, order: usize) -> SeriesPrefix {
    let k = k as usize;
    let factors = (1..=k).flat_map(|j| [one_minus(j), one_minus(j)]).collect();
    let gf = RationalGF::from_factors(IntPolynomial::monomial(1, k * k), factors)
        .expect("products of (1 - q^j) have constant term 1");
    gf.expand(order)
}

/// Truncated product `Π (1 + s·q^{step·j})` over every factor with exponent `≤ N`.
fn truncated_product(order: usize, step: usize, sign: i64) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); order + 1];
    acc[0] = BigInt::one();
    let mut e = step;
    while e <= order {
        for i in (e..=order).rev() {
            let (lo, hi) = acc.split_at_mut(i);
            let prev = &lo[i - e];
            if !prev.is_zero() {
                if sign > 0 {
                    hi[0] += prev;
                } else {
                    hi[0] -= prev;
                }
            }
        }
        e += step;
    }
    acc
}

/// `F(0..=N)` from `((q²;q²)_∞ (−q;q)_∞ − q) / (1 − q)`.
pub fn f_series_product(order: usize) -> SeriesPrefix {
    let evens = truncated_product(order, 2, -1);
    let distinct = truncated_product(order, 1, 1);
    let mut theta: Vec<BigInt> = vec![BigInt::zero(); order + 1];
    for (i, a) in evens.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in distinct.iter().enumerate().take(order + 1 - i) {
            theta[i + j] += a * b;
        }
    }
    if order >= 1 {
        theta[1] -= 1;
    }
    SeriesPrefix::new(theta).divide_by_one_minus_q()
}

/// `F(0..=N)` from `1 + (1/(1 − q)) Σ_{m≥1} q^{t_m}`.
pub fn f_series_triangular(order: usize) -> SeriesPrefix {
    let mut theta = vec![BigInt::zero(); order + 1];
    for m in 1u64.. {
        let t = triangular_number(m) as usize;
        if t > order {
            break;
        }
        theta[t] += 1;
    }
    let mut series = SeriesPrefix::new(theta).divide_by_one_minus_q();
    series.coeffs[0] += 1;
    series
}

/// `F(n)`: the `m` with `t_m ≤ n < t_{m+1}`, and `F(0) = 1`.
pub fn f_explicit(n: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    let mut m = ((2.0 * n as f64).sqrt() as u64).saturating_sub(1);
    while triangular_number(m + 1) <= n {
        m += 1;
    }
    while triangular_number(m) > n {
        m -= 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn ints(s: &SeriesPrefix, range: std::ops::RangeInclusive<usize>) -> Vec<i64> {
        range.map(|n| s.coeff(n).to_i64().unwrap()).collect()
    }

    #[test]
    fn polynomial_ring_ops() {
        let a = IntPolynomial::from_i64(&[1, -1]);
        let b = IntPolynomial::from_i64(&[1, 1]);
        assert_eq!(poly_mul(&a, &b), IntPolynomial::from_i64(&[1, 0, -1]));
        assert_eq!(poly_add(&a, &b), IntPolynomial::from_i64(&[2]));
        assert!(poly_mul(&a, &IntPolynomial::zero()).is_zero());
        assert!((&a - &a).is_zero());

        let cubic = &a.pow(3) * &IntPolynomial::from_i64(&[1, 1, 1]);
        assert_eq!(cubic, IntPolynomial::from_i64(&[1, -2, 1, -1, 2, -1]));
        assert_eq!(cubic.to_string(), "1 - 2q + q^2 - q^3 + 2q^4 - q^5");
    }

    #[test]
    fn denominator_must_start_with_one() {
        let bad = RationalGF::new(IntPolynomial::one(), IntPolynomial::from_i64(&[2, 1]));
        assert_eq!(bad, Err(QSeriesError::InvalidDenominator(BigInt::from(2))));
    }

    #[test]
    fn generating_functions_expand_to_table_rows() {
        let r2 = gf_durfee_triangle(2).unwrap().expand(8);
        assert_eq!(ints(&r2, 3..=8), [1, 3, 5, 8, 9, 12]);
        let r3 = gf_durfee_triangle(3).unwrap().expand(12);
        assert_eq!(ints(&r3, 6..=12), [1, 4, 8, 15, 23, 32, 43]);
        let r5 = gf_durfee_triangle(5).unwrap().expand(20);
        assert_eq!(ints(&r5, 15..=20), [1, 6, 17, 37, 70, 118]);
    }

    #[test]
    fn stored_forms() {
        let k2 = gf_durfee_triangle(2).unwrap();
        assert_eq!(
            k2.numerator(),
            &IntPolynomial::from_i64(&[0, 0, 0, 1, 2, 1, 1, -1])
        );
        // (1-q)^2 (1+q) = 1 - q - q^2 + q^3
        assert_eq!(k2.denominator(), &IntPolynomial::from_i64(&[1, -1, -1, 1]));

        let k3 = gf_durfee_triangle(3).unwrap();
        assert_eq!(
            k3.denominator(),
            &IntPolynomial::from_i64(&[1, -2, 1, -1, 2, -1])
        );

        let k4 = gf_durfee_triangle(4).unwrap();
        let expected = [1, 2, 3, 4]
            .into_iter()
            .fold(IntPolynomial::one(), |acc, d| acc * IntPolynomial::one_minus_q_pow(d));
        assert_eq!(k4.denominator(), &expected);
        assert_eq!(k4.denominator_factors().len(), 4);

        assert_eq!(gf_durfee_triangle(6), Err(QSeriesError::UnsupportedK(6)));
        assert_eq!(gf_durfee_triangle(1), Err(QSeriesError::UnsupportedK(1)));
    }

    #[test]
    fn durfee_square_series() {
        let s1 = gf_durfee_square_series(1, 4);
        // hooks (a, 1^(n-a)): n of them
        assert_eq!(ints(&s1, 1..=4), [1, 2, 3, 4]);
        let s2 = gf_durfee_square_series(2, 6);
        assert_eq!(s2.coeff(6).to_i64(), Some(5));
        let s2 = gf_durfee_square_series(2, 3);
        assert!(s2.coeffs().iter().all(Zero::is_zero));
    }

    #[test]
    fn f_series() {
        let product = f_series_product(15);
        assert_eq!(ints(&product, 0..=10), [1, 1, 1, 2, 2, 2, 3, 3, 3, 3, 4]);
        assert_eq!(product.coeff(15).to_i64(), Some(5));

        let tri = f_series_triangular(6);
        assert_eq!(ints(&tri, 0..=6), [1, 1, 1, 2, 2, 2, 3]);
        assert_eq!(ints(&f_series_triangular(0), 0..=0), [1]);
        assert_eq!(ints(&f_series_product(0), 0..=0), [1]);
    }

    #[test]
    fn f_explicit_values() {
        assert_eq!(f_explicit(0), 1);
        assert_eq!(f_explicit(1), 1);
        assert_eq!(f_explicit(10), 4);
        assert_eq!(f_explicit(14), 4);
        assert_eq!(f_explicit(15), 5);
        for n in 1..2000u64 {
            let m = f_explicit(n);
            assert!(triangular_number(m) <= n && n < triangular_number(m + 1));
        }
    }

    #[test]
    fn bfile_and_json_rendering() {
        let s = gf_durfee_triangle(2).unwrap().expand(5);
        assert_eq!(s.to_bfile(3), "3 1\n4 3\n5 5\n");
        assert_eq!(s.to_json().to_string(), "[0,0,0,1,3,5]");
    }
}
