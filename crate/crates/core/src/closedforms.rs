//! Closed forms for `R_1..R_4`, their recurrences, parity and periodicity
//! modulo `p`, growth ratios, and estimation of the growth constants `c_k` in
//! `R_k(n) ~ c_k n^{k-1}`.
//!
//! Each closed form carries the hypothesis under which it holds; evaluation
//! outside it is an error, never a silent fallback.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::decomposition::DecompositionTable;
use crate::qseries::{gf_durfee_triangle, IntPolynomial};
use crate::report::{Check, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("k = {k} is not supported here (supported: {supported})")]
    UnsupportedK { k: u32, supported: &'static str },
    #[error("n = {n} is outside the domain of the k = {k} formula (requires n >= {valid_from})")]
    OutOfDomain { k: u32, n: u64, valid_from: u64 },
    #[error("value source has no R_{k}({n})")]
    MissingValue { k: u32, n: u64 },
    #[error("range too small: {0}")]
    RangeTooSmall(String),
}

/// Where a closed form for `R_k` is valid: `n ≥ valid_from`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedFormDomain {
    pub k: u32,
    pub valid_from: u64,
}

impl ClosedFormDomain {
    pub fn for_k(k: u32) -> Result<Self, ClosedFormError> {
        let valid_from = match k {
            1 => 1,
            2 => 5,
            3 => 10,
            4 => 17,
            _ => {
                return Err(ClosedFormError::UnsupportedK {
                    k,
                    supported: "1..=4",
                })
            }
        };
        Ok(Self { k, valid_from })
    }

    pub fn check(&self, n: u64) -> Result<(), ClosedFormError> {
        if n < self.valid_from {
            return Err(ClosedFormError::OutOfDomain {
                k: self.k,
                n,
                valid_from: self.valid_from,
            });
        }
        Ok(())
    }
}

/// `R_3(3m + a)`: coefficients of `m², m, 1` per residue `a`.
const R3_CASES: [[i64; 3]; 3] = [[6, -15, 7], [6, -11, 2], [6, -7, -1]];

/// `R_4(12m + a)`: coefficients of `m³, m², m, 1` per residue `a`.
pub const R4_CASES: [[i64; 4]; 12] = [
    [192, -264, 87, -3],
    [192, -216, 44, 5],
    [192, -168, 15, 5],
    [192, -120, -12, 7],
    [192, -72, -25, 4],
    [192, -24, -36, 3],
    [192, 24, -33, -2],
    [192, 72, -28, -3],
    [192, 120, -9, -5],
    [192, 168, 12, -5],
    [192, 216, 47, -3],
    [192, 264, 84, 3],
];

fn horner(coeffs: &[i64], m: &BigInt) -> BigInt {
    coeffs
        .iter()
        .fold(BigInt::zero(), |acc, &c| acc * m + BigInt::from(c))
}

/// Exact `R_k(n)` for `k` in `1..=4` inside the formula's domain.
pub fn rk_closed(k: u32, n: u64) -> Result<BigUint, ClosedFormError> {
    ClosedFormDomain::for_k(k)?.check(n)?;
    let value = match k {
        1 => BigInt::from(if n == 1 { 1 } else { 2 }),
        2 => BigInt::from(n) * 2 - if n.is_multiple_of(2) { 4 } else { 5 },
        3 => {
            let (m, a) = n.div_rem(&3);
            horner(&R3_CASES[a as usize], &BigInt::from(m))
        }
        4 => {
            let (m, a) = n.div_rem(&12);
            horner(&R4_CASES[a as usize], &BigInt::from(m))
        }
        _ => unreachable!("domain lookup rejects other k"),
    };
    Ok(value.to_biguint().expect("counts are nonnegative"))
}

/// Anything that can supply `R_k(n)`.
pub trait ValueSource {
    fn value(&self, k: u32, n: u64) -> Option<BigInt>;

    fn require(&self, k: u32, n: u64) -> Result<BigInt, ClosedFormError> {
        self.value(k, n).ok_or(ClosedFormError::MissingValue { k, n })
    }
}

impl<F: Fn(u32, u64) -> Option<BigInt>> ValueSource for F {
    fn value(&self, k: u32, n: u64) -> Option<BigInt> {
        self(k, n)
    }
}

impl ValueSource for DecompositionTable {
    fn value(&self, k: u32, n: u64) -> Option<BigInt> {
        (k >= 1 && n >= 1 && n <= u64::from(self.max_n())).then(|| BigInt::from(self.entry(k, n as u32)))
    }
}

/// Closed forms, inside their domains only.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedFormSource;

impl ValueSource for ClosedFormSource {
    fn value(&self, k: u32, n: u64) -> Option<BigInt> {
        rk_closed(k, n).ok().map(BigInt::from)
    }
}

/// Generating-function coefficients for `k = 2..=5` up to a fixed order.
#[derive(Debug, Clone)]
pub struct GfSource {
    series: BTreeMap<u32, Vec<BigInt>>,
}

impl GfSource {
    /// Expands each requested `k` once. Unsupported `k` are skipped and simply
    /// answer `None`.
    pub fn new(ks: impl IntoIterator<Item = u32>, order: usize) -> Self {
        let series = ks
            .into_iter()
            .filter_map(|k| {
                gf_durfee_triangle(k)
                    .ok()
                    .map(|gf| (k, gf.expand(order).into_coeffs()))
            })
            .collect();
        Self { series }
    }

    pub fn all(order: usize) -> Self {
        Self::new(2..=5, order)
    }
}

impl ValueSource for GfSource {
    fn value(&self, k: u32, n: u64) -> Option<BigInt> {
        self.series.get(&k)?.get(n as usize).cloned()
    }
}

/// `R_k(n)` minus the right-hand side of the fixed-length recurrence:
/// `R_2(n−1) + R_2(n−2) − R_2(n−3)` for `n > 7`, and
/// `2R_3(n−1) − R_3(n−2) + R_3(n−3) − 2R_3(n−4) + R_3(n−5)` for `n > 14`.
pub fn recurrence_residual(k: u32, n: u64, source: &dyn ValueSource) -> Result<BigInt, ClosedFormError> {
    let (weights, valid_from): (&[i64], u64) = match k {
        2 => (&[1, 1, -1], 8),
        3 => (&[2, -1, 1, -2, 1], 15),
        _ => {
            return Err(ClosedFormError::UnsupportedK {
                k,
                supported: "2..=3",
            })
        }
    };
    if n < valid_from {
        return Err(ClosedFormError::OutOfDomain { k, n, valid_from });
    }
    let mut residual = source.require(k, n)?;
    for (j, &w) in weights.iter().enumerate() {
        residual -= source.require(k, n - 1 - j as u64)? * w;
    }
    Ok(residual)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(value: &BigInt) -> Self {
        if value.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// First `n` at which the parity classification of `R_k` is proven.
pub fn parity_valid_from(k: u32) -> Result<u64, ClosedFormError> {
    match k {
        3 => Ok(10),
        4 => Ok(17),
        5 => Ok(26),
        _ => Err(ClosedFormError::UnsupportedK {
            k,
            supported: "3..=5",
        }),
    }
}

/// Parity of `R_k(n)` for `k` in `3..=5` above the proven threshold.
pub fn parity_class(k: u32, n: u64) -> Result<Parity, ClosedFormError> {
    let valid_from = parity_valid_from(k)?;
    if n < valid_from {
        return Err(ClosedFormError::OutOfDomain { k, n, valid_from });
    }
    let even = match k {
        3 => n % 2 == 1,
        4 => matches!(n % 8, 4 | 6),
        5 => matches!(n % 8, 5 | 7),
        _ => unreachable!(),
    };
    Ok(if even { Parity::Even } else { Parity::Odd })
}

/// Compares the parity classification with a value source on every in-domain
/// `n ≤ n_max`. The closing diagnostic reports the smallest `n0` from which the
/// pattern holds throughout, to compare with `k²`; it never fails the report.
pub fn parity_report(k: u32, n_max: u64, source: &dyn ValueSource) -> Result<Report, ClosedFormError> {
    let valid_from = parity_valid_from(k)?;
    if n_max < valid_from {
        return Err(ClosedFormError::RangeTooSmall(format!(
            "parity of R_{k} is classified from n = {valid_from}, got n <= {n_max}"
        )));
    }
    let mut report = Report::new(format!("parity of R_{k}(n), {valid_from} <= n <= {n_max}"));
    let mut mismatch = None;
    for n in valid_from..=n_max {
        let actual = Parity::of(&source.require(k, n)?);
        let predicted = parity_class(k, n)?;
        if actual != predicted && mismatch.is_none() {
            mismatch = Some(format!("n={n}: predicted {predicted}, value is {actual}"));
        }
    }
    report.push(Check::new(
        "classification",
        mismatch.is_none(),
        mismatch.unwrap_or_else(|| format!("{} values match", n_max - valid_from + 1)),
    ));

    // R_4 is odd at odd n, R_5 odd at even n.
    let odd_rule = match k {
        4 => Some((1u64, "R_4(n) odd for odd n")),
        5 => Some((0u64, "R_5(n) odd for even n")),
        _ => None,
    };
    if let Some((residue, name)) = odd_rule {
        let bad = (valid_from..=n_max)
            .filter(|n| n % 2 == residue)
            .find(|&n| source.value(k, n).map(|v| v.is_even()).unwrap_or(true));
        report.push(Check::new(
            name,
            bad.is_none(),
            bad.map(|n| format!("fails at n={n}"))
                .unwrap_or_else(|| format!("holds for {valid_from} <= n <= {n_max}")),
        ));
    }

    let holds = |n: u64| {
        let predicted = match k {
            3 => n % 2 == 1,
            4 => matches!(n % 8, 4 | 6),
            _ => matches!(n % 8, 5 | 7),
        };
        source.value(k, n).map(|v| v.is_even() == predicted).unwrap_or(false)
    };
    let mut start = n_max + 1;
    while start > 1 && holds(start - 1) {
        start -= 1;
    }
    let square = u64::from(k * k);
    report.push(Check::diagnostic(
        "pattern onset",
        start == square + 1,
        format!("pattern holds from n = {start} through {n_max}; k^2 = {square}"),
    ));
    Ok(report)
}

/// Checks `R_k(n + period) ≡ R_k(n) (mod p)` for every in-domain `n` with
/// `n + period ≤ n_max`, where the period is `3p` for `k = 3` and `12p` for `k = 4`.
pub fn periodicity_check(
    k: u32,
    p: u64,
    n_max: u64,
    source: &dyn ValueSource,
) -> Result<bool, ClosedFormError> {
    if !(3..=4).contains(&k) {
        return Err(ClosedFormError::UnsupportedK {
            k,
            supported: "3..=4",
        });
    }
    if p < 2 {
        return Err(ClosedFormError::RangeTooSmall(format!("modulus {p} must be at least 2")));
    }
    let valid_from = ClosedFormDomain::for_k(k)?.valid_from;
    let period = if k == 3 { 3 * p } else { 12 * p };
    let span = (n_max + 1).saturating_sub(valid_from);
    if span < 2 * period {
        return Err(ClosedFormError::RangeTooSmall(format!(
            "period {period} does not fit twice in {valid_from}..={n_max}"
        )));
    }
    let modulus = BigInt::from(p);
    for n in valid_from..=(n_max - period) {
        let a = source.require(k, n)?.mod_floor(&modulus);
        let b = source.require(k, n + period)?.mod_floor(&modulus);
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Proven leading constant: `R_3 ~ (2/3) n²`, `R_4 ~ (1/9) n³`.
pub fn proven_growth_constant(k: u32) -> Result<BigRational, ClosedFormError> {
    match k {
        3 => Ok(BigRational::new(2.into(), 3.into())),
        4 => Ok(BigRational::new(1.into(), 9.into())),
        _ => Err(ClosedFormError::UnsupportedK {
            k,
            supported: "3..=4",
        }),
    }
}

/// `R_k(n) / (c_k n^{k−1})` exactly, from the closed form.
pub fn asymptotic_ratio(k: u32, n: u64) -> Result<BigRational, ClosedFormError> {
    let c = proven_growth_constant(k)?;
    let value = BigInt::from(rk_closed(k, n)?);
    let scale = c * BigRational::from_integer(num_traits::pow(BigInt::from(n), (k - 1) as usize));
    Ok(BigRational::from_integer(value) / scale)
}

/// Quasi-period of the generating function's denominator: the lcm of the
/// orders of the roots of unity among its poles.
pub fn quasi_period(k: u32) -> Result<u64, ClosedFormError> {
    match k {
        2 => Ok(2),
        3 => Ok(3),
        4 => Ok(12),
        5 => Ok(60),
        _ => Err(ClosedFormError::UnsupportedK {
            k,
            supported: "2..=5",
        }),
    }
}

/// First `n` from which the generating-function coefficients of `R_k` follow
/// a quasi-polynomial (numerator degree minus denominator degree, plus one).
fn quasi_polynomial_from(k: u32) -> u64 {
    let gf = gf_durfee_triangle(k).expect("k checked by caller");
    let num = gf.numerator().degree().unwrap_or(0) as u64;
    let den = gf.denominator().degree().unwrap_or(0) as u64;
    (num + 1).saturating_sub(den).max(1)
}

fn binomial_row(d: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..d {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row
}

/// Estimate of `c_k` in `R_k(n) ~ c_k n^{k−1}` by exact finite differences.
///
/// With `L` the quasi-period, the `(k−1)`-th difference of step `L` of a
/// quasi-polynomial whose leading coefficient is the same on every residue
/// class equals `c_k (k−1)! L^{k−1}`. The estimator takes that difference at
/// each of the top `L` arguments `n ≤ N` and averages, so one full residue
/// period contributes.
pub fn estimate_ck(k: u32, n_max: u64, source: &dyn ValueSource) -> Result<BigRational, ClosedFormError> {
    let period = quasi_period(k)?;
    if n_max < 10 * u64::from(k) {
        return Err(ClosedFormError::RangeTooSmall(format!(
            "N = {n_max} is below 10k = {}",
            10 * k
        )));
    }
    let d = (k - 1) as usize;
    let reach = period * u64::from(k);
    let floor = quasi_polynomial_from(k);
    if n_max + 1 < reach + floor {
        return Err(ClosedFormError::RangeTooSmall(format!(
            "differences of step {period} need n >= {} to stay above n = {floor}",
            reach + floor - 1
        )));
    }
    let weights = binomial_row(d);
    let mut total = BigInt::zero();
    for n in (n_max + 1 - period)..=n_max {
        for (i, w) in weights.iter().enumerate() {
            let value = source.require(k, n - i as u64 * period)?;
            if i % 2 == 0 {
                total += w * value;
            } else {
                total -= w * value;
            }
        }
    }
    let factorial: BigInt = (1..=d as u64).map(BigInt::from).product();
    let denom = factorial * num_traits::pow(BigInt::from(period), d) * BigInt::from(period);
    Ok(BigRational::new(total, denom))
}

/// Leading coefficient of `n^{r−1}` read off the generating function: with
/// `r` denominator factors vanishing at `q = 1`, each of the form `(1 − q)g`,
/// it is `N(1) / (Π g(1) · Π f(1) · (r−1)!)` over vanishing factors `f = (1 − q)g`
/// and non-vanishing factors `f`.
pub fn growth_constant_from_gf(k: u32) -> Result<BigRational, ClosedFormError> {
    let gf = gf_durfee_triangle(k).map_err(|_| ClosedFormError::UnsupportedK {
        k,
        supported: "2..=5",
    })?;
    let mut weight = BigInt::one();
    let mut order = 0usize;
    for factor in gf.denominator_factors() {
        let at_one = factor.eval_at_one();
        if at_one.is_zero() {
            order += 1;
            weight *= -derivative_at_one(factor);
        } else {
            weight *= at_one;
        }
    }
    let factorial: BigInt = (1..order as u64).map(BigInt::from).product();
    Ok(BigRational::new(gf.numerator().eval_at_one(), weight * factorial))
}

fn derivative_at_one(p: &IntPolynomial) -> BigInt {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(e, c)| c * BigInt::from(e))
        .sum()
}

/// Exact fraction followed by a rounded six-decimal rendering.
pub fn format_ratio(r: &BigRational) -> String {
    let scaled = (r * BigRational::from_integer(BigInt::from(1_000_000))).round().to_integer();
    let negative = scaled.is_negative();
    let magnitude = scaled.abs();
    let (whole, frac) = magnitude.div_rem(&BigInt::from(1_000_000));
    let frac = frac.to_u64().unwrap_or(0);
    format!(
        "{r} ≈ {}{whole}.{frac:06}",
        if negative { "-" } else { "" }
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE_R2: [u64; 18] = [1, 3, 5, 8, 9, 12, 13, 16, 17, 20, 21, 24, 25, 28, 29, 32, 33, 36];
    const TABLE_R3: [u64; 15] = [1, 4, 8, 15, 23, 32, 43, 54, 67, 82, 97, 114, 133, 152, 173];

    fn printed(k: u32, n: u64) -> Option<BigInt> {
        match k {
            2 if (3..=20).contains(&n) => Some(TABLE_R2[n as usize - 3].into()),
            3 if (6..=20).contains(&n) => Some(TABLE_R3[n as usize - 6].into()),
            _ => None,
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(rk_closed(2, 6), Ok(8u32.into()));
        assert_eq!(rk_closed(3, 12), Ok(43u32.into()));
        assert_eq!(rk_closed(4, 17), Ok(135u32.into()));
        assert_eq!(rk_closed(1, 1), Ok(1u32.into()));
        assert_eq!(rk_closed(1, 50), Ok(2u32.into()));
        assert_eq!(
            rk_closed(3, 9),
            Err(ClosedFormError::OutOfDomain {
                k: 3,
                n: 9,
                valid_from: 10
            })
        );
        assert!(rk_closed(2, 4).is_err());
        assert!(rk_closed(4, 16).is_err());
        assert!(matches!(rk_closed(5, 100), Err(ClosedFormError::UnsupportedK { .. })));
    }

    #[test]
    fn closed_forms_match_printed_rows() {
        for n in 5..=20 {
            assert_eq!(BigInt::from(rk_closed(2, n).unwrap()), printed(2, n).unwrap());
        }
        for n in 10..=20 {
            assert_eq!(BigInt::from(rk_closed(3, n).unwrap()), printed(3, n).unwrap());
        }
    }

    #[test]
    fn recurrences_on_printed_values() {
        assert_eq!(recurrence_residual(2, 10, &printed), Ok(BigInt::zero()));
        assert_eq!(recurrence_residual(3, 20, &printed), Ok(BigInt::zero()));
        assert!(matches!(
            recurrence_residual(3, 14, &printed),
            Err(ClosedFormError::OutOfDomain { .. })
        ));
        assert_eq!(
            recurrence_residual(2, 30, &printed),
            Err(ClosedFormError::MissingValue { k: 2, n: 30 })
        );
        let gf = GfSource::all(60);
        assert_eq!(recurrence_residual(3, 60, &gf), Ok(BigInt::zero()));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_class(3, 20), Ok(Parity::Odd));
        assert_eq!(parity_class(4, 20), Ok(Parity::Even));
        assert_eq!(parity_class(5, 31), Ok(Parity::Even));
        assert!(parity_class(5, 25).is_err());
        assert!(parity_class(2, 25).is_err());
    }

    #[test]
    fn periodicity_examples() {
        assert_eq!(periodicity_check(3, 2, 60, &ClosedFormSource), Ok(true));
        assert_eq!(periodicity_check(4, 3, 200, &ClosedFormSource), Ok(true));
        assert!(matches!(
            periodicity_check(3, 5, 20, &ClosedFormSource),
            Err(ClosedFormError::RangeTooSmall(_))
        ));
        // a single corrupted value breaks periodicity
        let shifted = |k: u32, n: u64| ClosedFormSource.value(k, n).map(|v| if n == 20 { v + 1 } else { v });
        assert_eq!(periodicity_check(3, 2, 60, &shifted), Ok(false));
    }

    #[test]
    fn asymptotic_examples() {
        let r = asymptotic_ratio(3, 3000).unwrap();
        assert_eq!(r, BigRational::new(5985007.into(), 6000000.into()));
        let r4 = asymptotic_ratio(4, 12000).unwrap();
        let dev = (r4 - BigRational::one()).abs();
        assert!(dev < BigRational::new(3.into(), 100.into()));
        assert!(asymptotic_ratio(3, 9).is_err());
        assert!(asymptotic_ratio(5, 100).is_err());
    }

    #[test]
    fn growth_constants_from_generating_functions() {
        let expect = [(2, 2, 1), (3, 2, 3), (4, 1, 9), (5, 1, 90)];
        for (k, num, den) in expect {
            assert_eq!(
                growth_constant_from_gf(k).unwrap(),
                BigRational::new(num.into(), den.into()),
                "k = {k}"
            );
        }
    }

    #[test]
    fn estimator_guards() {
        assert!(matches!(
            estimate_ck(3, 20, &ClosedFormSource),
            Err(ClosedFormError::RangeTooSmall(_))
        ));
        assert!(matches!(
            estimate_ck(5, 100, &GfSource::all(100)),
            Err(ClosedFormError::RangeTooSmall(_))
        ));
        assert!(estimate_ck(6, 100, &GfSource::all(100)).is_err());
    }

    #[test]
    fn ratio_rendering() {
        let r = BigRational::new(5985007.into(), 6000000.into());
        assert_eq!(format_ratio(&r), "5985007/6000000 ≈ 0.997501");
        assert_eq!(format_ratio(&BigRational::new(2.into(), 3.into())), "2/3 ≈ 0.666667");
    }
}
