//! The table of `R_k(n)`: partitions of `n` by Durfee triangle size, which is
//! also their max-rook number. Column sums recover `P(n)`.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::par::{map_ordered, Execution};
use crate::partitions::{
    durfee_triangle_of, for_each_partition, partition_counts, triangular_number, BigCount,
};
use crate::qseries::{f_explicit, f_series_product, f_series_triangular, gf_durfee_triangle};
use crate::report::{json_int, Check, Report};
use crate::rook::{max_rook_number, Board};

/// Default ceiling on `N` for enumeration; `P(80)` is about 1.6e7.
pub const DEFAULT_MAX_TABLE_N: u32 = 80;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("table size must be at least 1")]
    EmptyRange,
    #[error("N = {n} exceeds the enumeration limit {limit}; raise the limit to proceed")]
    LimitExceeded { n: u32, limit: u32 },
    #[error("malformed table JSON: {0}")]
    Json(String),
}

/// `entries[k][n] = R_k(n)` for `1 ≤ k ≤ max_k`, `1 ≤ n ≤ max_n`, and
/// `totals[n] = P(n)`. Column `n = 0` and row `k = 0` are zero; `totals[0] = P(0) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTable {
    max_n: u32,
    max_k: u32,
    entries: Vec<Vec<BigCount>>,
    totals: Vec<BigCount>,
}

impl DecompositionTable {
    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    pub fn max_k(&self) -> u32 {
        self.max_k
    }

    /// `R_k(n)`; zero outside the stored range.
    pub fn entry(&self, k: u32, n: u32) -> BigCount {
        self.entries
            .get(k as usize)
            .and_then(|row| row.get(n as usize))
            .cloned()
            .unwrap_or_default()
    }

    /// Overwrites one cell. Used to inject faults when testing verifiers.
    pub fn set_entry(&mut self, k: u32, n: u32, value: BigCount) {
        assert!(k >= 1 && k <= self.max_k && n >= 1 && n <= self.max_n);
        self.entries[k as usize][n as usize] = value;
    }

    /// `P(n)`.
    pub fn total(&self, n: u32) -> BigCount {
        self.totals.get(n as usize).cloned().unwrap_or_default()
    }

    /// `R_k(1..=max_n)`.
    pub fn row(&self, k: u32) -> &[BigCount] {
        &self.entries[k as usize][1..]
    }

    /// Nonzero entries read row by row in `n`, with `k` increasing inside a row.
    pub fn flatten_nonzero(&self) -> Vec<BigCount> {
        let mut out = Vec::new();
        for n in 1..=self.max_n {
            for k in 1..=self.max_k {
                let v = self.entry(k, n);
                if !v.is_zero() {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Header `n,P,R1,…,R{max_k}` then one line per `n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,P");
        for k in 1..=self.max_k {
            write!(out, ",R{k}").unwrap();
        }
        out.push('\n');
        for n in 1..=self.max_n {
            write!(out, "{n},{}", self.total(n)).unwrap();
            for k in 1..=self.max_k {
                write!(out, ",{}", self.entry(k, n)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Text layout of the decomposition: one row per statistic, `--` where
    /// `R_k(n)` vanishes because `n < t_k`.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<Vec<String>> = Vec::new();
        let header = std::iter::once("n".to_string())
            .chain((1..=self.max_n).map(|n| n.to_string()))
            .collect();
        rows.push(header);
        rows.push(
            std::iter::once("P(n)".to_string())
                .chain((1..=self.max_n).map(|n| self.total(n).to_string()))
                .collect(),
        );
        for k in 1..=self.max_k {
            let t_k = triangular_number(u64::from(k));
            rows.push(
                std::iter::once(format!("R_{k}(n)"))
                    .chain((1..=self.max_n).map(|n| {
                        if u64::from(n) < t_k {
                            "--".to_string()
                        } else {
                            self.entry(k, n).to_string()
                        }
                    }))
                    .collect(),
            );
        }
        let columns = rows[0].len();
        let widths: Vec<usize> = (0..columns)
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for r in &rows {
            let line: Vec<String> = r
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(c, (cell, &w))| {
                    if c == 0 {
                        format!("{cell:<w$}")
                    } else {
                        format!("{cell:>w$}")
                    }
                })
                .collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (1..=self.max_k)
            .map(|k| {
                json!({
                    "k": k,
                    "values": self.row(k).iter().map(json_int).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("max_n".into(), json!(self.max_n));
        obj.insert("max_k".into(), json!(self.max_k));
        obj.insert(
            "totals".into(),
            Value::Array(self.totals[1..].iter().map(json_int).collect()),
        );
        obj.insert("rows".into(), Value::Array(rows));
        Value::Object(obj)
    }

    pub fn from_json(value: &Value) -> Result<Self, DecompositionError> {
        let bad = |what: &str| DecompositionError::Json(what.to_string());
        let max_n = value["max_n"].as_u64().ok_or_else(|| bad("max_n"))? as u32;
        let max_k = value["max_k"].as_u64().ok_or_else(|| bad("max_k"))? as u32;
        let parse_list = |v: &Value, what: &str| -> Result<Vec<BigCount>, DecompositionError> {
            let arr = v.as_array().ok_or_else(|| bad(what))?;
            if arr.len() != max_n as usize {
                return Err(bad(&format!("{what}: expected {max_n} values")));
            }
            arr.iter()
                .map(|x| match x {
                    Value::Number(num) => num
                        .to_string()
                        .parse::<BigUint>()
                        .map_err(|_| bad(&format!("{what}: not a nonnegative integer"))),
                    _ => Err(bad(&format!("{what}: not a number"))),
                })
                .collect()
        };
        let mut totals = vec![BigCount::one()];
        totals.extend(parse_list(&value["totals"], "totals")?);
        let rows = value["rows"].as_array().ok_or_else(|| bad("rows"))?;
        if rows.len() != max_k as usize {
            return Err(bad("rows: expected max_k rows"));
        }
        let mut entries = vec![vec![BigCount::zero(); max_n as usize + 1]];
        for (i, row) in rows.iter().enumerate() {
            if row["k"].as_u64() != Some(i as u64 + 1) {
                return Err(bad("rows: k out of order"));
            }
            let mut values = vec![BigCount::zero()];
            values.extend(parse_list(&row["values"], "rows.values")?);
            entries.push(values);
        }
        Ok(Self {
            max_n,
            max_k,
            entries,
            totals,
        })
    }
}

/// Durfee-triangle-size histogram of the partitions of `n`; index `k`.
pub fn triangle_histogram(n: u32) -> Vec<u64> {
    let mut hist = vec![0u64; f_explicit(u64::from(n)) as usize + 1];
    for_each_partition(n, |parts| {
        hist[durfee_triangle_of(parts) as usize] += 1;
    });
    hist
}

/// Histogram of max-rook numbers over the partitions of `n`, by matching.
pub fn max_rook_histogram(n: u32) -> Vec<u64> {
    let mut hist = vec![0u64; f_explicit(u64::from(n)) as usize + 1];
    for p in crate::partitions::enumerate_partitions(n) {
        hist[max_rook_number(&Board::ferrers(&p))] += 1;
    }
    hist
}

pub fn build_table(n_max: u32) -> Result<DecompositionTable, DecompositionError> {
    build_table_with(n_max, DEFAULT_MAX_TABLE_N, Execution::default())
}

/// Enumerates every partition of every `n ≤ n_max`, distributing distinct
/// `n` across workers when `mode` is parallel.
pub fn build_table_with(
    n_max: u32,
    limit: u32,
    mode: Execution,
) -> Result<DecompositionTable, DecompositionError> {
    if n_max == 0 {
        return Err(DecompositionError::EmptyRange);
    }
    if n_max > limit {
        return Err(DecompositionError::LimitExceeded { n: n_max, limit });
    }
    let max_k = f_explicit(u64::from(n_max)) as u32;
    // largest n first so the expensive jobs start early
    let ns: Vec<u32> = (1..=n_max).rev().collect();
    let mut histograms = map_ordered(ns, mode, triangle_histogram);
    histograms.reverse();

    let mut entries = vec![vec![BigCount::zero(); n_max as usize + 1]; max_k as usize + 1];
    for (i, hist) in histograms.iter().enumerate() {
        for (k, &count) in hist.iter().enumerate().skip(1) {
            entries[k][i + 1] = BigCount::from(count);
        }
    }
    Ok(DecompositionTable {
        max_n: n_max,
        max_k,
        entries,
        totals: partition_counts(n_max as usize),
    })
}

/// Column sums, vanishing below `t_k`, `R_1`, row maxima, and agreement of rows
/// `k = 2..=5` with their rational generating functions.
pub fn verify_decomposition(t: &DecompositionTable) -> Report {
    let mut report = Report::new(format!("rook decomposition, n <= {}", t.max_n));
    let order = t.max_n as usize;
    let gf_rows: Vec<(u32, Vec<BigInt>)> = (2..=5)
        .map(|k| {
            let series = gf_durfee_triangle(k).expect("k in 2..=5").expand(order);
            (k, series.into_coeffs())
        })
        .collect();

    for n in 1..=t.max_n {
        let sum: BigCount = (1..=t.max_k).map(|k| t.entry(k, n)).sum();
        let total = t.total(n);
        report.push(Check::new(
            format!("column-sum n={n}"),
            sum == total,
            format!("sum R_k({n}) = {sum}, P({n}) = {total}"),
        ));

        let offenders: Vec<u32> = (1..=t.max_k)
            .filter(|&k| u64::from(n) < triangular_number(u64::from(k)) && !t.entry(k, n).is_zero())
            .collect();
        report.push(Check::new(
            format!("vanishing n={n}"),
            offenders.is_empty(),
            if offenders.is_empty() {
                "R_k(n) = 0 for every k with n < t_k".to_string()
            } else {
                format!("nonzero below t_k for k in {offenders:?}")
            },
        ));

        let expected_r1 = if n == 1 { 1u32 } else { 2 };
        let r1 = t.entry(1, n);
        report.push(Check::new(
            format!("R1 n={n}"),
            r1 == BigCount::from(expected_r1),
            format!("R_1({n}) = {r1}, expected {expected_r1}"),
        ));

        let top = (1..=t.max_k).rev().find(|&k| !t.entry(k, n).is_zero()).unwrap_or(0);
        let f = f_explicit(u64::from(n));
        report.push(Check::new(
            format!("row-max n={n}"),
            u64::from(top) == f,
            format!("largest k with R_k({n}) > 0 is {top}, F({n}) = {f}"),
        ));

        for (k, coeffs) in &gf_rows {
            let local = BigInt::from(t.entry(*k, n));
            let gf = &coeffs[n as usize];
            report.push(Check::new(
                format!("gf k={k} n={n}"),
                &local == gf,
                format!("table {local}, generating function {gf}"),
            ));
        }
    }
    report
}

/// Ramanujan's congruences for `P(5l+4)`, `P(7l+5)`, `P(11l+6)` up to `n_max`.
pub fn ramanujan_check(n_max: u32) -> Report {
    let p = partition_counts(n_max as usize);
    let mut report = Report::new(format!("Ramanujan congruences, arguments <= {n_max}"));
    for (modulus, residue) in [(5u32, 4u32), (7, 5), (11, 6)] {
        let args: Vec<u32> = (residue..=n_max).step_by(modulus as usize).collect();
        let bad = args
            .iter()
            .find(|&&n| !(&p[n as usize] % modulus).is_zero());
        let detail = match bad {
            None => format!(
                "{} arguments checked, e.g. P({}) = {}",
                args.len(),
                residue,
                p.get(residue as usize).map(|v| v.to_string()).unwrap_or_default()
            ),
            Some(n) => format!("P({n}) = {} is not divisible by {modulus}", p[*n as usize]),
        };
        report.push(Check::new(
            format!("P({modulus}l+{residue}) = 0 mod {modulus}"),
            bad.is_none(),
            detail,
        ));
    }
    report
}

/// The matching oracle agrees with the Durfee triangle size on every
/// partition of every `n ≤ n_max`.
pub fn rook_equivalence_check(n_max: u32, mode: Execution) -> Report {
    let ns: Vec<u32> = (0..=n_max).rev().collect();
    let mut rows = map_ordered(ns, mode, |n| {
        let mut examined = 0u64;
        let mut mismatch = None;
        for p in crate::partitions::enumerate_partitions(n) {
            examined += 1;
            let rooks = max_rook_number(&Board::ferrers(&p));
            let triangle = p.durfee_triangle_size() as usize;
            if rooks != triangle && mismatch.is_none() {
                mismatch = Some(format!("{p}: max-rook {rooks}, triangle {triangle}"));
            }
        }
        (n, examined, mismatch)
    });
    rows.reverse();

    let mut report = Report::new(format!("max-rook number = Durfee triangle size, n <= {n_max}"));
    let p = partition_counts(n_max as usize);
    let total: u64 = rows.iter().map(|r| r.1).sum();
    let expected: BigCount = p.iter().sum();
    report.push(Check::new(
        "partitions examined",
        BigCount::from(total) == expected,
        format!("{total} enumerated, sum of P(n) = {expected}"),
    ));
    let first_bad = rows.iter().find_map(|r| r.2.clone());
    report.push(Check::new(
        "matching oracle",
        first_bad.is_none(),
        first_bad.unwrap_or_else(|| format!("all {total} partitions agree")),
    ));
    report
}

/// Both `F(n)` series forms agree to `series_n`, and match the maximum
/// max-rook number over partitions of `n` for `1 ≤ n ≤ oracle_n`.
pub fn f_series_check(series_n: usize, oracle_n: u32) -> Report {
    let mut report = Report::new(format!("F(n): series to {series_n}, oracle to {oracle_n}"));
    let product = f_series_product(series_n);
    let triangular = f_series_triangular(series_n);
    let first_diff = (0..=series_n).find(|&n| product.coeff(n) != triangular.coeff(n));
    report.push(Check::new(
        "product form = triangular-sum form",
        first_diff.is_none(),
        match first_diff {
            None => format!("{} coefficients agree", series_n + 1),
            Some(n) => format!(
                "n={n}: product {}, triangular {}",
                product.coeff(n),
                triangular.coeff(n)
            ),
        },
    ));
    let closed_diff = (0..=series_n)
        .find(|&n| product.coeff(n).to_u64() != Some(f_explicit(n as u64)));
    report.push(Check::new(
        "series = explicit F(n)",
        closed_diff.is_none(),
        match closed_diff {
            None => "t_m <= n < t_(m+1) gives F(n) = m".to_string(),
            Some(n) => format!("n={n}: series {}, explicit {}", product.coeff(n), f_explicit(n as u64)),
        },
    ));

    let limit = oracle_n.min(series_n as u32);
    let oracle_diff = (1..=limit).find_map(|n| {
        let best = crate::partitions::enumerate_partitions(n)
            .map(|p| max_rook_number(&Board::ferrers(&p)))
            .max()
            .unwrap_or(0) as u64;
        let series = product.coeff(n as usize).to_u64();
        (series != Some(best)).then(|| format!("n={n}: series {:?}, max over partitions {best}", series))
    });
    report.push(Check::new(
        "series = max over partitions of max-rook number",
        oracle_diff.is_none(),
        oracle_diff.unwrap_or_else(|| format!("1 <= n <= {limit}")),
    ));
    report
}
