//! OEIS b-files: parsing, fixture or network retrieval, and cross-checks
//! against locally computed values.
//!
//! Two sequences are known: A325168 (`R_2(n)`) and A325188 (the `R_k(n)`
//! triangle read by rows, `k` increasing within each `n`, zero entries left
//! out). Fixtures live in `fixtures/` next to this crate's manifest unless
//! `ROOKDECOMP_FIXTURE_DIR` points elsewhere.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::decomposition::{build_table, DecompositionError};
use crate::qseries::gf_durfee_triangle;
use crate::report::{Check, Report};

/// Environment variable overriding the fixture directory.
pub const FIXTURE_DIR_ENV: &str = "ROOKDECOMP_FIXTURE_DIR";

const NETWORK_TIMEOUT_SECS: u64 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OeisError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: index {found} breaks the contiguous run (expected {expected})")]
    NonContiguous { line: usize, expected: u64, found: u64 },
    #[error("unknown sequence {0} (known: A325168, A325188)")]
    UnknownSequence(String),
    #[error("network unavailable ({0}); use fixture mode instead")]
    NetworkUnavailable(String),
    #[error("cannot read fixture {path}: {message}")]
    Fixture { path: String, message: String },
    #[error("sequences share no indices")]
    EmptyOverlap,
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KnownSequence {
    /// `R_2(n)`.
    A325168,
    /// The `R_k(n)` triangle read by rows.
    A325188,
}

impl KnownSequence {
    pub fn id(self) -> &'static str {
        match self {
            KnownSequence::A325168 => "A325168",
            KnownSequence::A325188 => "A325188",
        }
    }

    /// `b325168.txt` style name used by OEIS and by the fixture directory.
    pub fn bfile_name(self) -> String {
        format!("b{}.txt", &self.id()[1..])
    }

    pub fn url(self) -> String {
        format!("https://oeis.org/{}/{}", self.id(), self.bfile_name())
    }
}

impl FromStr for KnownSequence {
    type Err = OeisError;

    fn from_str(s: &str) -> Result<Self, OeisError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A325168" => Ok(KnownSequence::A325168),
            "A325188" => Ok(KnownSequence::A325188),
            _ => Err(OeisError::UnknownSequence(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FetchMode {
    Network,
    #[default]
    Fixture,
}

/// A run of consecutive indices and their values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OeisSequence {
    pub id: String,
    values: BTreeMap<u64, BigInt>,
    declared_offset: Option<u64>,
}

impl OeisSequence {
    /// `values[i]` becomes the term at index `offset + i`.
    pub fn from_values(id: impl Into<String>, offset: u64, values: impl IntoIterator<Item = BigInt>) -> Self {
        Self {
            id: id.into(),
            values: values
                .into_iter()
                .enumerate()
                .map(|(i, v)| (offset + i as u64, v))
                .collect(),
            declared_offset: None,
        }
    }

    pub fn values(&self) -> &BTreeMap<u64, BigInt> {
        &self.values
    }

    pub fn get(&self, index: u64) -> Option<&BigInt> {
        self.values.get(&index)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First stored index.
    pub fn first_index(&self) -> Option<u64> {
        self.values.keys().next().copied()
    }

    pub fn last_index(&self) -> Option<u64> {
        self.values.keys().next_back().copied()
    }

    /// Offset announced by a `# offset N` header line, if any.
    pub fn declared_offset(&self) -> Option<u64> {
        self.declared_offset
    }
}

/// Parses b-file text: `n a(n)` per line, `#` comments and blank lines
/// ignored. Indices must be contiguous and increasing. The id is taken from
/// the first comment that starts with an A-number, and `# offset N` is recorded.
pub fn parse_bfile(text: &str) -> Result<OeisSequence, OeisError> {
    let mut seq = OeisSequence::default();
    let mut expected: Option<u64> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            let first = comment.split_whitespace().next().unwrap_or("");
            if seq.id.is_empty() && first.len() == 7 && first.starts_with('A') && first[1..].bytes().all(|b| b.is_ascii_digit()) {
                seq.id = first.to_string();
            }
            if let Some(rest) = comment.strip_prefix("offset") {
                seq.declared_offset = rest.trim().parse().ok();
            }
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(OeisError::Parse {
                line: line_no,
                message: format!("expected two fields `n a(n)`, got {line:?}"),
            });
        };
        let index: u64 = index.parse().map_err(|_| OeisError::Parse {
            line: line_no,
            message: format!("index {index:?} is not a nonnegative integer"),
        })?;
        let value: BigInt = value.parse().map_err(|_| OeisError::Parse {
            line: line_no,
            message: format!("value {value:?} is not an integer"),
        })?;
        if let Some(want) = expected {
            if index != want {
                return Err(OeisError::NonContiguous {
                    line: line_no,
                    expected: want,
                    found: index,
                });
            }
        }
        expected = Some(index + 1);
        seq.values.insert(index, value);
    }
    Ok(seq)
}

/// `$ROOKDECOMP_FIXTURE_DIR`, falling back to the vendored directory.
pub fn default_fixture_dir() -> PathBuf {
    std::env::var_os(FIXTURE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures")))
}

pub fn fetch_sequence(id: &str, mode: FetchMode) -> Result<OeisSequence, OeisError> {
    fetch_sequence_from(id, mode, &default_fixture_dir())
}

pub fn fetch_sequence_from(id: &str, mode: FetchMode, fixture_dir: &Path) -> Result<OeisSequence, OeisError> {
    let known: KnownSequence = id.parse()?;
    let text = match mode {
        FetchMode::Fixture => {
            let path = fixture_dir.join(known.bfile_name());
            std::fs::read_to_string(&path).map_err(|e| OeisError::Fixture {
                path: path.display().to_string(),
                message: e.to_string(),
            })?
        }
        FetchMode::Network => download(&known.url())?,
    };
    let mut seq = parse_bfile(&text)?;
    seq.id = known.id().to_string();
    Ok(seq)
}

#[cfg(feature = "network")]
fn download(url: &str) -> Result<String, OeisError> {
    let agent = ureq::AgentBuilder::new()
        .timeout(std::time::Duration::from_secs(NETWORK_TIMEOUT_SECS))
        .build();
    agent
        .get(url)
        .call()
        .map_err(|e| OeisError::NetworkUnavailable(e.to_string()))?
        .into_string()
        .map_err(|e| OeisError::NetworkUnavailable(e.to_string()))
}

#[cfg(not(feature = "network"))]
fn download(_url: &str) -> Result<String, OeisError> {
    let _ = NETWORK_TIMEOUT_SECS;
    Err(OeisError::NetworkUnavailable(
        "built without the `network` feature".to_string(),
    ))
}

/// Index-by-index comparison over the shared indices. Symmetric in its
/// arguments apart from labels.
pub fn compare_sequences(a: &OeisSequence, b: &OeisSequence) -> Result<Report, OeisError> {
    let shared: Vec<u64> = a
        .values
        .keys()
        .filter(|i| b.values.contains_key(i))
        .copied()
        .collect();
    if shared.is_empty() {
        return Err(OeisError::EmptyOverlap);
    }
    let mut report = Report::new(format!("{} vs {}", label(a), label(b)));
    let mismatches: Vec<u64> = shared
        .iter()
        .copied()
        .filter(|i| a.values[i] != b.values[i])
        .collect();
    let (lo, hi) = (shared[0], shared[shared.len() - 1]);
    let detail = match mismatches.first() {
        None => format!("{} shared indices {lo}..={hi} agree", shared.len()),
        Some(i) => format!(
            "{} of {} shared indices differ; first at {i}: {} vs {}",
            mismatches.len(),
            shared.len(),
            a.values[i],
            b.values[i]
        ),
    };
    report.push(Check::new("per-index equality", mismatches.is_empty(), detail));
    Ok(report)
}

fn label(s: &OeisSequence) -> &str {
    if s.id.is_empty() {
        "unnamed"
    } else {
        &s.id
    }
}

/// Compares a remote sequence with local values, `local[i]` sitting at index
/// `offset + i`.
pub fn crosscheck(remote: &OeisSequence, local: &[BigInt], offset: u64) -> Result<Report, OeisError> {
    let local = OeisSequence::from_values("local", offset, local.iter().cloned());
    compare_sequences(remote, &local)
}

/// `R_2(0..=order)` from its generating function.
pub fn local_r2(order: usize) -> Vec<BigInt> {
    gf_durfee_triangle(2)
        .expect("k = 2 is supported")
        .expand(order)
        .into_coeffs()
}

/// The enumerated triangle for `n ≤ n_max`, flattened the A325188 way.
pub fn local_triangle(n_max: u32) -> Result<Vec<BigInt>, OeisError> {
    Ok(build_table(n_max)?
        .flatten_nonzero()
        .into_iter()
        .map(BigInt::from)
        .collect())
}

/// Both cross-checks: A325168 against the `k = 2` generating function, and
/// A325188 against the enumerated table flattened row by row.
pub fn check_known_sequences(mode: FetchMode, fixture_dir: &Path) -> Result<Report, OeisError> {
    let mut report = Report::new(format!("OEIS cross-checks ({mode:?} mode)"));

    let r2 = fetch_sequence_from("A325168", mode, fixture_dir)?;
    let top = r2.last_index().unwrap_or(0).max(50) as usize;
    let mut part = crosscheck(&r2, &local_r2(top), 0)?;
    for c in &mut part.checks {
        c.name = format!("A325168 {}", c.name);
    }
    report.extend(part);

    let tri = fetch_sequence_from("A325188", mode, fixture_dir)?;
    let first = tri.first_index().unwrap_or(1);
    let needed = tri.len();
    // grow the table until it covers every fixture entry
    let mut n_max = 50u32;
    let mut local = local_triangle(n_max)?;
    while local.len() < needed && n_max < crate::decomposition::DEFAULT_MAX_TABLE_N {
        n_max = (n_max + 10).min(crate::decomposition::DEFAULT_MAX_TABLE_N);
        local = local_triangle(n_max)?;
    }
    let mut part = crosscheck(&tri, &local, first)?;
    for c in &mut part.checks {
        c.name = format!("A325188 {}", c.name);
    }
    report.extend(part);
    Ok(report)
}
