//! Integer partitions: canonical representation, enumeration, conjugation,
//! Durfee statistics and the pentagonal-number recurrence for `P(n)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact nonnegative count. Partition numbers leave `u64` range at `n = 417`.
pub type BigCount = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("part at position {index} is zero; parts must be positive")]
    ZeroPart { index: usize },
    #[error("parts must be non-increasing: {prev} is followed by {next} at position {index}")]
    NotNonIncreasing { index: usize, prev: u32, next: u32 },
    #[error("generalized pentagonal numbers are defined for nonzero k only")]
    ZeroPentagonalIndex,
}

/// A partition stored as its non-increasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, rejecting zero parts and unsorted input.
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        for (index, &p) in parts.iter().enumerate() {
            if p == 0 {
                return Err(PartitionError::ZeroPart { index });
            }
            if index > 0 && parts[index - 1] < p {
                return Err(PartitionError::NotNonIncreasing {
                    index,
                    prev: parts[index - 1],
                    next: p,
                });
            }
        }
        Ok(Self { parts })
    }

    /// The empty partition of zero.
    pub fn empty() -> Self {
        Self::default()
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(Self::new(parts.clone()).is_ok());
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Transpose of the Ferrers diagram.
    pub fn conjugate(&self) -> Partition {
        Partition {
            parts: conjugate_parts(&self.parts),
        }
    }

    pub fn durfee_square_size(&self) -> u32 {
        durfee_square_of(&self.parts)
    }

    pub fn durfee_triangle_size(&self) -> u32 {
        durfee_triangle_of(&self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

pub(crate) fn conjugate_parts(parts: &[u32]) -> Vec<u32> {
    let Some(&largest) = parts.first() else {
        return Vec::new();
    };
    // column j has as many cells as there are parts exceeding j
    let mut columns = Vec::with_capacity(largest as usize);
    let mut rows = parts.len();
    for j in 0..largest {
        while rows > 0 && parts[rows - 1] <= j {
            rows -= 1;
        }
        columns.push(rows as u32);
    }
    columns
}

/// Largest `d` with `λ_d ≥ d`.
pub fn durfee_square_size(p: &Partition) -> u32 {
    durfee_square_of(p.parts())
}

pub(crate) fn durfee_square_of(parts: &[u32]) -> u32 {
    parts
        .iter()
        .enumerate()
        .take_while(|&(i, &part)| part as usize > i)
        .count() as u32
}

/// Largest `d` with `λ_i ≥ d + 1 − i` for every `1 ≤ i ≤ d`.
pub fn durfee_triangle_size(p: &Partition) -> u32 {
    durfee_triangle_of(p.parts())
}

pub(crate) fn durfee_triangle_of(parts: &[u32]) -> u32 {
    // d works iff min_{i<=d}(λ_i + i - 1) >= d; the prefix minimum only
    // shrinks while d grows, so the first failure ends the scan.
    let mut reach = u32::MAX;
    let mut d = 0;
    for (i, &part) in parts.iter().enumerate() {
        reach = reach.min(part + i as u32);
        if reach < i as u32 + 1 {
            break;
        }
        d = i as u32 + 1;
    }
    d
}

/// `m(m+1)/2`.
pub fn triangular_number(m: u64) -> u64 {
    m * (m + 1) / 2
}

/// `k(3k−1)/2` for nonzero `k`.
pub fn generalized_pentagonal(k: i64) -> Result<u64, PartitionError> {
    if k == 0 {
        return Err(PartitionError::ZeroPentagonalIndex);
    }
    let k = i128::from(k);
    Ok((k * (3 * k - 1) / 2) as u64)
}

/// Visits every partition of `n` in reverse-lexicographic order without
/// allocating per partition. The slice handed to `visit` is the parts list.
pub fn for_each_partition<F: FnMut(&[u32])>(n: u32, mut visit: F) {
    let mut parts: Vec<u32> = Vec::with_capacity(n as usize);
    if n > 0 {
        parts.push(n);
    }
    loop {
        visit(&parts);
        if !advance_reverse_lex(&mut parts) {
            return;
        }
    }
}

/// Steps to the next partition in reverse-lexicographic order; returns false
/// after the all-ones partition.
fn advance_reverse_lex(parts: &mut Vec<u32>) -> bool {
    let mut freed = 0u32;
    while let Some(&1) = parts.last() {
        parts.pop();
        freed += 1;
    }
    let Some(last) = parts.last_mut() else {
        return false;
    };
    *last -= 1;
    let cap = *last;
    freed += 1;
    while freed > 0 {
        let take = freed.min(cap);
        parts.push(take);
        freed -= take;
    }
    true
}

/// Iterator over the partitions of `n` in reverse-lexicographic order.
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let parts = self.current.as_mut()?;
        let out = Partition::from_sorted_unchecked(parts.clone());
        if !advance_reverse_lex(parts) {
            self.current = None;
        }
        Some(out)
    }
}

/// Every partition of `n` exactly once, starting at `(n)` and ending at `(1,…,1)`.
pub fn enumerate_partitions(n: u32) -> Partitions {
    let start = if n == 0 { Vec::new() } else { vec![n] };
    Partitions {
        current: Some(start),
    }
}

/// `P(0), …, P(n)` by Euler's pentagonal recurrence.
pub fn partition_counts(n: usize) -> Vec<BigCount> {
    let mut table: Vec<BigCount> = Vec::with_capacity(n + 1);
    table.push(BigCount::one());
    for m in 1..=n {
        let mut plus = BigCount::zero();
        let mut minus = BigCount::zero();
        for j in 1i64.. {
            // sign (-1)^(j-1), shared by g_j and g_{-j}
            let mut any = false;
            for k in [j, -j] {
                let g = (k * (3 * k - 1) / 2) as usize;
                if g <= m {
                    any = true;
                    let term = &table[m - g];
                    if j % 2 == 1 {
                        plus += term;
                    } else {
                        minus += term;
                    }
                }
            }
            if !any {
                break;
            }
        }
        table.push(plus - minus);
    }
    table
}

/// `P(n)`.
pub fn partition_count(n: usize) -> BigCount {
    partition_counts(n).pop().expect("table holds P(0)")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rejects_unsorted_and_zero_parts() {
        assert_eq!(
            Partition::new(vec![1, 2]),
            Err(PartitionError::NotNonIncreasing {
                index: 1,
                prev: 1,
                next: 2
            })
        );
        assert_eq!(
            Partition::new(vec![2, 0]),
            Err(PartitionError::ZeroPart { index: 1 })
        );
    }

    #[test]
    fn enumeration_of_small_n() {
        let zero: Vec<_> = enumerate_partitions(0).collect();
        assert_eq!(zero, vec![Partition::empty()]);

        let five: Vec<String> = enumerate_partitions(5).map(|p| p.to_string()).collect();
        assert_eq!(
            five,
            [
                "(5)",
                "(4,1)",
                "(3,2)",
                "(3,1,1)",
                "(2,2,1)",
                "(2,1,1,1)",
                "(1,1,1,1,1)"
            ]
        );

        let eleven: Vec<_> = enumerate_partitions(11).collect();
        assert_eq!(eleven.len(), 56);
        assert!(eleven.contains(&p(&[5, 3, 2, 1])));
    }

    #[test]
    fn visitor_matches_iterator() {
        let mut seen = Vec::new();
        for_each_partition(9, |parts| seen.push(parts.to_vec()));
        let iter: Vec<_> = enumerate_partitions(9).map(|p| p.parts().to_vec()).collect();
        assert_eq!(seen, iter);
    }

    #[test]
    fn conjugation() {
        assert_eq!(p(&[5, 3, 2, 1]).conjugate(), p(&[4, 3, 2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[3, 3, 3]).conjugate(), p(&[3, 3, 3]));
    }

    #[test]
    fn durfee_statistics() {
        assert_eq!(durfee_square_size(&p(&[5, 3, 2, 1])), 2);
        assert_eq!(durfee_square_size(&Partition::empty()), 0);
        assert_eq!(durfee_square_size(&p(&[3, 3])), 2);

        assert_eq!(durfee_triangle_size(&p(&[5, 3, 2, 1])), 4);
        assert_eq!(durfee_triangle_size(&p(&[1])), 1);
        assert_eq!(durfee_triangle_size(&p(&[3, 3, 3])), 3);
        assert_eq!(durfee_triangle_size(&Partition::empty()), 0);
    }

    #[test]
    fn triangular_and_pentagonal() {
        let first: Vec<u64> = (1..=5).map(triangular_number).collect();
        assert_eq!(first, [1, 3, 6, 10, 15]);
        assert_eq!(triangular_number(0), 0);
        assert_eq!(triangular_number(100), 5050);

        assert_eq!(generalized_pentagonal(1), Ok(1));
        assert_eq!(generalized_pentagonal(-1), Ok(2));
        assert_eq!(generalized_pentagonal(2), Ok(5));
        assert_eq!(
            generalized_pentagonal(0),
            Err(PartitionError::ZeroPentagonalIndex)
        );
    }

    #[test]
    fn partition_numbers() {
        assert_eq!(partition_count(0), BigCount::from(1u32));
        assert_eq!(partition_count(20), BigCount::from(627u32));
        assert_eq!(partition_count(30), BigCount::from(5604u32));
        assert_eq!(
            partition_count(30),
            BigCount::from(enumerate_partitions(30).count())
        );
        assert_eq!(partition_count(100).to_string(), "190569292");
        assert_eq!(
            partition_count(1000).to_string(),
            "24061467864032622473692149727991"
        );
    }
}
