//! Boards and rook placements.
//!
//! [`max_rook_number`] is a maximum bipartite matching between occupied rows
//! and columns. [`rook_numbers`] computes the full profile `R(r, B)` by the
//! cell-deletion recursion
//!
//! ```text
//! R(r, B) = R(r, B \ {c}) + R(r - 1, B minus row(c) and col(c))
//! ```
//!
//! memoized on boards whose rows and columns have been relabelled densely.
//! [`rectangular_rook_profile`] evaluates the Laguerre closed form for an
//! `m × n` rectangle with exact rationals.

use std::collections::{BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::partitions::{BigCount, Partition};

/// Default cap on board size for [`rook_numbers`].
pub const DEFAULT_MAX_BOARD_CELLS: usize = 36;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RookError {
    #[error("board has {cells} cells, above the limit of {limit}")]
    BoardTooLarge { cells: usize, limit: usize },
    #[error("duplicate cell ({0}, {1})")]
    DuplicateCell(u32, u32),
    #[error("rectangular profile needs m >= n >= 1, got m = {m}, n = {n}")]
    InvalidRectangle { m: u32, n: u32 },
}

pub type Cell = (u32, u32);

/// A finite set of unit cells, addressed as `(row, column)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Board {
    cells: BTreeSet<Cell>,
}

impl Board {
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Self, RookError> {
        let mut set = BTreeSet::new();
        for (r, c) in cells {
            if !set.insert((r, c)) {
                return Err(RookError::DuplicateCell(r, c));
            }
        }
        Ok(Self { cells: set })
    }

    /// Row `i` holds the leftmost `λ_{i+1}` cells.
    pub fn ferrers(p: &Partition) -> Self {
        let cells = p
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(row, &len)| (0..len).map(move |col| (row as u32, col)))
            .collect();
        Self { cells }
    }

    /// `rows × cols` rectangle anchored at the origin.
    pub fn rectangle(rows: u32, cols: u32) -> Self {
        let cells = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .collect();
        Self { cells }
    }

    pub fn transpose(&self) -> Self {
        Self {
            cells: self.cells.iter().map(|&(r, c)| (c, r)).collect(),
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// `ferrers_board(p)`, named for call sites that read like the math.
pub fn ferrers_board(p: &Partition) -> Board {
    Board::ferrers(p)
}

/// Size of a maximum set of cells with no two in a common row or column.
pub fn max_rook_number(board: &Board) -> usize {
    let mut rows: Vec<u32> = board.cells.iter().map(|&(r, _)| r).collect();
    rows.dedup();
    let mut cols: Vec<u32> = board.cells.iter().map(|&(_, c)| c).collect();
    cols.sort_unstable();
    cols.dedup();

    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); rows.len()];
    for &(r, c) in &board.cells {
        let ri = rows.binary_search(&r).expect("row listed");
        let ci = cols.binary_search(&c).expect("column listed");
        adjacency[ri].push(ci);
    }
    maximum_matching(&adjacency, cols.len())
}

/// Kuhn's augmenting-path matching on a bipartite graph given as left-side
/// adjacency lists.
fn maximum_matching(adjacency: &[Vec<usize>], right_len: usize) -> usize {
    fn augment(
        u: usize,
        adjacency: &[Vec<usize>],
        visited: &mut [bool],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for &v in &adjacency[u] {
            if visited[v] {
                continue;
            }
            visited[v] = true;
            let free = match match_right[v] {
                None => true,
                Some(w) => augment(w, adjacency, visited, match_right),
            };
            if free {
                match_right[v] = Some(u);
                return true;
            }
        }
        false
    }

    let mut match_right = vec![None; right_len];
    let mut size = 0;
    for u in 0..adjacency.len() {
        let mut visited = vec![false; right_len];
        if augment(u, adjacency, &mut visited, &mut match_right) {
            size += 1;
        }
    }
    size
}

/// Rook numbers `R(0, B), R(1, B), …` of a board. Entry 0 is always 1 and the
/// last entry is the last nonzero one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RookProfile {
    counts: Vec<BigCount>,
}

impl RookProfile {
    /// Wraps raw counts, trimming trailing zeros past the first entry.
    pub fn new(mut counts: Vec<BigCount>) -> Self {
        while counts.len() > 1 && counts.last().is_some_and(Zero::is_zero) {
            counts.pop();
        }
        if counts.is_empty() {
            counts.push(BigCount::one());
        }
        Self { counts }
    }

    pub fn counts(&self) -> &[BigCount] {
        &self.counts
    }

    /// `R(r, B)`, zero beyond the profile.
    pub fn count(&self, r: usize) -> BigCount {
        self.counts.get(r).cloned().unwrap_or_default()
    }

    /// Counts as machine integers, `None` if any overflows `u64`.
    pub fn to_u64_vec(&self) -> Option<Vec<u64>> {
        self.counts.iter().map(ToPrimitive::to_u64).collect()
    }

    /// Degree of the rook polynomial.
    pub fn max_rooks(&self) -> usize {
        self.counts.len() - 1
    }
}

impl From<&[u64]> for RookProfile {
    fn from(values: &[u64]) -> Self {
        Self::new(values.iter().map(|&v| BigCount::from(v)).collect())
    }
}

/// Canonical memo key: sorted cells after relabelling rows and columns to
/// `0..` in order of first appearance in the sorted order.
fn canonical(cells: &[Cell]) -> Vec<Cell> {
    let mut rows: Vec<u32> = cells.iter().map(|&(r, _)| r).collect();
    rows.sort_unstable();
    rows.dedup();
    let mut cols: Vec<u32> = cells.iter().map(|&(_, c)| c).collect();
    cols.sort_unstable();
    cols.dedup();
    let mut out: Vec<Cell> = cells
        .iter()
        .map(|&(r, c)| {
            (
                rows.binary_search(&r).unwrap() as u32,
                cols.binary_search(&c).unwrap() as u32,
            )
        })
        .collect();
    out.sort_unstable();
    out
}

fn rook_poly(cells: &[Cell], memo: &mut HashMap<Vec<Cell>, Vec<BigCount>>) -> Vec<BigCount> {
    if cells.is_empty() {
        return vec![BigCount::one()];
    }
    if let Some(hit) = memo.get(cells) {
        return hit.clone();
    }
    // cells are sorted, so the first one is the lexicographically smallest
    let (r0, c0) = cells[0];
    let without = canonical(&cells[1..]);
    let attacked: Vec<Cell> = cells
        .iter()
        .copied()
        .filter(|&(r, c)| r != r0 && c != c0)
        .collect();
    let attacked = canonical(&attacked);

    let mut poly = rook_poly(&without, memo);
    let placed = rook_poly(&attacked, memo);
    if poly.len() < placed.len() + 1 {
        poly.resize(placed.len() + 1, BigCount::zero());
    }
    for (i, v) in placed.into_iter().enumerate() {
        poly[i + 1] += v;
    }
    memo.insert(cells.to_vec(), poly.clone());
    poly
}

/// Full rook profile of a board of at most `max_cells` cells.
pub fn rook_numbers_with_limit(board: &Board, max_cells: usize) -> Result<RookProfile, RookError> {
    if board.len() > max_cells {
        return Err(RookError::BoardTooLarge {
            cells: board.len(),
            limit: max_cells,
        });
    }
    let cells = canonical(&board.cells.iter().copied().collect::<Vec<_>>());
    let mut memo = HashMap::new();
    Ok(RookProfile::new(rook_poly(&cells, &mut memo)))
}

/// Full rook profile under the default cell limit.
pub fn rook_numbers(board: &Board) -> Result<RookProfile, RookError> {
    rook_numbers_with_limit(board, DEFAULT_MAX_BOARD_CELLS)
}

/// Coefficients (in `x`) of the generalized Laguerre polynomial
/// `L_n^{(α)}(x) = Σ_k (−1)^k C(n+α, n−k) x^k / k!`.
pub fn laguerre_coefficients(n: u32, alpha: u32) -> Vec<BigRational> {
    let top = BigInt::from(n + alpha);
    let mut factorial = BigInt::one();
    (0..=n)
        .map(|k| {
            if k > 0 {
                factorial *= BigInt::from(k);
            }
            let magnitude = binomial(top.clone(), BigInt::from(n - k));
            let signed = if k % 2 == 0 { magnitude } else { -magnitude };
            BigRational::new(signed, factorial.clone())
        })
        .collect()
}

/// Rook profile of the `m × n` rectangle (`m ≥ n`) from
/// `f(x) = n! xⁿ L_n^{(m−n)}(−1/x)`.
pub fn rectangular_rook_profile(m: u32, n: u32) -> Result<RookProfile, RookError> {
    if n == 0 || m < n {
        return Err(RookError::InvalidRectangle { m, n });
    }
    let laguerre = laguerre_coefficients(n, m - n);
    let n_factorial: BigInt = (1..=n).map(BigInt::from).product();
    // term k: c_k (−1/x)^k · n! xⁿ = c_k (−1)^k n! x^{n−k}
    let mut counts = vec![BigCount::zero(); n as usize + 1];
    for (k, c) in laguerre.into_iter().enumerate() {
        let signed = if k % 2 == 0 { c } else { -c };
        let value = signed * BigRational::from_integer(n_factorial.clone());
        assert!(
            value.is_integer() && !value.is_negative(),
            "rook numbers are nonnegative integers"
        );
        counts[n as usize - k] = value
            .to_integer()
            .to_biguint()
            .expect("checked nonnegative");
    }
    Ok(RookProfile::new(counts))
}

/// Weakly rises to a peak and weakly falls afterwards.
pub fn is_unimodal(profile: &RookProfile) -> bool {
    let counts = profile.counts();
    let mut falling = false;
    for w in counts.windows(2) {
        if w[1] < w[0] {
            falling = true;
        } else if w[1] > w[0] && falling {
            return false;
        }
    }
    true
}

/// `C(m, r) · C(n, r) · r!`, the number of `r`-rook placements on an `m × n`
/// rectangle.
pub fn rectangle_rook_count(m: u32, n: u32, r: u32) -> BigUint {
    if r > m || r > n {
        return BigUint::zero();
    }
    let r_factorial: BigUint = (1..=r).map(BigUint::from).product();
    binomial(BigUint::from(m), BigUint::from(r)) * binomial(BigUint::from(n), BigUint::from(r)) * r_factorial
}
