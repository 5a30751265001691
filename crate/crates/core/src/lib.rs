//! Exact computations around the max-rook number of Ferrers boards.
//!
//! The max-rook number of a partition's Ferrers board equals the size of its
//! Durfee triangle. Counting partitions of `n` by that statistic gives
//! `R_k(n)`, and `P(n) = Σ_k R_k(n)`. This crate enumerates the statistic,
//! carries the known generating functions and closed forms for small `k`, and
//! checks each of them against independent oracles.
//!
//! Modules:
//! - [`partitions`]: partitions, Durfee statistics, `P(n)`.
//! - [`rook`]: boards, matching, rook numbers, Laguerre profiles.
//! - [`qseries`]: integer polynomials, rational generating functions, `F(n)`.
//! - [`decomposition`]: the `R_k(n)` table and its verification.
//! - [`closedforms`]: closed forms, recurrences, parity, periodicity, growth.
//! - [`oeis`]: b-file parsing and cross-checks.

pub mod closedforms;
pub mod decomposition;
pub mod oeis;
pub mod par;
pub mod partitions;
pub mod qseries;
pub mod report;
pub mod rook;

pub use decomposition::{build_table, DecompositionTable};
pub use par::Execution;
pub use partitions::{BigCount, Partition};
pub use qseries::{IntPolynomial, RationalGF, SeriesPrefix};
pub use report::{Check, Report};
pub use rook::{Board, RookProfile};
