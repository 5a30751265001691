//! Data-parallel helpers. With the `parallel` feature off, every mode runs
//! sequentially and produces identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How per-item work inside a batch operation is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run work in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Maps `f` over `items`, preserving input order in the output.
pub fn map_ordered<T, U, F>(items: Vec<T>, mode: Execution, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.into_par_iter().map(f).collect(),
        _ => items.into_iter().map(f).collect(),
    }
}
