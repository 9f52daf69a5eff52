//! Execution backends for data-parallel loops.

/// How independent work items are scheduled.
///
/// Every fan-out in the crate splits its work into a fixed list of items
/// (samples chunks, optimizer starts, quadrature rows) and reduces the
/// results in item order, so both backends return bit-identical values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Sequential,
    /// Runs on the global rayon pool. Falls back to sequential execution
    /// when the crate is built without the `parallel` feature.
    Parallel,
}

impl Default for Backend {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Backend::Parallel
        } else {
            Backend::Sequential
        }
    }
}

impl Backend {
    /// `(0..n).map(f)` collected in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Backend::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }
}

/// Splits `total` items into `parts` contiguous chunks whose sizes differ by
/// at most one; the first `total % parts` chunks get the extra item.
pub fn chunk_sizes(total: usize, parts: usize) -> Vec<usize> {
    let parts = parts.max(1);
    let base = total / parts;
    let extra = total % parts;
    (0..parts).map(|i| base + usize::from(i < extra)).collect()
}
