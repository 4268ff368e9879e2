//! Data-parallel helpers with a sequential fallback.
//!
//! The hot loops (triple enumeration, tuple scans, trial batches) run on
//! rayon when the `parallel` feature is enabled (the default). With the
//! feature disabled, or when [`Parallelism::Sequential`] is requested, the
//! same closures run on a plain iterator; results are identical either way.

/// Execution mode for the enumeration-heavy entry points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    /// Rayon work-stealing when the `parallel` feature is on; otherwise this
    /// falls back to the sequential path.
    Parallel,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }
}

#[cfg(feature = "parallel")]
pub(crate) fn map_range_with<T, F>(mode: Parallelism, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    match mode {
        Parallelism::Sequential => (0..n).map(f).collect(),
        Parallelism::Parallel => (0..n).into_par_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range_with<T, F>(_mode: Parallelism, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

pub(crate) fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_range_with(Parallelism::default(), n, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let seq = map_range_with(Parallelism::Sequential, 100, |i| i * i);
        let par = map_range_with(Parallelism::Parallel, 100, |i| i * i);
        assert_eq!(seq, par);
    }
}
