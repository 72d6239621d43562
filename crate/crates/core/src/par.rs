//! Execution mode for the data-parallel loops.
//!
//! With the `parallel` feature (default) [`Parallelism::Parallel`] runs on the
//! rayon global pool. Without it every mode runs sequentially.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// Maps `f` over `items` and collects in order.
pub(crate) fn map_collect<T, R, F>(par: Parallelism, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = par;
    items.iter().map(f).collect()
}

/// Sums `f` over `items` with an associative, commutative combine.
pub(crate) fn map_reduce<T, R, F, C>(
    par: Parallelism,
    items: &[T],
    identity: R,
    f: F,
    combine: C,
) -> R
where
    T: Sync,
    R: Send + Sync + Clone,
    F: Fn(&T) -> R + Sync + Send,
    C: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        use rayon::prelude::*;
        return items
            .par_iter()
            .map(f)
            .reduce(|| identity.clone(), &combine);
    }
    let _ = par;
    items.iter().map(f).fold(identity, combine)
}
