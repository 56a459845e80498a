//! Execution strategy for batch workloads.
//!
//! Everything batched in this crate (grid sweeps, instance verification,
//! randomized audits) is a pure map over independent inputs, so the whole
//! parallelism story reduces to one primitive: map a function over a slice
//! and collect the results in input order. With the `parallel` feature
//! (default) the map runs on rayon's work-stealing pool; without it the same
//! code runs sequentially. Output order is the input order either way, so
//! results are byte-identical across both modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Sequential reference path; always available.
pub fn map_collect_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Work-stealing parallel path.
#[cfg(feature = "parallel")]
pub fn map_collect_par<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Maps `f` over `items`, preserving order; parallel when the `parallel`
/// feature is enabled, sequential otherwise.
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_collect_par(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_collect_seq(items, f)
    }
}
