//! Thin indexed-map helpers that switch between rayon and a sequential loop.
//!
//! Everything data-parallel in this crate (simulation replicas, per-irrep
//! estimation, bound sweeps) funnels through [`map_indexed`], so the
//! `parallel` feature flag controls threading in exactly one place. The
//! `_seq` variant is always available; the benchmark suite uses it as the
//! baseline when comparing the two paths.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..count`, in parallel when the `parallel` feature is
/// enabled. Output order is by index either way, so results are
/// deterministic regardless of threading.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..count).into_par_iter().map(f).collect()
}

/// Sequential fallback used when built with `--no-default-features`.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_indexed_seq(count, f)
}

/// Always-sequential indexed map; the benchmark baseline.
pub fn map_indexed_seq<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..count).map(f).collect()
}
