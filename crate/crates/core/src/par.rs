//! Data-parallel map over read-only snapshots.
//!
//! With the default `parallel` feature the hot sweeps (candidate
//! enumeration, wall scanning) fan out through rayon; without it the
//! same entry points run sequentially. `map_seq` is always sequential
//! and exists so benchmarks can compare both paths in one build.

#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Send + Sync,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    map_seq(items, f)
}

/// Sequential reference path.
pub fn map_seq<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Dispatches between [`map`] and [`map_seq`] at run time; used by the
/// `*_seq` twins of the scanning entry points.
pub fn map_either<T, R, F>(parallel: bool, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Send + Sync,
{
    if parallel {
        map(items, f)
    } else {
        map_seq(items, f)
    }
}

/// Caps the worker count from the `ADESTAB_THREADS` environment
/// variable. A no-op once a global pool exists, and a no-op entirely in
/// sequential builds.
pub fn configure_threads_from_env() {
    #[cfg(feature = "parallel")]
    {
        if let Ok(v) = std::env::var("ADESTAB_THREADS") {
            if let Ok(n) = v.trim().parse::<usize>() {
                if n > 0 {
                    let _ = rayon::ThreadPoolBuilder::new()
                        .num_threads(n)
                        .build_global();
                }
            }
        }
    }
}
