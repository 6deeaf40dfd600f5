//! Execution strategy for the data-parallel sweeps.
//!
//! Every sweep maps a pure function over a slice and collects the results in
//! input order, so both strategies produce identical output.

/// Environment variable holding the worker-thread count.
pub const THREADS_ENV: &str = "SATAKE_FANS_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// Uses the rayon pool when built with the `parallel` feature and falls
    /// back to sequential execution otherwise.
    #[default]
    Parallel,
}

impl Exec {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            Exec::Parallel => par_map(items, f),
        }
    }

    pub fn is_parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Sizes the global worker pool from `SATAKE_FANS_THREADS` if set. Returns
/// the thread count in effect, or `None` when no pool is configured.
pub fn configure_threads() -> Option<usize> {
    let requested = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    init_pool(requested)
}

#[cfg(feature = "parallel")]
fn init_pool(requested: Option<usize>) -> Option<usize> {
    if let Some(n) = requested {
        // A second initialization fails harmlessly; the first pool stays.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Some(rayon::current_num_threads())
}

#[cfg(not(feature = "parallel"))]
fn init_pool(_requested: Option<usize>) -> Option<usize> {
    None
}
