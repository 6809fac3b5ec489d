//! Execution strategy for the data-parallel loops (sample suites, pattern
//! sweeps, oracle shards).
//!
//! With the `parallel` feature the work is spread over rayon's pool; without
//! it every strategy runs sequentially. Results never depend on the strategy.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// The strategy actually used: `Parallel` degrades to `Sequential` when
    /// the crate is built without the `parallel` feature.
    pub fn effective(self) -> Execution {
        if cfg!(feature = "parallel") {
            self
        } else {
            Execution::Sequential
        }
    }
}

/// Number of indices in `0..count` for which `pred` holds.
pub fn count_where<F>(exec: Execution, count: u64, pred: F) -> u64
where
    F: Fn(u64) -> bool + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..count).into_par_iter().filter(|&i| pred(i)).count() as u64,
        _ => (0..count).filter(|&i| pred(i)).count() as u64,
    }
}

/// Applies `f` to every index and collects the results in index order.
pub fn map_indexed<T, F>(exec: Execution, count: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..count).into_par_iter().map(f).collect(),
        _ => (0..count).map(f).collect(),
    }
}

/// The first item (in slice order) for which `f` returns `Some`.
pub fn find_map_first<I, T, F>(exec: Execution, items: &[I], f: F) -> Option<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> Option<T> + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().find_map_first(f),
        _ => items.iter().find_map(f),
    }
}

/// Runs `body` with rayon limited to `threads` workers (0 keeps the default).
pub fn with_threads<T, F>(threads: usize, body: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    #[cfg(feature = "parallel")]
    if threads > 0 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            return pool.install(body);
        }
    }
    let _ = threads;
    body()
}
