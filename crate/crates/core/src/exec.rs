//! Worker-pool plumbing. With the `parallel` feature the hot loops run on
//! rayon; without it everything is sequential. Results never depend on the
//! worker count.

/// Runs `f` on a dedicated pool with the given thread count. `workers = 0`
/// means "use the default pool". Without the `parallel` feature the closure
/// just runs on the current thread.
#[cfg(feature = "parallel")]
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("worker pool")
        .install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn with_workers<T>(workers: usize, f: impl FnOnce() -> T) -> T {
    let _ = workers;
    f()
}

/// Order-preserving flat map over an index range.
#[cfg(feature = "parallel")]
pub(crate) fn flat_map_indexed<T: Send>(
    n: usize,
    f: impl Fn(usize) -> Vec<T> + Sync + Send,
) -> Vec<T> {
    use rayon::prelude::*;
    (0..n)
        .into_par_iter()
        .map(f)
        .collect::<Vec<Vec<T>>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn flat_map_indexed<T>(n: usize, f: impl Fn(usize) -> Vec<T>) -> Vec<T> {
    (0..n).flat_map(f).collect()
}
