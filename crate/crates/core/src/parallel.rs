//! Thread-count plumbing. Every parallel reduction in the crate collects into
//! index order before summing, so results do not depend on the pool size.

use rayon::ThreadPoolBuilder;

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "LATTICE_AREA_THREADS";

/// Resolves the worker count: explicit value, then [`THREADS_ENV`], then the
/// number of available cores.
pub fn resolve_threads(explicit: Option<usize>) -> usize {
    explicit
        .filter(|&t| t > 0)
        .or_else(|| {
            std::env::var(THREADS_ENV)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .filter(|&t: &usize| t > 0)
        })
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `f` inside a dedicated rayon pool of `threads` workers.
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    match ThreadPoolBuilder::new().num_threads(threads.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
