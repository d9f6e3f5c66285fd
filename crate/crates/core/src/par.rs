//! Data-parallel execution helpers.
//!
//! Hot loops go through these wrappers. With the `parallel` feature (the
//! default) they run on rayon; without it they fall back to plain sequential
//! iterators. Output order always matches input order, so results are
//! deterministic in both modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
#[cfg(feature = "parallel")]
use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Runs `f` with the rayon code paths disabled, restoring them afterwards.
///
/// This exists so the benchmark suite can compare the parallel and
/// sequential paths within a single compiled build. It flips a process-wide
/// flag and is not meant to be nested or raced from several threads.
pub fn run_sequential<R>(f: impl FnOnce() -> R) -> R {
    #[cfg(feature = "parallel")]
    {
        struct Reset;
        impl Drop for Reset {
            fn drop(&mut self) {
                FORCE_SEQUENTIAL.store(false, Ordering::SeqCst);
            }
        }
        FORCE_SEQUENTIAL.store(true, Ordering::SeqCst);
        let _reset = Reset;
        f()
    }
    #[cfg(not(feature = "parallel"))]
    f()
}

#[cfg(feature = "parallel")]
#[inline]
fn parallel_enabled() -> bool {
    !FORCE_SEQUENTIAL.load(Ordering::Relaxed)
}

/// Maps `f` over a slice, preserving order.
pub fn map_slice<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        return items.par_iter().map(&f).collect();
    }
    items.iter().map(f).collect()
}

/// Maps `f` over `0..n`, preserving index order.
pub fn map_range<U: Send>(n: usize, f: impl Fn(usize) -> U + Sync) -> Vec<U> {
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        return (0..n).into_par_iter().map(&f).collect();
    }
    (0..n).map(f).collect()
}

/// Flat-maps `f` over `0..n`, concatenating in index order.
pub fn flat_map_range<U: Send>(n: usize, f: impl Fn(usize) -> Vec<U> + Sync) -> Vec<U> {
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        return (0..n).into_par_iter().flat_map_iter(&f).collect();
    }
    (0..n).flat_map(f).collect()
}

/// True if `f` holds for some index in `0..n`.
pub fn any_range(n: usize, f: impl Fn(usize) -> bool + Sync) -> bool {
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        return (0..n).into_par_iter().any(&f);
    }
    (0..n).any(f)
}

/// True if `f` holds for every index in `0..n`.
pub fn all_range(n: usize, f: impl Fn(usize) -> bool + Sync) -> bool {
    !any_range(n, |i| !f(i))
}

/// First index in `0..n` satisfying `f`, scanning in order.
pub fn find_first(n: usize, f: impl Fn(usize) -> bool + Sync) -> Option<usize> {
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        return (0..n).into_par_iter().find_first(|&i| f(i));
    }
    (0..n).find(|&i| f(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let squares = map_range(100, |i| i * i);
        assert_eq!(squares, (0..100).map(|i| i * i).collect::<Vec<_>>());
        let seq = run_sequential(|| map_range(100, |i| i * i));
        assert_eq!(squares, seq);
    }

    #[test]
    fn find_first_matches_sequential_scan() {
        assert_eq!(find_first(1000, |i| i > 17 && i % 13 == 0), Some(26));
        assert_eq!(find_first(10, |_| false), None);
    }
}
