#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How data-parallel loops are executed.
///
/// `Parallel` uses the rayon global pool when the `parallel` feature is
/// enabled and silently degrades to `Sequential` otherwise. Every helper
/// returns results in the same order as the sequential loop, so output never
/// depends on the execution mode or the thread count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Number of `x` in `lo..=hi` with `pred(x)`.
    pub fn count_range<F>(self, lo: u64, hi: u64, pred: F) -> u64
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        if lo > hi {
            return 0;
        }
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (lo..=hi).into_par_iter().filter(|&x| pred(x)).count() as u64;
        }
        (lo..=hi).filter(|&x| pred(x)).count() as u64
    }

    /// All `x` in `lo..=hi` with `pred(x)`, ascending.
    pub fn filter_range<F>(self, lo: u64, hi: u64, pred: F) -> Vec<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        if lo > hi {
            return Vec::new();
        }
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (lo..=hi).into_par_iter().filter(|&x| pred(x)).collect();
        }
        (lo..=hi).filter(|&x| pred(x)).collect()
    }

    /// `f(x)` for every `x` in `lo..=hi`, in order.
    pub fn map_range<R, F>(self, lo: u64, hi: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        if lo > hi {
            return Vec::new();
        }
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (lo..=hi).into_par_iter().map(f).collect();
        }
        (lo..=hi).map(f).collect()
    }

    /// `f(item)` for every item, in order.
    pub fn map_slice<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}
