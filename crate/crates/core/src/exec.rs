//! Data-parallel evaluation with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] fans work out
//! over rayon's global pool. Without it, both variants run sequentially.
//! Results are always returned in input order, so the two modes are
//! interchangeable.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// `f(0), f(1), ..., f(n - 1)` in order.
    pub fn map_range<R, G>(self, n: usize, f: G) -> Vec<R>
    where
        R: Send,
        G: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    pub fn map<T, R, G>(self, items: &[T], f: G) -> Vec<R>
    where
        T: Sync,
        R: Send,
        G: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }
}
