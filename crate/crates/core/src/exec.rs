//! Sequential or data-parallel evaluation of independent checks.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on
//! the rayon pool; without it every mode falls back to a plain loop.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Exec {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Whether `Parallel` actually runs in parallel in this build.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Applies `f` to every item; output order follows input order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// Keeps the `Some` results of `f` over `range`, in ascending order.
    pub fn filter_map_range<R, F>(self, range: Range<u64>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().filter_map(f).collect()
            }
            _ => range.filter_map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = Exec::Sequential.map(&items, |x| x * x);
        let par = Exec::Parallel.map(&items, |x| x * x);
        assert_eq!(seq, par);

        let pick = |x: u64| (x % 7 == 3).then_some(x);
        assert_eq!(
            Exec::Sequential.filter_map_range(0..5000, pick),
            Exec::Parallel.filter_map_range(0..5000, pick)
        );
    }
}
