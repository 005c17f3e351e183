//! Data-parallel helpers with a sequential fallback when the `parallel`
//! feature is off. Results never depend on the schedule: sums are exact and
//! canonical, and collected vectors keep input order.

use crate::poly::Polynomial;

/// How a batch of independent summands or cases is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses the rayon pool; identical to `Sequential` without the `parallel` feature.
    #[default]
    Parallel,
}

pub fn sum_map<T, F>(items: &[T], exec: Execution, f: F) -> Polynomial
where
    T: Sync,
    F: Fn(&T) -> Polynomial + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items
                .par_iter()
                .map(f)
                .reduce(Polynomial::zero, |a, b| a + b)
        }
        _ => items.iter().map(f).sum(),
    }
}

pub fn map_collect<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}
