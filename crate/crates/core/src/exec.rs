//! Execution mode for the exhaustive loops.
//!
//! Every enumeration in the crate runs through [`Exec::fold_range`], which
//! either splits the index range across the rayon pool or walks it in order.
//! Without the `parallel` feature both modes run sequentially.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Map every index of `range` and combine the results with `merge`.
    ///
    /// `merge` must be associative and `identity` its neutral element; the
    /// result is then independent of how the range was split.
    pub fn fold_range<T, I, M, R>(self, range: Range<u64>, identity: I, map: M, merge: R) -> T
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        M: Fn(u64) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => range.fold(identity(), |acc, i| merge(acc, map(i))),
            Exec::Parallel => par_fold(range, identity, map, merge),
        }
    }

    /// Like [`Exec::fold_range`] but the worker folds into an accumulator in
    /// place, which avoids allocating one value per index.
    pub fn fold_with<T, I, F, R>(self, range: Range<u64>, identity: I, step: F, merge: R) -> T
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        F: Fn(&mut T, u64) + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => {
                let mut acc = identity();
                for i in range {
                    step(&mut acc, i);
                }
                acc
            }
            Exec::Parallel => par_fold_with(range, identity, step, merge),
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

#[cfg(feature = "parallel")]
fn par_fold<T, I, M, R>(range: Range<u64>, identity: I, map: M, merge: R) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    M: Fn(u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    use rayon::prelude::*;
    range.into_par_iter().map(map).reduce(&identity, &merge)
}

#[cfg(not(feature = "parallel"))]
fn par_fold<T, I, M, R>(range: Range<u64>, identity: I, map: M, merge: R) -> T
where
    I: Fn() -> T,
    M: Fn(u64) -> T,
    R: Fn(T, T) -> T,
{
    range.fold(identity(), |acc, i| merge(acc, map(i)))
}

#[cfg(feature = "parallel")]
fn par_fold_with<T, I, F, R>(range: Range<u64>, identity: I, step: F, merge: R) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, u64) + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    use rayon::prelude::*;
    range
        .into_par_iter()
        .fold(&identity, |mut acc, i| {
            step(&mut acc, i);
            acc
        })
        .reduce(&identity, &merge)
}

#[cfg(not(feature = "parallel"))]
fn par_fold_with<T, I, F, R>(range: Range<u64>, identity: I, step: F, _merge: R) -> T
where
    I: Fn() -> T,
    F: Fn(&mut T, u64),
{
    let mut acc = identity();
    for i in range {
        step(&mut acc, i);
    }
    acc
}

/// Size the global rayon pool. Later calls are ignored.
pub fn set_threads(n: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}
