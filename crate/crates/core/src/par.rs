//! Data-parallel helpers for the batch loops (expansion over terms, pairing
//! sweeps, determinant tables). With the `parallel` feature these run on the
//! rayon global pool; without it they fall back to plain iterators. Output
//! order always matches input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
#[cfg(feature = "parallel")]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Maps a fallible `f` over `items`, returning the first error in input order.
pub fn try_map<T, U, E, F>(items: &[T], f: F) -> Result<Vec<U>, E>
where
    T: Sync,
    U: Send,
    E: Send,
    F: Fn(&T) -> Result<U, E> + Sync + Send,
{
    map(items, f).into_iter().collect()
}

/// Maps over `items` and folds the results with an associative `combine`.
#[cfg(feature = "parallel")]
pub fn map_reduce<T, U, M, C, I>(items: &[T], identity: I, f: M, combine: C) -> U
where
    T: Sync,
    U: Send,
    I: Fn() -> U + Sync + Send,
    M: Fn(&T) -> U + Sync + Send,
    C: Fn(U, U) -> U + Sync + Send,
{
    items.par_iter().map(f).reduce(identity, combine)
}

#[cfg(not(feature = "parallel"))]
pub fn map_reduce<T, U, M, C, I>(items: &[T], identity: I, f: M, combine: C) -> U
where
    I: Fn() -> U,
    M: Fn(&T) -> U,
    C: Fn(U, U) -> U,
{
    items.iter().map(f).fold(identity(), combine)
}

/// True when the crate was built with rayon support.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
