//! Order-preserving maps over independent jobs.
//!
//! With the `parallel` feature (on by default) [`map`] runs on the rayon
//! pool; without it, it is [`map_sequential`].

/// Applies `f` to every item, returning results in input order.
#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_sequential(items, f)
}

pub fn map_sequential<T, R, F: Fn(&T) -> R>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}

/// True when [`map`] uses more than one thread.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
