//! Data-parallel helpers.
//!
//! With the `parallel` feature (on by default) the batch loops of this crate
//! run on the rayon global pool. Without it, or when a caller asks for
//! [`Execution::Sequential`], the same closures run on the current thread in
//! index order. Results are always returned in index order, so output never
//! depends on scheduling.

/// How a batch loop is executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// `Parallel` when the crate was built with rayon, `Sequential` otherwise.
    pub fn available() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Evaluates `f(0), f(1), …, f(n - 1)` and collects the results in order.
pub fn map_range<T, F>(n: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Maps over a slice, preserving order.
pub fn map_slice<S, T, F>(items: &[S], exec: Execution, f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    map_range(items.len(), exec, |i| f(&items[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree_and_keep_order() {
        let seq = map_range(1000, Execution::Sequential, |i| (i * i) as u64);
        let par = map_range(1000, Execution::Parallel, |i| (i * i) as u64);
        assert_eq!(seq, par);
        assert_eq!(seq[31], 961);
    }
}
