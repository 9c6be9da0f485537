//! Sequential / data-parallel execution switch.
//!
//! With the `parallel` feature (on by default) the hot loops fan out over
//! rayon's pool. Without it every path runs sequentially and
//! [`Execution::Parallel`] quietly degrades to [`Execution::Sequential`].

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
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

/// Order-preserving map.
pub fn map<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Order-preserving flat map.
pub fn flat_map<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Vec<U> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().flat_map_iter(f).collect(),
        _ => items.iter().flat_map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree_and_keep_order() {
        let items: Vec<u32> = (0..1000).collect();
        let seq = flat_map(Execution::Sequential, &items, |&x| vec![x, x * 2]);
        let par = flat_map(Execution::Parallel, &items, |&x| vec![x, x * 2]);
        assert_eq!(seq, par);
        assert_eq!(map(Execution::Parallel, &items, |&x| x + 1)[999], 1000);
    }
}
