//! Data-parallel helpers.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] fans work out
//! on the rayon global pool. Without it, both modes run sequentially, so
//! callers can pass either value unconditionally.

/// How batch operations distribute their work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True when work will actually be spread across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Maps `f` over `items`, preserving input order in the output.
pub fn map_ordered<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Returns the smallest index in `0..count` for which `probe` yields true.
///
/// `init` builds per-worker scratch state that `probe` may reuse.
pub fn find_first_index<S, I, P>(count: u64, exec: Execution, init: I, probe: P) -> Option<u64>
where
    I: Fn() -> S + Sync + Send,
    P: Fn(&mut S, u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..count)
            .into_par_iter()
            .map_init(&init, |scratch, idx| (idx, probe(scratch, idx)))
            .find_first(|(_, hit)| *hit)
            .map(|(idx, _)| idx);
    }
    let _ = exec;
    let mut scratch = init();
    (0..count).find(|&idx| probe(&mut scratch, idx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let items: Vec<u32> = (0..1000).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            let out = map_ordered(&items, exec, |x| x * 2);
            assert_eq!(out, items.iter().map(|x| x * 2).collect::<Vec<_>>());
        }
    }

    #[test]
    fn find_first_is_smallest() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let hit = find_first_index(100_000, exec, || (), |_, i| i % 7919 == 7918);
            assert_eq!(hit, Some(7918));
            assert_eq!(find_first_index(10, exec, || (), |_, _| false), None);
        }
    }
}
