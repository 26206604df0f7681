//! Execution strategy for the data-parallel loops (subset enumeration and
//! batch sweeps).
//!
//! With the `parallel` feature the work is spread over the rayon pool;
//! without it, [`Execution::Parallel`] quietly runs sequentially. Results
//! never depend on the choice.

use std::ops::Range;

/// Environment variable overriding the exhaustive-checker size guard.
pub const MAX_EXHAUSTIVE_ENV: &str = "ROBUSTNET_MAX_EXHAUSTIVE_N";

/// Default node-count bound for exhaustive checkers.
pub const DEFAULT_MAX_EXHAUSTIVE_N: usize = 20;

/// Absolute ceiling on the guard; subset tables hold `2^n` entries.
pub const HARD_MAX_EXHAUSTIVE_N: usize = 28;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Options shared by the exhaustive checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub exec: Execution,
    pub max_n: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            exec: Execution::default(),
            max_n: exhaustive_limit(),
        }
    }
}

impl CheckOptions {
    pub fn sequential() -> Self {
        CheckOptions {
            exec: Execution::Sequential,
            ..Self::default()
        }
    }
}

/// Size guard: `ROBUSTNET_MAX_EXHAUSTIVE_N` if set and parseable, else the
/// default, never above [`HARD_MAX_EXHAUSTIVE_N`].
pub fn exhaustive_limit() -> usize {
    std::env::var(MAX_EXHAUSTIVE_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_MAX_EXHAUSTIVE_N)
        .min(HARD_MAX_EXHAUSTIVE_N)
}

pub(crate) fn map_range<R, F>(exec: Execution, range: Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

pub(crate) fn map_slice<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
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

/// Reduces `f` over `range` with an associative, commutative `combine`.
pub(crate) fn reduce_range<R, F, C>(exec: Execution, range: Range<u64>, identity: R, f: F, combine: C) -> R
where
    R: Send + Sync + Clone,
    F: Fn(u64) -> R + Sync + Send,
    C: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range
            .into_par_iter()
            .map(f)
            .reduce(|| identity.clone(), &combine);
    }
    let _ = exec;
    range.map(f).fold(identity, combine)
}

/// Subset-sum style pass: after the call, `table[mask]` is the `combine`
/// fold of the original entries over all submasks of `mask`.
pub(crate) fn fold_submasks<T, C>(exec: Execution, table: &mut [T], bits: usize, combine: C)
where
    T: Copy + Send + Sync,
    C: Fn(T, T) -> T + Sync + Send,
{
    debug_assert_eq!(table.len(), 1usize << bits);
    for bit in 0..bits {
        let half = 1usize << bit;
        let step = |chunk: &mut [T]| {
            let (low, high) = chunk.split_at_mut(half);
            for (h, &l) in high.iter_mut().zip(low.iter()) {
                *h = combine(*h, l);
            }
        };
        #[cfg(feature = "parallel")]
        if exec.is_parallel() {
            use rayon::prelude::*;
            table.par_chunks_mut(2 * half).for_each(step);
            continue;
        }
        table.chunks_mut(2 * half).for_each(step);
    }
    let _ = exec;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submask_fold_matches_brute_force() {
        let bits = 6;
        let base: Vec<u32> = (0..1u32 << bits).map(|m| (m * 37 + 11) % 50).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            let mut table = base.clone();
            fold_submasks(exec, &mut table, bits, u32::min);
            for (mask, &got) in table.iter().enumerate() {
                let expected = (0..1usize << bits)
                    .filter(|s| s & !mask == 0)
                    .map(|s| base[s])
                    .min()
                    .unwrap();
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn reduce_is_partition_independent() {
        let seq = reduce_range(Execution::Sequential, 0..10_000, 0u64, |x| x * x % 97, |a, b| a + b);
        let par = reduce_range(Execution::Parallel, 0..10_000, 0u64, |x| x * x % 97, |a, b| a + b);
        assert_eq!(seq, par);
    }
}
