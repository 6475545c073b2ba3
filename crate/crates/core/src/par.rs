//! Data-parallel block execution with a sequential fallback.
//!
//! Work is split into numbered blocks; each block is a self-contained unit
//! (its own RNG stream, its own partial tally) and results are merged with
//! an associative, commutative operation. That makes the outcome identical
//! across thread counts and across the two execution modes, which the test
//! suite asserts.
//!
//! With the `parallel` feature disabled the crate builds without rayon and
//! `Parallel` degrades to the sequential path.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

/// Cap the global worker pool. A second call (or one after the pool is
/// already in use) reports an error string.
#[cfg(feature = "parallel")]
pub fn configure_threads(threads: usize) -> std::result::Result<(), String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_threads: usize) -> std::result::Result<(), String> {
    Ok(())
}

impl Default for ExecMode {
    fn default() -> Self {
        ExecMode::Parallel
    }
}

/// Map every block index through `work` and merge the results.
/// `merge` must be associative and commutative over the block outputs.
pub fn run_blocks<T, W, M>(blocks: u64, mode: ExecMode, work: W, merge: M) -> Option<T>
where
    T: Send,
    W: Fn(u64) -> T + Sync,
    M: Fn(T, T) -> T + Send + Sync,
{
    if blocks == 0 {
        return None;
    }
    match mode {
        ExecMode::Sequential => run_sequential(blocks, &work, &merge),
        ExecMode::Parallel => run_parallel(blocks, &work, &merge),
    }
}

fn run_sequential<T, W, M>(blocks: u64, work: &W, merge: &M) -> Option<T>
where
    W: Fn(u64) -> T,
    M: Fn(T, T) -> T,
{
    let mut acc: Option<T> = None;
    for b in 0..blocks {
        let out = work(b);
        acc = Some(match acc {
            Some(a) => merge(a, out),
            None => out,
        });
    }
    acc
}

#[cfg(feature = "parallel")]
fn run_parallel<T, W, M>(blocks: u64, work: &W, merge: &M) -> Option<T>
where
    T: Send,
    W: Fn(u64) -> T + Sync,
    M: Fn(T, T) -> T + Send + Sync,
{
    use rayon::prelude::*;
    (0..blocks)
        .into_par_iter()
        .map(work)
        .reduce_with(|a, b| merge(a, b))
}

#[cfg(not(feature = "parallel"))]
fn run_parallel<T, W, M>(blocks: u64, work: &W, merge: &M) -> Option<T>
where
    W: Fn(u64) -> T,
    M: Fn(T, T) -> T,
{
    run_sequential(blocks, work, merge)
}

/// Partition `items` indices into chunks and process them in blocks.
pub fn run_chunks<I, T, W, M>(
    items: &[I],
    chunk: usize,
    mode: ExecMode,
    work: W,
    merge: M,
) -> Option<T>
where
    I: Sync,
    T: Send,
    W: Fn(&[I]) -> T + Sync,
    M: Fn(T, T) -> T + Send + Sync,
{
    if items.is_empty() {
        return None;
    }
    let chunk = chunk.max(1);
    let blocks = items.len().div_ceil(chunk) as u64;
    run_blocks(blocks, mode, |b| {
        let start = b as usize * chunk;
        let end = (start + chunk).min(items.len());
        work(&items[start..end])
    }, merge)
}
