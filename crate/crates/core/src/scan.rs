//! Ascending scan over candidate radii, optionally evaluating a batch of
//! candidates on worker threads. The reported candidate is always the
//! smallest successful one.

use std::thread;

use crate::error::Result;
use crate::metric::Radius;
use crate::verify::Partition;

/// Outcome of a minimum-radius search.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiusSearch {
    pub radius: Radius,
    pub partition: Partition,
    /// Candidates evaluated before (and including) the reported one. With
    /// several threads this counts whole batches.
    pub candidates_scanned: usize,
    pub candidates_total: usize,
}

pub(crate) fn first_success<T, F>(
    candidates: &[Radius],
    threads: usize,
    eval: F,
) -> Result<Option<(usize, T, usize)>>
where
    T: Send,
    F: Fn(Radius) -> Result<Option<T>> + Sync,
{
    let threads = threads.max(1);
    let mut scanned = 0;
    for (batch_index, batch) in candidates.chunks(threads).enumerate() {
        let base = batch_index * threads;
        let results: Vec<Result<Option<T>>> = if batch.len() == 1 {
            vec![eval(batch[0])]
        } else {
            thread::scope(|scope| {
                let handles: Vec<_> = batch
                    .iter()
                    .map(|&r| {
                        let eval = &eval;
                        scope.spawn(move || eval(r))
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("radius evaluation panicked"))
                    .collect()
            })
        };
        scanned += batch.len();
        for (offset, result) in results.into_iter().enumerate() {
            if let Some(value) = result? {
                return Ok(Some((base + offset, value, scanned)));
            }
        }
    }
    Ok(None)
}
