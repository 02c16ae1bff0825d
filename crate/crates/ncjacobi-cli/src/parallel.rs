//! Thread fan-out for the heavier sweeps.
//!
//! Work is split into contiguous chunks, one batch per worker; chunk reports
//! merge back in submission order and the final failure list is sorted, so
//! the outcome does not depend on the thread count.

use ncjacobi_core::report::VerificationReport;

/// Run `chunks` jobs (each producing a chunk of the same sweep) across up to
/// `threads` workers and merge the results in order.
pub fn run_chunks<F>(
    skeleton: VerificationReport,
    chunks: Vec<F>,
    threads: usize,
) -> VerificationReport
where
    F: FnOnce() -> VerificationReport + Send,
{
    let mut report = skeleton;
    if threads <= 1 || chunks.len() <= 1 {
        for chunk in chunks {
            report.merge_chunk(chunk());
        }
    } else {
        let mut pending: Vec<Option<F>> = chunks.into_iter().map(Some).collect();
        let results: Vec<VerificationReport> = std::thread::scope(|scope| {
            let mut handles = Vec::new();
            // hand the jobs out round-robin so chunk i goes to worker i % threads
            let mut buckets: Vec<Vec<(usize, F)>> = (0..threads).map(|_| Vec::new()).collect();
            for (i, slot) in pending.iter_mut().enumerate() {
                buckets[i % threads].push((i, slot.take().expect("job taken once")));
            }
            for bucket in buckets {
                handles.push(scope.spawn(move || {
                    bucket
                        .into_iter()
                        .map(|(i, job)| (i, job()))
                        .collect::<Vec<_>>()
                }));
            }
            let mut indexed: Vec<(usize, VerificationReport)> = Vec::new();
            for handle in handles {
                indexed.extend(handle.join().expect("worker panicked"));
            }
            indexed.sort_by_key(|&(i, _)| i);
            indexed.into_iter().map(|(_, r)| r).collect()
        });
        for chunk in results {
            report.merge_chunk(chunk);
        }
    }
    report.sort_failures();
    report
}

/// Split `[0, total)` into at most `parts` contiguous ranges.
pub fn ranges(total: u64, parts: usize) -> Vec<(u64, u64)> {
    let parts = parts.max(1) as u64;
    let step = total.div_ceil(parts).max(1);
    let mut out = Vec::new();
    let mut lo = 0;
    while lo < total {
        let hi = (lo + step).min(total);
        out.push((lo, hi));
        lo = hi;
    }
    out
}
