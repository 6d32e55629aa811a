use burnside_core::Scheduler;
use rayon::prelude::*;

/// Runs relator checks on the rayon thread pool. Results keep index order.
#[derive(Debug, Clone, Copy, Default)]
pub struct Parallel;

impl Scheduler for Parallel {
    fn map<T, F>(&self, count: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).into_par_iter().map(job).collect()
    }
}
