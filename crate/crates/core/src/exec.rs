//! Execution-mode plumbing: scans distribute independent blocks of work
//! either on the current thread or on a thread pool, with results that are
//! identical and schedule-independent in both modes.

use serde::{Deserialize, Serialize};

/// How a scan distributes its blocks of work.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExecMode {
    /// Blocks run in index order on the caller's thread.
    Sequential,
    /// Blocks run on the global thread pool. Requires the `parallel`
    /// feature; without it this silently behaves like `Sequential`.
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            ExecMode::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            ExecMode::Sequential
        }
    }
}

/// Applies `f` to every block index in `0..blocks` and returns the results
/// in index order. Under `Parallel` the calls may run concurrently, so `f`
/// must produce a result that does not depend on scheduling; the deterministic
/// merge of the returned vector is the caller's job.
pub fn map_blocks<T: Send>(
    mode: ExecMode,
    blocks: usize,
    f: impl Fn(usize) -> T + Sync + Send,
) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        if mode == ExecMode::Parallel {
            use rayon::prelude::*;
            return (0..blocks).into_par_iter().map(f).collect();
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = mode;
    (0..blocks).map(f).collect()
}
