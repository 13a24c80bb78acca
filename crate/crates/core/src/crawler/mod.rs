//! Proactive crawlers: poll the backend for what to track, fetch upstream
//! data, submit it, and persist progress only after acknowledgement.

mod backoff;
pub mod market;
mod rate;
pub mod reddit;
mod state;

use std::time::Duration;

pub use backoff::Backoff;
pub use rate::RateBudget;
pub use state::{StateError, StateFile};

/// Maximum items per submit mutation.
pub const CHUNK_SIZE: usize = 500;

/// One failure inside a cycle. `scope` is the subreddit or ticker, or
/// `"backend"` when the tracked list could not be fetched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleError {
    pub scope: String,
    pub message: String,
}

impl CycleError {
    pub(crate) fn new(scope: impl Into<String>, message: impl ToString) -> Self {
        Self {
            scope: scope.into(),
            message: message.to_string(),
        }
    }
}

/// What the loop should do after a cycle.
pub(crate) fn next_delay(failed: bool, interval: Duration, backoff: &mut Backoff) -> Duration {
    if failed {
        backoff.next_delay()
    } else {
        backoff.reset();
        interval
    }
}
