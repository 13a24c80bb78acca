use std::collections::VecDeque;
use std::sync::Arc;
use std::time::Duration;

use parking_lot::Mutex;

use crate::clock::Clock;

/// Upstream request budget: at most `capacity` grants in any sliding window.
///
/// Keeps the grant times of the last `capacity` requests; a new grant is
/// allowed once the oldest of them has left the window. Safe to share across
/// tasks.
pub struct RateBudget {
    capacity: usize,
    window: Duration,
    clock: Arc<dyn Clock>,
    grants: Mutex<VecDeque<Duration>>,
}

impl RateBudget {
    pub const CAPACITY: usize = 60;
    pub const WINDOW: Duration = Duration::from_secs(60);

    /// 60 requests per 60 seconds.
    pub fn new(clock: Arc<dyn Clock>) -> Self {
        Self::with_limits(clock, Self::CAPACITY, Self::WINDOW)
    }

    pub fn with_limits(clock: Arc<dyn Clock>, capacity: usize, window: Duration) -> Self {
        assert!(capacity > 0, "capacity must be positive");
        Self {
            capacity,
            window,
            clock,
            grants: Mutex::new(VecDeque::with_capacity(capacity)),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Grants still available right now.
    pub fn available(&self) -> usize {
        let mut grants = self.grants.lock();
        self.expire(&mut grants, self.clock.now());
        self.capacity - grants.len()
    }

    /// Grant immediately or `Err(wait)` with the time until one frees up.
    pub fn try_acquire(&self) -> Result<(), Duration> {
        let now = self.clock.now();
        let mut grants = self.grants.lock();
        self.expire(&mut grants, now);
        if grants.len() < self.capacity {
            grants.push_back(now);
            return Ok(());
        }
        let oldest = *grants.front().expect("full log is non-empty");
        Err(oldest + self.window - now)
    }

    /// Waits (on the injected clock) until a grant is available, then takes it.
    pub async fn acquire(&self) {
        loop {
            match self.try_acquire() {
                Ok(()) => return,
                Err(wait) => self.clock.sleep(wait).await,
            }
        }
    }

    fn expire(&self, grants: &mut VecDeque<Duration>, now: Duration) {
        while grants.front().is_some_and(|&t| t + self.window <= now) {
            grants.pop_front();
        }
    }
}
