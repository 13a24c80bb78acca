//! Comment crawler.

mod fixture;
mod live;

use std::sync::Arc;
use std::time::Duration;

use async_trait::async_trait;

pub use fixture::FixtureCommentSource;
pub use live::{RedditCredentials, RedditOAuthSource};

use super::{next_delay, Backoff, CycleError, RateBudget, StateError, StateFile, CHUNK_SIZE};
use crate::client::BackendClient;
use crate::clock::Clock;
use crate::store::RawComment;

/// Maximum comments requested per upstream call.
pub const PAGE_SIZE: usize = 100;
pub const DEFAULT_CYCLE_CAP: usize = 1_000;
pub const DEFAULT_POLL_INTERVAL: Duration = Duration::from_secs(300);

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct SourceError(pub String);

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CommentPage {
    pub comments: Vec<RawComment>,
    /// Cursor to resume after this page; `None` keeps the previous one.
    pub next_cursor: Option<String>,
}

/// Upstream comment adapter. Following returned cursors never yields a
/// comment ID twice.
#[async_trait]
pub trait CommentSource: Send + Sync {
    async fn fetch_comments(
        &self,
        subreddit: &str,
        after_cursor: Option<&str>,
        max_items: usize,
    ) -> Result<CommentPage, SourceError>;
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Collected {
    pub comments: Vec<RawComment>,
    pub cursor: Option<String>,
    pub error: Option<SourceError>,
}

/// Pages through `source` from `cursor`, taking a budget grant before each
/// fetch, until the source is exhausted or `cap` items are collected.
pub async fn collect(
    subreddit: &str,
    source: &dyn CommentSource,
    budget: &RateBudget,
    cursor: Option<String>,
    cap: usize,
) -> Collected {
    let mut out = Collected {
        cursor,
        ..Collected::default()
    };
    while out.comments.len() < cap {
        let want = PAGE_SIZE.min(cap - out.comments.len());
        budget.acquire().await;
        match source.fetch_comments(subreddit, out.cursor.as_deref(), want).await {
            Ok(page) => {
                let got = page.comments.len();
                out.comments.extend(page.comments.into_iter().take(want));
                if page.next_cursor.is_some() {
                    out.cursor = page.next_cursor;
                }
                if got < want {
                    break;
                }
            }
            Err(e) => {
                out.error = Some(e);
                break;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CrawlCycleReport {
    pub subreddits_polled: usize,
    pub comments_fetched: usize,
    pub comments_submitted: usize,
    pub errors: Vec<CycleError>,
    /// True when every fetched comment was acknowledged and cursors advanced.
    pub committed: bool,
}

impl CrawlCycleReport {
    pub fn failed(&self) -> bool {
        !self.errors.is_empty()
    }
}

pub struct RedditCrawlerConfig {
    pub poll_interval: Duration,
    pub cycle_cap: usize,
}

impl Default for RedditCrawlerConfig {
    fn default() -> Self {
        Self {
            poll_interval: DEFAULT_POLL_INTERVAL,
            cycle_cap: DEFAULT_CYCLE_CAP,
        }
    }
}

pub struct RedditCrawler {
    backend: Arc<dyn BackendClient>,
    source: Arc<dyn CommentSource>,
    budget: Arc<RateBudget>,
    clock: Arc<dyn Clock>,
    cursors: StateFile<String>,
    config: RedditCrawlerConfig,
    backoff: Backoff,
}

impl RedditCrawler {
    pub fn new(
        backend: Arc<dyn BackendClient>,
        source: Arc<dyn CommentSource>,
        budget: Arc<RateBudget>,
        clock: Arc<dyn Clock>,
        cursors: StateFile<String>,
        config: RedditCrawlerConfig,
    ) -> Self {
        Self {
            backend,
            source,
            budget,
            clock,
            cursors,
            config,
            backoff: Backoff::default(),
        }
    }

    pub fn cursors(&self) -> &StateFile<String> {
        &self.cursors
    }

    /// One poll → collect → submit pass. Cursors are committed only when the
    /// backend acknowledged every chunk of the cycle's batch.
    pub async fn run_cycle(&mut self) -> Result<CrawlCycleReport, StateError> {
        let mut report = CrawlCycleReport::default();
        let subreddits = match self.backend.tracked_subreddits().await {
            Ok(list) => list,
            Err(e) => {
                tracing::warn!(error = %e, "cannot fetch tracked subreddits");
                report.errors.push(CycleError::new("backend", e));
                return Ok(report);
            }
        };

        let mut batch = Vec::new();
        let mut advanced = Vec::new();
        for sub in &subreddits {
            report.subreddits_polled += 1;
            let start = self.cursors.get(sub).cloned();
            let got = collect(sub, &*self.source, &self.budget, start.clone(), self.config.cycle_cap).await;
            if let Some(e) = &got.error {
                tracing::warn!(subreddit = %sub, error = %e, "source failure");
                report.errors.push(CycleError::new(sub.clone(), e));
            }
            report.comments_fetched += got.comments.len();
            batch.extend(got.comments);
            if let Some(c) = got.cursor.filter(|c| Some(c) != start.as_ref()) {
                advanced.push((sub.clone(), c));
            }
        }

        let mut acknowledged = true;
        for chunk in batch.chunks(CHUNK_SIZE) {
            match self.backend.submit_comments(chunk).await {
                Ok(ack) => {
                    report.comments_submitted += ack.accepted as usize;
                    for r in ack.rejections {
                        tracing::warn!(index = r.index, reason = %r.reason, "comment rejected");
                    }
                }
                Err(e) => {
                    tracing::warn!(error = %e, "submit failed; cursors not advanced");
                    report.errors.push(CycleError::new("backend", e));
                    acknowledged = false;
                    break;
                }
            }
        }
        if acknowledged {
            self.cursors.commit(advanced)?;
            report.committed = true;
        }
        tracing::info!(
            polled = report.subreddits_polled,
            fetched = report.comments_fetched,
            submitted = report.comments_submitted,
            errors = report.errors.len(),
            "reddit cycle done"
        );
        Ok(report)
    }

    /// Runs `cycles` cycles (forever when `None`), sleeping the poll interval
    /// between them, or the backoff delay after a failed cycle. Reports are
    /// kept only for bounded runs.
    pub async fn run(&mut self, cycles: Option<u64>) -> Result<Vec<CrawlCycleReport>, StateError> {
        let mut reports = Vec::new();
        let mut done = 0u64;
        loop {
            let report = self.run_cycle().await?;
            let delay = next_delay(report.failed(), self.config.poll_interval, &mut self.backoff);
            if cycles.is_some() {
                reports.push(report);
            }
            done += 1;
            if cycles.is_some_and(|n| done >= n) {
                return Ok(reports);
            }
            self.clock.sleep(delay).await;
        }
    }
}
