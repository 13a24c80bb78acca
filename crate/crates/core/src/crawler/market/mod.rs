//! Daily OHLCV crawler.

mod fixture;
mod live;

use std::sync::Arc;
use std::time::Duration;

use async_trait::async_trait;
use chrono::{DateTime, Days, NaiveDate, NaiveTime};

pub use fixture::FixtureMarketProvider;
pub use live::YahooChartProvider;

use super::{next_delay, Backoff, CycleError, RateBudget, StateError, StateFile, CHUNK_SIZE};
use crate::client::BackendClient;
use crate::clock::Clock;
use crate::store::StockBar;

pub const DEFAULT_POLL_INTERVAL: Duration = Duration::from_secs(3_600);

/// First day requested for a ticker with no watermark.
pub fn default_history_start() -> NaiveDate {
    NaiveDate::from_ymd_opt(2000, 1, 1).expect("valid date")
}

/// Unix seconds of 00:00:00 UTC on `day`.
pub fn day_timestamp(day: NaiveDate) -> i64 {
    day.and_time(NaiveTime::MIN).and_utc().timestamp()
}

/// UTC calendar day containing `timestamp`.
pub fn day_of(timestamp: i64) -> Option<NaiveDate> {
    DateTime::from_timestamp(timestamp, 0).map(|t| t.date_naive())
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{message}")]
pub struct ProviderError {
    pub message: String,
    /// Bars obtained before the failure; submitted, but the watermark stays.
    pub partial: Vec<StockBar>,
}

impl ProviderError {
    pub fn new(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            partial: Vec::new(),
        }
    }
}

/// Daily bars in `[from, to]` (both inclusive), ascending, one per day,
/// stamped at 00:00 UTC.
#[async_trait]
pub trait MarketDataProvider: Send + Sync {
    async fn fetch_daily_bars(
        &self,
        ticker: &str,
        from: NaiveDate,
        to: NaiveDate,
    ) -> Result<Vec<StockBar>, ProviderError>;
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MarketCycleReport {
    pub tickers_polled: usize,
    pub bars_fetched: usize,
    pub bars_submitted: usize,
    pub errors: Vec<CycleError>,
}

impl MarketCycleReport {
    pub fn failed(&self) -> bool {
        !self.errors.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TickerOutcome {
    pub bars: usize,
    pub accepted: usize,
    pub watermark: Option<NaiveDate>,
    pub error: Option<String>,
}

pub struct MarketCrawlerConfig {
    pub poll_interval: Duration,
    pub history_start: NaiveDate,
}

impl Default for MarketCrawlerConfig {
    fn default() -> Self {
        Self {
            poll_interval: DEFAULT_POLL_INTERVAL,
            history_start: default_history_start(),
        }
    }
}

pub struct MarketCrawler {
    backend: Arc<dyn BackendClient>,
    provider: Arc<dyn MarketDataProvider>,
    budget: Arc<RateBudget>,
    clock: Arc<dyn Clock>,
    watermarks: StateFile<NaiveDate>,
    config: MarketCrawlerConfig,
    backoff: Backoff,
}

impl MarketCrawler {
    pub fn new(
        backend: Arc<dyn BackendClient>,
        provider: Arc<dyn MarketDataProvider>,
        budget: Arc<RateBudget>,
        clock: Arc<dyn Clock>,
        watermarks: StateFile<NaiveDate>,
        config: MarketCrawlerConfig,
    ) -> Self {
        Self {
            backend,
            provider,
            budget,
            clock,
            watermarks,
            config,
            backoff: Backoff::default(),
        }
    }

    pub fn watermarks(&self) -> &StateFile<NaiveDate> {
        &self.watermarks
    }

    fn today(&self) -> NaiveDate {
        day_of(self.clock.now_secs()).expect("clock is within chrono range")
    }

    /// Fetches bars after the ticker's watermark up to today and submits them.
    /// The watermark moves to the last bar's day once every chunk is
    /// acknowledged and the provider reported no failure.
    pub async fn fetch_and_submit(&mut self, ticker: &str) -> Result<TickerOutcome, StateError> {
        let mut outcome = TickerOutcome {
            watermark: self.watermarks.get(ticker).copied(),
            ..TickerOutcome::default()
        };
        let from = match outcome.watermark {
            Some(day) => day.checked_add_days(Days::new(1)).unwrap_or(day),
            None => self.config.history_start,
        };
        let to = self.today();
        if from > to {
            return Ok(outcome);
        }
        self.budget.acquire().await;
        let (bars, provider_error) = match self.provider.fetch_daily_bars(ticker, from, to).await {
            Ok(bars) => (bars, None),
            Err(e) => (e.partial, Some(e.message)),
        };
        outcome.bars = bars.len();
        let mut acknowledged = true;
        for chunk in bars.chunks(CHUNK_SIZE) {
            match self.backend.submit_stock_bars(chunk).await {
                Ok(ack) => {
                    outcome.accepted += ack.accepted as usize;
                    for r in ack.rejections {
                        tracing::warn!(%ticker, index = r.index, reason = %r.reason, "bar rejected");
                    }
                }
                Err(e) => {
                    acknowledged = false;
                    outcome.error = Some(e.to_string());
                    break;
                }
            }
        }
        if provider_error.is_some() {
            outcome.error = provider_error;
        }
        let last_day = bars.iter().map(|b| b.timestamp).max().and_then(day_of);
        if acknowledged && outcome.error.is_none() {
            if let Some(day) = last_day {
                self.watermarks.commit([(ticker.to_owned(), day)])?;
                outcome.watermark = Some(day);
            }
        }
        Ok(outcome)
    }

    pub async fn run_cycle(&mut self) -> Result<MarketCycleReport, StateError> {
        let mut report = MarketCycleReport::default();
        let tickers = match self.backend.tracked_tickers().await {
            Ok(list) => list,
            Err(e) => {
                tracing::warn!(error = %e, "cannot fetch tracked tickers");
                report.errors.push(CycleError::new("backend", e));
                return Ok(report);
            }
        };
        for ticker in &tickers {
            report.tickers_polled += 1;
            let out = self.fetch_and_submit(ticker).await?;
            report.bars_fetched += out.bars;
            report.bars_submitted += out.accepted;
            if let Some(e) = out.error {
                tracing::warn!(%ticker, error = %e, "ticker failed");
                report.errors.push(CycleError::new(ticker.clone(), e));
            }
        }
        tracing::info!(
            polled = report.tickers_polled,
            fetched = report.bars_fetched,
            submitted = report.bars_submitted,
            errors = report.errors.len(),
            "market cycle done"
        );
        Ok(report)
    }

    pub async fn run(&mut self, cycles: Option<u64>) -> Result<Vec<MarketCycleReport>, StateError> {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn day_stamps_are_midnight_utc() {
        let d = NaiveDate::from_ymd_opt(2022, 4, 15).unwrap();
        assert_eq!(day_timestamp(d), 1_649_980_800);
        assert_eq!(day_of(1_649_980_800 + 86_399), Some(d));
    }
}
