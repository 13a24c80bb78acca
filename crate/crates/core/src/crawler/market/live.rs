use std::time::Duration;

use async_trait::async_trait;
use chrono::{Days, NaiveDate};
use serde::Deserialize;

use super::{day_of, day_timestamp, MarketDataProvider, ProviderError};
use crate::store::StockBar;

const CHART_BASE: &str = "https://query1.finance.yahoo.com/v8/finance/chart";

/// Yahoo Finance v8 chart endpoint, daily interval. Days with a null in any
/// OHLC field are skipped.
pub struct YahooChartProvider {
    http: reqwest::Client,
    base: String,
}

impl Default for YahooChartProvider {
    fn default() -> Self {
        Self::new(CHART_BASE)
    }
}

#[derive(Deserialize)]
struct Chart {
    chart: ChartBody,
}

#[derive(Deserialize)]
struct ChartBody {
    result: Option<Vec<ChartResult>>,
    error: Option<serde_json::Value>,
}

#[derive(Deserialize)]
struct ChartResult {
    #[serde(default)]
    timestamp: Vec<i64>,
    indicators: Indicators,
}

#[derive(Deserialize)]
struct Indicators {
    quote: Vec<Quote>,
}

#[derive(Deserialize)]
struct Quote {
    open: Vec<Option<f64>>,
    high: Vec<Option<f64>>,
    low: Vec<Option<f64>>,
    close: Vec<Option<f64>>,
    volume: Vec<Option<u64>>,
}

pub(crate) fn parse_chart(ticker: &str, body: &[u8]) -> Result<Vec<StockBar>, ProviderError> {
    let chart: Chart = serde_json::from_slice(body)
        .map_err(|e| ProviderError::new(format!("bad chart response for {ticker}: {e}")))?;
    if let Some(err) = chart.chart.error.filter(|e| !e.is_null()) {
        return Err(ProviderError::new(format!("chart error for {ticker}: {err}")));
    }
    let Some(result) = chart.chart.result.and_then(|r| r.into_iter().next()) else {
        return Ok(Vec::new());
    };
    let Some(q) = result.indicators.quote.into_iter().next() else {
        return Ok(Vec::new());
    };
    let mut by_day = std::collections::BTreeMap::new();
    for (i, &ts) in result.timestamp.iter().enumerate() {
        let at = |v: &Vec<Option<f64>>| v.get(i).copied().flatten();
        let (Some(open), Some(high), Some(low), Some(close), Some(day)) =
            (at(&q.open), at(&q.high), at(&q.low), at(&q.close), day_of(ts))
        else {
            continue;
        };
        by_day.insert(
            day,
            StockBar {
                stock: ticker.to_owned(),
                timestamp: day_timestamp(day),
                open,
                high,
                low,
                close,
                volume: q.volume.get(i).copied().flatten().unwrap_or(0),
            },
        );
    }
    Ok(by_day.into_values().collect())
}

impl YahooChartProvider {
    pub fn new(base: &str) -> Self {
        let http = reqwest::Client::builder()
            .user_agent(concat!("threadpulse/", env!("CARGO_PKG_VERSION")))
            .timeout(Duration::from_secs(30))
            .build()
            .expect("http client");
        Self {
            http,
            base: base.trim_end_matches('/').to_owned(),
        }
    }
}

#[async_trait]
impl MarketDataProvider for YahooChartProvider {
    async fn fetch_daily_bars(
        &self,
        ticker: &str,
        from: NaiveDate,
        to: NaiveDate,
    ) -> Result<Vec<StockBar>, ProviderError> {
        let end = to.checked_add_days(Days::new(1)).unwrap_or(to);
        let resp = self
            .http
            .get(format!("{}/{ticker}", self.base))
            .query(&[
                ("period1", day_timestamp(from).to_string()),
                ("period2", day_timestamp(end).to_string()),
                ("interval", "1d".to_owned()),
            ])
            .send()
            .await
            .map_err(|e| ProviderError::new(format!("chart request failed: {}", e.without_url())))?;
        if !resp.status().is_success() {
            return Err(ProviderError::new(format!("chart for {ticker} returned {}", resp.status())));
        }
        let body = resp
            .bytes()
            .await
            .map_err(|e| ProviderError::new(format!("chart body: {}", e.without_url())))?;
        let (lo, hi) = (day_timestamp(from), day_timestamp(to));
        Ok(parse_chart(ticker, &body)?
            .into_iter()
            .filter(|b| (lo..=hi).contains(&b.timestamp))
            .collect())
    }
}
