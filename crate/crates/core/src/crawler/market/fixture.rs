use std::path::{Path, PathBuf};

use async_trait::async_trait;
use chrono::NaiveDate;
use serde::Deserialize;

use super::{day_timestamp, MarketDataProvider, ProviderError};
use crate::store::StockBar;

pub const CSV_HEADER: [&str; 6] = ["date", "open", "high", "low", "close", "volume"];

/// Directory of `<TICKER>.csv` files with a `date,open,high,low,close,volume`
/// header line.
#[derive(Debug, Clone)]
pub struct FixtureMarketProvider {
    dir: PathBuf,
}

#[derive(Deserialize)]
struct Row {
    date: NaiveDate,
    open: f64,
    high: f64,
    low: f64,
    close: f64,
    volume: u64,
}

/// Parses one ticker's CSV into ascending bars, one per day (last row wins).
pub fn parse_csv(ticker: &str, text: &str) -> Result<Vec<StockBar>, String> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| e.to_string())?;
    if header.iter().ne(CSV_HEADER) {
        return Err(format!("expected header {}", CSV_HEADER.join(",")));
    }
    let mut by_day = std::collections::BTreeMap::new();
    for (i, row) in reader.deserialize::<Row>().enumerate() {
        let row = row.map_err(|e| format!("row {}: {e}", i + 2))?;
        by_day.insert(
            row.date,
            StockBar {
                stock: ticker.to_owned(),
                timestamp: day_timestamp(row.date),
                open: row.open,
                high: row.high,
                low: row.low,
                close: row.close,
                volume: row.volume,
            },
        );
    }
    Ok(by_day.into_values().collect())
}

impl FixtureMarketProvider {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn read_all(&self, ticker: &str) -> Result<Vec<StockBar>, ProviderError> {
        let path = self.dir.join(format!("{ticker}.csv"));
        let text = std::fs::read_to_string(&path)
            .map_err(|e| ProviderError::new(format!("no fixture for {ticker}: {e}")))?;
        parse_csv(ticker, &text).map_err(|e| ProviderError::new(format!("{}: {e}", path.display())))
    }
}

#[async_trait]
impl MarketDataProvider for FixtureMarketProvider {
    async fn fetch_daily_bars(
        &self,
        ticker: &str,
        from: NaiveDate,
        to: NaiveDate,
    ) -> Result<Vec<StockBar>, ProviderError> {
        let (lo, hi) = (day_timestamp(from), day_timestamp(to));
        Ok(self
            .read_all(ticker)?
            .into_iter()
            .filter(|b| (lo..=hi).contains(&b.timestamp))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_sorts() {
        let csv = "date,open,high,low,close,volume\n\
                   2022-04-18,10,12,9,11,100\n\
                   2022-04-15,9,10,8,9.5,50\n";
        let bars = parse_csv("GME", csv).unwrap();
        assert_eq!(bars.len(), 2);
        assert_eq!(bars[0].timestamp, 1_649_980_800);
        assert_eq!(bars[1].close, 11.0);
    }

    #[test]
    fn header_required() {
        assert!(parse_csv("GME", "2022-04-18,10,12,9,11,100\n").is_err());
        assert!(parse_csv("GME", "date,open,high,low,close\n").is_err());
        assert!(parse_csv("GME", "date,open,high,low,close,volume\n2022-13-01,1,1,1,1,1\n").is_err());
    }
}
