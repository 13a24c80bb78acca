//! Document store with per-subject indices and query-time aggregation.
//!
//! Comments live in one `r_<subreddit>` index each, stock bars in one
//! `f_<ticker>` index each. Grouping and sentiment interpretation happen in
//! [`DocumentStore::aggregate_sentiment`]; stored scores are never rounded or
//! labelled at write time.

mod embedded;
mod index;
mod keywords;
mod model;
mod naming;

use std::path::PathBuf;

pub use embedded::EmbeddedStore;
pub use model::{
    CommentDoc, Document, RawComment, SentimentBucket, StockBar, UpsertOutcome, ValidationError,
};
pub use naming::{
    index_for_stock, index_for_subreddit, normalize_name, stock_doc_id, IndexName, IndexPrefix,
    NameError,
};

use crate::sentiment::NeutralBand;

/// Upper bound on buckets per aggregation query.
pub const MAX_BUCKETS: usize = 100_000;

pub const SEGMENT_FILE: &str = "segments.jsonl";

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("invalid document: {0}")]
    InvalidDocument(#[from] ValidationError),
    #[error(transparent)]
    InvalidName(#[from] NameError),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("corrupt segment {path} line {line}: {reason}")]
    Corrupt {
        path: PathBuf,
        line: usize,
        reason: String,
    },
}

/// Parameters of a sentiment aggregation.
#[derive(Debug, Clone, PartialEq)]
pub struct SentimentQuery {
    pub subreddit: String,
    pub keywords: Vec<String>,
    pub bucket_width: i64,
    pub from: i64,
    pub to: i64,
}

impl SentimentQuery {
    pub fn new(subreddit: impl Into<String>, from: i64, to: i64, bucket_width: i64) -> Self {
        Self {
            subreddit: subreddit.into(),
            keywords: Vec::new(),
            bucket_width,
            from,
            to,
        }
    }

    pub fn keywords<I, S>(mut self, keywords: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.keywords = keywords.into_iter().map(Into::into).collect();
        self
    }

    /// Number of buckets covering `[from, to)`; the last may extend past `to`.
    pub fn bucket_count(&self) -> Result<usize, StoreError> {
        check_range(self.from, self.to)?;
        if self.bucket_width <= 0 {
            return Err(StoreError::InvalidQuery(format!(
                "bucketWidth must be positive, got {}",
                self.bucket_width
            )));
        }
        let span = (self.to as i128) - (self.from as i128);
        let count = (span + self.bucket_width as i128 - 1) / self.bucket_width as i128;
        if count > MAX_BUCKETS as i128 {
            return Err(StoreError::InvalidQuery(format!(
                "query spans {count} buckets, limit is {MAX_BUCKETS}"
            )));
        }
        Ok(count as usize)
    }
}

pub(crate) fn check_range(from: i64, to: i64) -> Result<(), StoreError> {
    if from >= to {
        return Err(StoreError::InvalidQuery(format!(
            "from ({from}) must be less than to ({to})"
        )));
    }
    Ok(())
}

/// Store contract shared by the embedded implementation and any adapter.
///
/// Readers observe a consistent snapshot of each index; writers to one index
/// are serialized. A missing index reads as empty and is created on first
/// write.
pub trait DocumentStore: Send + Sync {
    fn upsert_comment(&self, doc: CommentDoc) -> Result<UpsertOutcome, StoreError>;

    fn upsert_stock(&self, bar: StockBar) -> Result<UpsertOutcome, StoreError>;

    fn get_by_id(&self, index: &IndexName, id: &str) -> Option<Document>;

    fn aggregate_sentiment(
        &self,
        query: &SentimentQuery,
        band: NeutralBand,
    ) -> Result<Vec<SentimentBucket>, StoreError>;

    /// Bars with `from <= timestamp < to`, ascending.
    fn stock_series(&self, ticker: &str, from: i64, to: i64) -> Result<Vec<StockBar>, StoreError>;

    fn list_indices(&self, prefix: IndexPrefix) -> Vec<IndexName>;

    /// Document count of one index (0 when absent).
    fn index_len(&self, index: &IndexName) -> usize;

    /// Document count across all indices.
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
