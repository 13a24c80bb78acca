use std::fmt;

use serde::{Deserialize, Serialize};

use crate::sentiment::SentimentScore;

/// A crawled comment before sentiment scoring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RawComment {
    pub subreddit: String,
    pub text: String,
    pub timestamp: i64,
    pub comment_id: String,
    pub user_id: String,
    pub article_id: String,
    pub upvotes: u64,
    pub downvotes: u64,
}

/// A stored comment. The document ID is `comment_id`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CommentDoc {
    pub subreddit: String,
    pub text: String,
    pub timestamp: i64,
    pub comment_id: String,
    pub user_id: String,
    pub article_id: String,
    pub upvotes: u64,
    pub downvotes: u64,
    pub sentiment: SentimentScore,
}

/// One daily OHLCV bar. The document ID is `<ticker>_<timestamp>`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StockBar {
    pub stock: String,
    pub timestamp: i64,
    pub open: f64,
    pub high: f64,
    pub low: f64,
    pub close: f64,
    pub volume: u64,
}

/// Aggregated comments for one time bucket.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SentimentBucket {
    pub bucket_start: i64,
    pub mention_count: u64,
    pub mean_sentiment: f64,
    pub positive_count: u64,
    pub neutral_count: u64,
    pub negative_count: u64,
}

impl SentimentBucket {
    pub fn empty(bucket_start: i64) -> Self {
        Self {
            bucket_start,
            mention_count: 0,
            mean_sentiment: 0.0,
            positive_count: 0,
            neutral_count: 0,
            negative_count: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Comment(CommentDoc),
    Stock(StockBar),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpsertOutcome {
    Created,
    Updated,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ValidationError {
    #[error("{0} must not be empty")]
    Empty(&'static str),
    #[error("timestamp must be positive, got {0}")]
    Timestamp(i64),
    #[error("{field} must be a positive finite price, got {value}")]
    Price { field: &'static str, value: f64 },
    #[error("inconsistent bar: low {low}, high {high}, open {open}, close {close}")]
    Range {
        open: f64,
        high: f64,
        low: f64,
        close: f64,
    },
}

impl RawComment {
    pub fn validate(&self) -> Result<(), ValidationError> {
        if self.subreddit.trim().is_empty() {
            return Err(ValidationError::Empty("subreddit"));
        }
        if self.comment_id.is_empty() {
            return Err(ValidationError::Empty("commentId"));
        }
        if self.timestamp <= 0 {
            return Err(ValidationError::Timestamp(self.timestamp));
        }
        Ok(())
    }

    pub fn with_sentiment(self, sentiment: SentimentScore) -> CommentDoc {
        CommentDoc {
            subreddit: self.subreddit,
            text: self.text,
            timestamp: self.timestamp,
            comment_id: self.comment_id,
            user_id: self.user_id,
            article_id: self.article_id,
            upvotes: self.upvotes,
            downvotes: self.downvotes,
            sentiment,
        }
    }
}

impl CommentDoc {
    pub fn validate(&self) -> Result<(), ValidationError> {
        if self.subreddit.trim().is_empty() {
            return Err(ValidationError::Empty("subreddit"));
        }
        if self.comment_id.is_empty() {
            return Err(ValidationError::Empty("commentId"));
        }
        if self.timestamp <= 0 {
            return Err(ValidationError::Timestamp(self.timestamp));
        }
        // SentimentScore cannot hold an out-of-range value.
        Ok(())
    }
}

impl StockBar {
    pub fn validate(&self) -> Result<(), ValidationError> {
        if self.stock.trim().is_empty() {
            return Err(ValidationError::Empty("stock"));
        }
        if self.timestamp <= 0 {
            return Err(ValidationError::Timestamp(self.timestamp));
        }
        for (field, value) in [
            ("open", self.open),
            ("high", self.high),
            ("low", self.low),
            ("close", self.close),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(ValidationError::Price { field, value });
            }
        }
        let consistent = self.low <= self.high
            && self.low <= self.open.min(self.close)
            && self.high >= self.open.max(self.close);
        if !consistent {
            return Err(ValidationError::Range {
                open: self.open,
                high: self.high,
                low: self.low,
                close: self.close,
            });
        }
        Ok(())
    }
}

impl fmt::Display for UpsertOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpsertOutcome::Created => "created",
            UpsertOutcome::Updated => "updated",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bar() -> StockBar {
        StockBar {
            stock: "GME".into(),
            timestamp: 1_650_000_000,
            open: 10.0,
            high: 12.0,
            low: 9.0,
            close: 11.0,
            volume: 1000,
        }
    }

    #[test]
    fn bar_invariants() {
        assert!(bar().validate().is_ok());
        let mut b = bar();
        b.low = 13.0;
        assert!(matches!(b.validate(), Err(ValidationError::Range { .. })));
        let mut b = bar();
        b.high = 10.5;
        assert!(b.validate().is_err());
        let mut b = bar();
        b.open = f64::NAN;
        assert!(matches!(b.validate(), Err(ValidationError::Price { field: "open", .. })));
        let mut b = bar();
        b.timestamp = 0;
        assert_eq!(b.validate(), Err(ValidationError::Timestamp(0)));
    }

    #[test]
    fn comment_json_uses_camel_case() {
        let doc = RawComment {
            subreddit: "wallstreetbets".into(),
            text: "hi".into(),
            timestamp: 1,
            comment_id: "c1".into(),
            user_id: "u1".into(),
            article_id: "a1".into(),
            upvotes: 3,
            downvotes: 0,
        }
        .with_sentiment(SentimentScore::clamped(0.5));
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(
            json,
            r#"{"subreddit":"wallstreetbets","text":"hi","timestamp":1,"commentId":"c1","userId":"u1","articleId":"a1","upvotes":3,"downvotes":0,"sentiment":0.5}"#
        );
    }

    #[test]
    fn empty_comment_id_rejected() {
        let mut doc = RawComment {
            subreddit: "x".into(),
            text: String::new(),
            timestamp: 5,
            comment_id: String::new(),
            user_id: String::new(),
            article_id: String::new(),
            upvotes: 0,
            downvotes: 0,
        };
        assert_eq!(doc.validate(), Err(ValidationError::Empty("commentId")));
        doc.comment_id = "c".into();
        doc.timestamp = -1;
        assert_eq!(doc.validate(), Err(ValidationError::Timestamp(-1)));
    }
}
