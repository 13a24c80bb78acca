use async_graphql::{InputObject, SimpleObject};

use crate::store::{RawComment, SentimentBucket, StockBar};

#[derive(SimpleObject, Debug, Clone, PartialEq)]
#[graphql(name = "SentimentBucket")]
pub struct GqlSentimentBucket {
    /// Inclusive bucket start, unix seconds.
    pub bucket_start: i64,
    pub mention_count: u64,
    /// Mean combined sentiment; 0 for an empty bucket.
    pub mean_sentiment: f64,
    pub positive_count: u64,
    pub neutral_count: u64,
    pub negative_count: u64,
}

impl From<SentimentBucket> for GqlSentimentBucket {
    fn from(b: SentimentBucket) -> Self {
        Self {
            bucket_start: b.bucket_start,
            mention_count: b.mention_count,
            mean_sentiment: b.mean_sentiment,
            positive_count: b.positive_count,
            neutral_count: b.neutral_count,
            negative_count: b.negative_count,
        }
    }
}

#[derive(SimpleObject, Debug, Clone, PartialEq)]
#[graphql(name = "StockBar")]
pub struct GqlStockBar {
    pub stock: String,
    /// Bar day at 00:00 UTC, unix seconds.
    pub timestamp: i64,
    pub open: f64,
    pub high: f64,
    pub low: f64,
    pub close: f64,
    pub volume: u64,
}

impl From<StockBar> for GqlStockBar {
    fn from(b: StockBar) -> Self {
        Self {
            stock: b.stock,
            timestamp: b.timestamp,
            open: b.open,
            high: b.high,
            low: b.low,
            close: b.close,
            volume: b.volume,
        }
    }
}

#[derive(InputObject, Debug, Clone)]
pub struct RawCommentInput {
    pub subreddit: String,
    pub text: String,
    pub timestamp: i64,
    pub comment_id: String,
    pub user_id: String,
    pub article_id: String,
    pub upvotes: i64,
    pub downvotes: i64,
}

impl RawCommentInput {
    pub fn into_raw(self) -> Result<RawComment, String> {
        let upvotes = u64::try_from(self.upvotes)
            .map_err(|_| format!("upvotes must be non-negative, got {}", self.upvotes))?;
        let downvotes = u64::try_from(self.downvotes)
            .map_err(|_| format!("downvotes must be non-negative, got {}", self.downvotes))?;
        let raw = RawComment {
            subreddit: self.subreddit,
            text: self.text,
            timestamp: self.timestamp,
            comment_id: self.comment_id,
            user_id: self.user_id,
            article_id: self.article_id,
            upvotes,
            downvotes,
        };
        raw.validate().map_err(|e| e.to_string())?;
        Ok(raw)
    }
}

impl From<&RawComment> for RawCommentInput {
    fn from(c: &RawComment) -> Self {
        Self {
            subreddit: c.subreddit.clone(),
            text: c.text.clone(),
            timestamp: c.timestamp,
            comment_id: c.comment_id.clone(),
            user_id: c.user_id.clone(),
            article_id: c.article_id.clone(),
            upvotes: c.upvotes as i64,
            downvotes: c.downvotes as i64,
        }
    }
}

#[derive(InputObject, Debug, Clone)]
pub struct StockBarInput {
    pub stock: String,
    pub timestamp: i64,
    pub open: f64,
    pub high: f64,
    pub low: f64,
    pub close: f64,
    pub volume: i64,
}

impl StockBarInput {
    pub fn into_bar(self) -> Result<StockBar, String> {
        let volume = u64::try_from(self.volume)
            .map_err(|_| format!("volume must be non-negative, got {}", self.volume))?;
        let bar = StockBar {
            stock: self.stock,
            timestamp: self.timestamp,
            open: self.open,
            high: self.high,
            low: self.low,
            close: self.close,
            volume,
        };
        bar.validate().map_err(|e| e.to_string())?;
        Ok(bar)
    }
}

#[derive(SimpleObject, Debug, Clone, PartialEq)]
pub struct Rejection {
    /// Position within the submitted batch.
    pub index: u32,
    pub reason: String,
}

#[derive(SimpleObject, Debug, Clone, PartialEq, Default)]
pub struct SubmitResult {
    pub accepted: u32,
    pub rejected: u32,
    pub rejections: Vec<Rejection>,
}

impl SubmitResult {
    pub(crate) fn reject(&mut self, index: usize, reason: impl Into<String>) {
        self.rejected += 1;
        self.rejections.push(Rejection {
            index: index as u32,
            reason: reason.into(),
        });
    }
}
