use async_graphql::{Context, Object, Result};

use super::{state, store_error, GqlSentimentBucket, GqlStockBar};
use crate::store::SentimentQuery;

#[derive(Default)]
pub struct SeriesQuery;

#[Object]
impl SeriesQuery {
    /// Bucketed sentiment over `[from, to)`. Every bucket is returned, empty
    /// ones included. All keywords must occur as whole words.
    async fn sentiment_series(
        &self,
        ctx: &Context<'_>,
        subreddit: String,
        #[graphql(default)] keywords: Vec<String>,
        bucket_width: i64,
        from: i64,
        to: i64,
    ) -> Result<Vec<GqlSentimentBucket>> {
        let st = state(ctx);
        let query = SentimentQuery::new(subreddit, from, to, bucket_width).keywords(keywords);
        let buckets = st
            .store
            .aggregate_sentiment(&query, st.band)
            .map_err(store_error)?;
        Ok(buckets.into_iter().map(Into::into).collect())
    }

    /// Daily bars with `from <= timestamp < to`, ascending.
    async fn stock_series(
        &self,
        ctx: &Context<'_>,
        ticker: String,
        from: i64,
        to: i64,
    ) -> Result<Vec<GqlStockBar>> {
        let bars = state(ctx)
            .store
            .stock_series(&ticker, from, to)
            .map_err(store_error)?;
        Ok(bars.into_iter().map(Into::into).collect())
    }
}
