use async_graphql::{Context, Object, Result};

use super::{
    coded, require, state, RawCommentInput, StockBarInput, SubmitResult, CODE_BAD_USER_INPUT,
    MAX_BATCH,
};
use crate::backend::auth::Role;

#[derive(Default)]
pub struct IngestMutation;

fn check_batch(len: usize) -> Result<()> {
    if len > MAX_BATCH {
        return Err(coded(
            CODE_BAD_USER_INPUT,
            format!("batch of {len} exceeds the limit of {MAX_BATCH}"),
        ));
    }
    Ok(())
}

#[Object]
impl IngestMutation {
    /// Scores and upserts comments. Invalid items are rejected individually;
    /// the rest of the batch is still stored.
    async fn submit_comments(
        &self,
        ctx: &Context<'_>,
        batch: Vec<RawCommentInput>,
    ) -> Result<SubmitResult> {
        let role = require(ctx, &[Role::RedditCrawler, Role::Admin])?;
        check_batch(batch.len())?;
        let st = state(ctx);
        let mut result = SubmitResult::default();
        for (i, input) in batch.into_iter().enumerate() {
            let raw = match input.into_raw() {
                Ok(raw) => raw,
                Err(reason) => {
                    result.reject(i, reason);
                    continue;
                }
            };
            let score = match st.sentiment.score(&raw.text).await {
                Ok(s) => s,
                Err(e) => {
                    tracing::warn!(error = %e, "sentiment scoring failed");
                    result.reject(i, e.to_string());
                    continue;
                }
            };
            match st.store.upsert_comment(raw.with_sentiment(score)) {
                Ok(_) => result.accepted += 1,
                Err(e) => result.reject(i, e.to_string()),
            }
        }
        tracing::info!(
            role = role.as_str(),
            accepted = result.accepted,
            rejected = result.rejected,
            "comments submitted"
        );
        Ok(result)
    }

    /// Upserts daily bars keyed by ticker and timestamp.
    async fn submit_stock_bars(
        &self,
        ctx: &Context<'_>,
        batch: Vec<StockBarInput>,
    ) -> Result<SubmitResult> {
        let role = require(ctx, &[Role::MarketCrawler, Role::Admin])?;
        check_batch(batch.len())?;
        let st = state(ctx);
        let mut result = SubmitResult::default();
        for (i, input) in batch.into_iter().enumerate() {
            match input.into_bar().map(|bar| st.store.upsert_stock(bar)) {
                Ok(Ok(_)) => result.accepted += 1,
                Ok(Err(e)) => result.reject(i, e.to_string()),
                Err(reason) => result.reject(i, reason),
            }
        }
        tracing::info!(
            role = role.as_str(),
            accepted = result.accepted,
            rejected = result.rejected,
            "stock bars submitted"
        );
        Ok(result)
    }
}
