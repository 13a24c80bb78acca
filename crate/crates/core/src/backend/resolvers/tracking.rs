use async_graphql::{Context, Object, Result};

use super::{coded, require, state, CODE_BAD_USER_INPUT, CODE_INTERNAL};
use crate::backend::auth::Role;
use crate::backend::tracked::TrackError;

#[derive(Default)]
pub struct TrackingQuery;

#[Object]
impl TrackingQuery {
    /// Subreddits crawled by the comment crawler, in the order they were added.
    async fn tracked_subreddits(&self, ctx: &Context<'_>) -> Vec<String> {
        state(ctx).tracked.subreddits()
    }

    /// Tickers crawled by the market crawler, in the order they were added.
    async fn tracked_tickers(&self, ctx: &Context<'_>) -> Vec<String> {
        state(ctx).tracked.tickers()
    }
}

#[derive(Default)]
pub struct TrackingMutation;

fn track_error(e: TrackError) -> async_graphql::Error {
    match e {
        TrackError::Empty(_) => coded(CODE_BAD_USER_INPUT, e.to_string()),
        TrackError::Io(_) => {
            tracing::error!(error = %e, "tracked list write failed");
            coded(CODE_INTERNAL, "could not persist tracked lists")
        }
    }
}

#[Object]
impl TrackingMutation {
    /// Adds a subreddit (lowercased, `r/` stripped). True when newly added.
    async fn track_subreddit(&self, ctx: &Context<'_>, name: String) -> Result<bool> {
        let role = require(ctx, &Role::ALL)?;
        let added = state(ctx).tracked.track_subreddit(&name).map_err(track_error)?;
        if added {
            tracing::info!(role = role.as_str(), "subreddit tracked");
        }
        Ok(added)
    }

    /// Adds a ticker (uppercased). True when newly added.
    async fn track_ticker(&self, ctx: &Context<'_>, symbol: String) -> Result<bool> {
        let role = require(ctx, &Role::ALL)?;
        let added = state(ctx).tracked.track_ticker(&symbol).map_err(track_error)?;
        if added {
            tracing::info!(role = role.as_str(), "ticker tracked");
        }
        Ok(added)
    }
}
