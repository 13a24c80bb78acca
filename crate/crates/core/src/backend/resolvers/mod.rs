//! GraphQL schema, split by concern: tracking, ingest, and series reads.

mod ingest;
mod series;
mod tracking;
mod types;

use std::sync::Arc;

use async_graphql::{EmptySubscription, ErrorExtensions, MergedObject, Schema};

use super::auth::{authorize, AuthError, Caller, Role};
use super::services::SentimentService;
use super::tracked::TrackedSets;
use crate::sentiment::NeutralBand;
use crate::store::{DocumentStore, StoreError};

pub use types::{
    GqlSentimentBucket, GqlStockBar, RawCommentInput, Rejection, StockBarInput, SubmitResult,
};

/// Largest batch accepted by one submit mutation.
pub const MAX_BATCH: usize = 5_000;

pub const CODE_UNAUTHENTICATED: &str = "UNAUTHENTICATED";
pub const CODE_FORBIDDEN: &str = "FORBIDDEN";
pub const CODE_BAD_USER_INPUT: &str = "BAD_USER_INPUT";
pub const CODE_INTERNAL: &str = "INTERNAL_SERVER_ERROR";

/// Shared state visible to every resolver.
pub struct ApiState {
    pub store: Arc<dyn DocumentStore>,
    pub sentiment: Arc<dyn SentimentService>,
    pub tracked: TrackedSets,
    pub band: NeutralBand,
}

#[derive(MergedObject, Default)]
#[graphql(name = "Query")]
pub struct QueryRoot(tracking::TrackingQuery, series::SeriesQuery);

#[derive(MergedObject, Default)]
#[graphql(name = "Mutation")]
pub struct MutationRoot(tracking::TrackingMutation, ingest::IngestMutation);

pub type ApiSchema = Schema<QueryRoot, MutationRoot, EmptySubscription>;

pub fn build_schema(state: ApiState) -> ApiSchema {
    Schema::build(QueryRoot::default(), MutationRoot::default(), EmptySubscription)
        .data(Arc::new(state))
        .finish()
}

/// SDL of the public schema, independent of any state.
pub fn schema_sdl() -> String {
    Schema::build(QueryRoot::default(), MutationRoot::default(), EmptySubscription)
        .finish()
        .sdl()
}

pub(crate) fn coded(code: &'static str, message: impl Into<String>) -> async_graphql::Error {
    async_graphql::Error::new(message).extend_with(|_, e| e.set("code", code))
}

pub(crate) fn state<'a>(ctx: &async_graphql::Context<'a>) -> &'a Arc<ApiState> {
    ctx.data_unchecked::<Arc<ApiState>>()
}

/// Authorization gate for mutations.
pub(crate) fn require(
    ctx: &async_graphql::Context<'_>,
    allowed: &[Role],
) -> async_graphql::Result<Role> {
    let caller = ctx.data_opt::<Caller>().copied().unwrap_or(Caller::Anonymous);
    authorize(caller, allowed).map_err(|e| match e {
        AuthError::Unauthenticated => coded(CODE_UNAUTHENTICATED, e.to_string()),
        AuthError::Forbidden(_) => coded(CODE_FORBIDDEN, e.to_string()),
    })
}

pub(crate) fn store_error(err: StoreError) -> async_graphql::Error {
    match err {
        StoreError::InvalidQuery(_) | StoreError::InvalidName(_) | StoreError::InvalidDocument(_) => {
            coded(CODE_BAD_USER_INPUT, err.to_string())
        }
        other => {
            tracing::error!(error = %other, "store failure");
            coded(CODE_INTERNAL, "internal store error")
        }
    }
}
