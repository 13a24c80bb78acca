//! Crawler-side access to the backend's GraphQL API.

use async_trait::async_trait;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::backend::auth::{Caller, ACCESS_KEY_HEADER};
use crate::backend::resolvers::ApiSchema;
use crate::config::SecretValue;
use crate::store::{RawComment, StockBar};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClientError {
    #[error("backend unreachable: {0}")]
    Transport(String),
    #[error("backend returned HTTP {0}")]
    Status(u16),
    #[error("backend error{}: {message}", code.as_deref().map(|c| format!(" [{c}]")).unwrap_or_default())]
    Api { code: Option<String>, message: String },
    #[error("unexpected backend response: {0}")]
    Decode(String),
}

impl ClientError {
    pub fn code(&self) -> Option<&str> {
        match self {
            ClientError::Api { code, .. } => code.as_deref(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Deserialize)]
pub struct RejectedItem {
    pub index: u32,
    pub reason: String,
}

/// Backend acknowledgement of one submit mutation.
#[derive(Debug, Clone, PartialEq, Eq, Default, Deserialize)]
pub struct SubmitAck {
    pub accepted: u32,
    pub rejected: u32,
    pub rejections: Vec<RejectedItem>,
}

#[async_trait]
pub trait BackendClient: Send + Sync {
    async fn tracked_subreddits(&self) -> Result<Vec<String>, ClientError>;
    async fn tracked_tickers(&self) -> Result<Vec<String>, ClientError>;
    async fn track_subreddit(&self, name: &str) -> Result<bool, ClientError>;
    async fn track_ticker(&self, symbol: &str) -> Result<bool, ClientError>;
    async fn submit_comments(&self, batch: &[RawComment]) -> Result<SubmitAck, ClientError>;
    async fn submit_stock_bars(&self, batch: &[StockBar]) -> Result<SubmitAck, ClientError>;
}

pub mod ops {
    pub const TRACKED_SUBREDDITS: &str = "query { trackedSubreddits }";
    pub const TRACKED_TICKERS: &str = "query { trackedTickers }";
    pub const TRACK_SUBREDDIT: &str =
        "mutation($name: String!) { trackSubreddit(name: $name) }";
    pub const TRACK_TICKER: &str = "mutation($symbol: String!) { trackTicker(symbol: $symbol) }";
    pub const SUBMIT_COMMENTS: &str = "mutation($batch: [RawCommentInput!]!) { \
        submitComments(batch: $batch) { accepted rejected rejections { index reason } } }";
    pub const SUBMIT_STOCK_BARS: &str = "mutation($batch: [StockBarInput!]!) { \
        submitStockBars(batch: $batch) { accepted rejected rejections { index reason } } }";
}

/// Turns a GraphQL response envelope into the named field's value.
fn extract<T: DeserializeOwned>(envelope: Value, field: &str) -> Result<T, ClientError> {
    if let Some(err) = envelope.get("errors").and_then(Value::as_array).and_then(|e| e.first()) {
        return Err(ClientError::Api {
            code: err
                .pointer("/extensions/code")
                .and_then(Value::as_str)
                .map(str::to_owned),
            message: err
                .get("message")
                .and_then(Value::as_str)
                .unwrap_or("unknown error")
                .to_owned(),
        });
    }
    let value = envelope
        .get("data")
        .and_then(|d| d.get(field))
        .cloned()
        .ok_or_else(|| ClientError::Decode(format!("missing data.{field}")))?;
    serde_json::from_value(value).map_err(|e| ClientError::Decode(e.to_string()))
}

/// Anything that can run one GraphQL operation and hand back the envelope.
#[async_trait]
trait Transport: Send + Sync {
    async fn run(&self, query: &str, variables: Value) -> Result<Value, ClientError>;
}

macro_rules! impl_backend_client {
    ($ty:ty) => {
        #[async_trait]
        impl BackendClient for $ty {
            async fn tracked_subreddits(&self) -> Result<Vec<String>, ClientError> {
                extract(self.run(ops::TRACKED_SUBREDDITS, json!({})).await?, "trackedSubreddits")
            }
            async fn tracked_tickers(&self) -> Result<Vec<String>, ClientError> {
                extract(self.run(ops::TRACKED_TICKERS, json!({})).await?, "trackedTickers")
            }
            async fn track_subreddit(&self, name: &str) -> Result<bool, ClientError> {
                extract(self.run(ops::TRACK_SUBREDDIT, json!({ "name": name })).await?, "trackSubreddit")
            }
            async fn track_ticker(&self, symbol: &str) -> Result<bool, ClientError> {
                extract(self.run(ops::TRACK_TICKER, json!({ "symbol": symbol })).await?, "trackTicker")
            }
            async fn submit_comments(&self, batch: &[RawComment]) -> Result<SubmitAck, ClientError> {
                extract(self.run(ops::SUBMIT_COMMENTS, json!({ "batch": batch })).await?, "submitComments")
            }
            async fn submit_stock_bars(&self, batch: &[StockBar]) -> Result<SubmitAck, ClientError> {
                extract(self.run(ops::SUBMIT_STOCK_BARS, json!({ "batch": batch })).await?, "submitStockBars")
            }
        }
    };
}

/// HTTP client for `POST <base>/graphql`.
pub struct GraphqlClient {
    endpoint: String,
    key: Option<SecretValue>,
    http: reqwest::Client,
}

impl std::fmt::Debug for GraphqlClient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GraphqlClient")
            .field("endpoint", &self.endpoint)
            .field("key", &self.key)
            .finish()
    }
}

impl GraphqlClient {
    pub fn new(base_url: &str, key: Option<SecretValue>) -> Self {
        let base = base_url.trim_end_matches('/');
        let endpoint = if base.ends_with("/graphql") {
            base.to_owned()
        } else {
            format!("{base}/graphql")
        };
        let http = reqwest::Client::builder()
            .timeout(std::time::Duration::from_secs(30))
            .build()
            .expect("http client");
        Self { endpoint, key, http }
    }

    pub fn endpoint(&self) -> &str {
        &self.endpoint
    }
}

#[async_trait]
impl Transport for GraphqlClient {
    async fn run(&self, query: &str, variables: Value) -> Result<Value, ClientError> {
        let mut req = self
            .http
            .post(&self.endpoint)
            .json(&json!({ "query": query, "variables": variables }));
        if let Some(key) = &self.key {
            let mut value = reqwest::header::HeaderValue::from_str(key.expose())
                .map_err(|_| ClientError::Transport("access key is not a valid header value".into()))?;
            value.set_sensitive(true);
            req = req.header(ACCESS_KEY_HEADER, value);
        }
        let resp = req
            .send()
            .await
            .map_err(|e| ClientError::Transport(e.without_url().to_string()))?;
        let status = resp.status();
        if !status.is_success() {
            return Err(ClientError::Status(status.as_u16()));
        }
        resp.json()
            .await
            .map_err(|e| ClientError::Decode(e.without_url().to_string()))
    }
}

impl_backend_client!(GraphqlClient);

/// Executes against a schema in the same process, as a fixed caller.
#[derive(Clone)]
pub struct InProcessClient {
    schema: ApiSchema,
    caller: Caller,
}

impl InProcessClient {
    pub fn new(schema: ApiSchema, caller: Caller) -> Self {
        Self { schema, caller }
    }
}

#[async_trait]
impl Transport for InProcessClient {
    async fn run(&self, query: &str, variables: Value) -> Result<Value, ClientError> {
        let req = async_graphql::Request::new(query)
            .variables(async_graphql::Variables::from_json(variables))
            .data(self.caller);
        let resp = self.schema.execute(req).await;
        serde_json::to_value(resp).map_err(|e| ClientError::Decode(e.to_string()))
    }
}

impl_backend_client!(InProcessClient);
