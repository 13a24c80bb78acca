use std::path::Path;
use std::sync::Arc;
use std::time::Duration;

use async_trait::async_trait;
use serde::Deserialize;
use tokio::sync::Mutex;

use super::{CommentPage, CommentSource, SourceError};
use crate::clock::Clock;
use crate::config::{load_secret, SecretError, SecretValue};
use crate::store::RawComment;

const TOKEN_URL: &str = "https://www.reddit.com/api/v1/access_token";
const API_BASE: &str = "https://oauth.reddit.com";
const USER_AGENT: &str = concat!("threadpulse/", env!("CARGO_PKG_VERSION"));

/// Script-app credentials, read only from secret files.
pub struct RedditCredentials {
    pub client_id: SecretValue,
    pub client_secret: SecretValue,
    pub username: SecretValue,
    pub password: SecretValue,
}

impl RedditCredentials {
    pub const SECRET_NAMES: [&'static str; 4] = [
        "reddit_client_id",
        "reddit_client_secret",
        "reddit_username",
        "reddit_password",
    ];

    pub fn load(dir: &Path) -> Result<Self, SecretError> {
        let get = |name| load_secret(name, dir).map(|s| s.value);
        Ok(Self {
            client_id: get("reddit_client_id")?,
            client_secret: get("reddit_client_secret")?,
            username: get("reddit_username")?,
            password: get("reddit_password")?,
        })
    }
}

struct Token {
    value: SecretValue,
    expires_at: Duration,
}

/// Reads `/r/<sub>/comments` over OAuth. The cursor is the fullname of the
/// newest comment seen; pages are requested with `before=<cursor>`, which
/// returns strictly newer comments.
pub struct RedditOAuthSource {
    credentials: RedditCredentials,
    http: reqwest::Client,
    clock: Arc<dyn Clock>,
    token: Mutex<Option<Token>>,
}

#[derive(Deserialize)]
struct TokenResponse {
    access_token: String,
    expires_in: u64,
}

#[derive(Deserialize)]
struct Listing {
    data: ListingData,
}

#[derive(Deserialize)]
struct ListingData {
    children: Vec<Child>,
}

#[derive(Deserialize)]
struct Child {
    data: CommentData,
}

#[derive(Deserialize)]
struct CommentData {
    name: String,
    id: String,
    subreddit: String,
    body: String,
    created_utc: f64,
    #[serde(default)]
    author: String,
    #[serde(default)]
    link_id: String,
    #[serde(default)]
    ups: i64,
    #[serde(default)]
    downs: i64,
}

/// Listing JSON → comments oldest-first and the new cursor (newest fullname).
pub(crate) fn parse_listing(body: &[u8]) -> Result<CommentPage, SourceError> {
    let listing: Listing =
        serde_json::from_slice(body).map_err(|e| SourceError(format!("bad listing: {e}")))?;
    let next_cursor = listing.data.children.first().map(|c| c.data.name.clone());
    let comments = listing
        .data
        .children
        .into_iter()
        .rev()
        .map(|c| {
            let d = c.data;
            RawComment {
                subreddit: d.subreddit.to_lowercase(),
                text: d.body,
                timestamp: d.created_utc as i64,
                comment_id: d.id,
                user_id: d.author,
                article_id: d.link_id,
                upvotes: d.ups.max(0) as u64,
                downvotes: d.downs.max(0) as u64,
            }
        })
        .collect();
    Ok(CommentPage {
        comments,
        next_cursor,
    })
}

impl RedditOAuthSource {
    pub fn new(credentials: RedditCredentials, clock: Arc<dyn Clock>) -> Self {
        let http = reqwest::Client::builder()
            .user_agent(USER_AGENT)
            .timeout(Duration::from_secs(30))
            .build()
            .expect("http client");
        Self {
            credentials,
            http,
            clock,
            token: Mutex::new(None),
        }
    }

    async fn bearer(&self) -> Result<SecretValue, SourceError> {
        let mut slot = self.token.lock().await;
        let now = self.clock.now();
        if let Some(t) = slot.as_ref().filter(|t| t.expires_at > now) {
            return Ok(t.value.clone());
        }
        let c = &self.credentials;
        let resp = self
            .http
            .post(TOKEN_URL)
            .basic_auth(c.client_id.expose(), Some(c.client_secret.expose()))
            .form(&[
                ("grant_type", "password"),
                ("username", c.username.expose()),
                ("password", c.password.expose()),
            ])
            .send()
            .await
            .map_err(|e| SourceError(format!("token request failed: {}", e.without_url())))?;
        if !resp.status().is_success() {
            return Err(SourceError(format!("token request returned {}", resp.status())));
        }
        let body: TokenResponse = resp
            .json()
            .await
            .map_err(|_| SourceError("token response was not understood".into()))?;
        let value = SecretValue::from(body.access_token);
        // refresh a minute early
        let ttl = Duration::from_secs(body.expires_in.saturating_sub(60));
        *slot = Some(Token {
            value: value.clone(),
            expires_at: now + ttl,
        });
        Ok(value)
    }
}

#[async_trait]
impl CommentSource for RedditOAuthSource {
    async fn fetch_comments(
        &self,
        subreddit: &str,
        after_cursor: Option<&str>,
        max_items: usize,
    ) -> Result<CommentPage, SourceError> {
        let token = self.bearer().await?;
        let mut query = vec![("limit", max_items.min(super::PAGE_SIZE).to_string()), ("raw_json", "1".into())];
        if let Some(c) = after_cursor {
            query.push(("before", c.to_owned()));
        }
        let resp = self
            .http
            .get(format!("{API_BASE}/r/{subreddit}/comments"))
            .bearer_auth(token.expose())
            .query(&query)
            .send()
            .await
            .map_err(|e| SourceError(format!("listing request failed: {}", e.without_url())))?;
        if !resp.status().is_success() {
            return Err(SourceError(format!("listing for r/{subreddit} returned {}", resp.status())));
        }
        let body = resp
            .bytes()
            .await
            .map_err(|e| SourceError(format!("listing body: {}", e.without_url())))?;
        parse_listing(&body)
    }
}
