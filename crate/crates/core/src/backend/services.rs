//! Swappable services behind the backend: real or mock store and sentiment.

use std::path::PathBuf;
use std::sync::Arc;

use async_trait::async_trait;
use serde::Deserialize;

use crate::sentiment::{SentimentEngine, SentimentScore};
use crate::store::{DocumentStore, EmbeddedStore, StoreError};

#[derive(Debug, thiserror::Error)]
pub enum SentimentServiceError {
    #[error("sentiment service request failed: {0}")]
    Transport(String),
    #[error("sentiment service returned status {0}")]
    Status(u16),
    #[error("sentiment service returned an invalid score: {0}")]
    InvalidScore(String),
}

/// Scores comment text at ingest.
#[async_trait]
pub trait SentimentService: Send + Sync {
    async fn score(&self, text: &str) -> Result<SentimentScore, SentimentServiceError>;
}

/// In-process engine.
pub struct EngineSentiment(pub Arc<SentimentEngine>);

#[async_trait]
impl SentimentService for EngineSentiment {
    async fn score(&self, text: &str) -> Result<SentimentScore, SentimentServiceError> {
        Ok(self.0.score(text).sentiment)
    }
}

/// Calls a separate sentiment container over `POST /sentiment`.
pub struct RemoteSentiment {
    endpoint: String,
    http: reqwest::Client,
}

impl RemoteSentiment {
    pub fn new(base_url: &str) -> Self {
        Self {
            endpoint: format!("{}/sentiment", base_url.trim_end_matches('/')),
            http: reqwest::Client::new(),
        }
    }
}

#[derive(Deserialize)]
struct RemoteScore {
    sentiment: f64,
}

#[async_trait]
impl SentimentService for RemoteSentiment {
    async fn score(&self, text: &str) -> Result<SentimentScore, SentimentServiceError> {
        let resp = self
            .http
            .post(&self.endpoint)
            .json(&serde_json::json!({ "text": text }))
            .send()
            .await
            .map_err(|e| SentimentServiceError::Transport(e.to_string()))?;
        if !resp.status().is_success() {
            return Err(SentimentServiceError::Status(resp.status().as_u16()));
        }
        let body: RemoteScore = resp
            .json()
            .await
            .map_err(|e| SentimentServiceError::Transport(e.to_string()))?;
        SentimentScore::try_new(body.sentiment)
            .map_err(|e| SentimentServiceError::InvalidScore(e.to_string()))
    }
}

/// Mock returning one fixed score for every text.
pub struct ConstantSentiment(pub SentimentScore);

#[async_trait]
impl SentimentService for ConstantSentiment {
    async fn score(&self, _text: &str) -> Result<SentimentScore, SentimentServiceError> {
        Ok(self.0)
    }
}

/// Value of the `PRODUCTION` switch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ServiceMode {
    pub production: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("PRODUCTION must be true or false, got {0:?}")]
pub struct ModeError(pub String);

impl ServiceMode {
    pub const ENV_VAR: &'static str = "PRODUCTION";

    /// Unset means development mode.
    pub fn parse(value: Option<&str>) -> Result<Self, ModeError> {
        let Some(raw) = value else {
            return Ok(Self::default());
        };
        match raw.trim().to_ascii_lowercase().as_str() {
            "true" | "1" => Ok(Self { production: true }),
            "false" | "0" => Ok(Self { production: false }),
            _ => Err(ModeError(raw.to_owned())),
        }
    }

    pub fn from_env() -> Result<Self, ModeError> {
        match std::env::var(Self::ENV_VAR) {
            Ok(v) => Self::parse(Some(&v)),
            Err(std::env::VarError::NotPresent) => Self::parse(None),
            Err(std::env::VarError::NotUnicode(v)) => Err(ModeError(v.to_string_lossy().into())),
        }
    }
}

/// Where production mode gets its sentiment scores.
pub enum SentimentSource {
    Embedded(Arc<SentimentEngine>),
    Remote(String),
}

pub struct ProductionSettings {
    pub store_dir: PathBuf,
    pub sentiment: SentimentSource,
}

/// The wired service set.
#[derive(Clone)]
pub struct Services {
    pub store: Arc<dyn DocumentStore>,
    pub sentiment: Arc<dyn SentimentService>,
    /// Set in production, where tracked lists persist next to the store.
    pub state_dir: Option<PathBuf>,
}

impl Services {
    /// In-memory store and a constant neutral sentiment mock.
    pub fn mock() -> Self {
        Self {
            store: Arc::new(EmbeddedStore::in_memory()),
            sentiment: Arc::new(ConstantSentiment(SentimentScore::NEUTRAL)),
            state_dir: None,
        }
    }
}

/// Real modules when `mode.production`, mocks otherwise. Mock mode never
/// touches the disk.
pub fn select_services(
    mode: ServiceMode,
    settings: ProductionSettings,
) -> Result<Services, StoreError> {
    if !mode.production {
        tracing::info!("development mode: in-memory store, constant sentiment");
        return Ok(Services::mock());
    }
    let store = EmbeddedStore::open(&settings.store_dir)?;
    let sentiment: Arc<dyn SentimentService> = match settings.sentiment {
        SentimentSource::Embedded(engine) => Arc::new(EngineSentiment(engine)),
        SentimentSource::Remote(url) => Arc::new(RemoteSentiment::new(&url)),
    };
    tracing::info!(store = %settings.store_dir.display(), "production mode");
    Ok(Services {
        store: Arc::new(store),
        sentiment,
        state_dir: Some(settings.store_dir),
    })
}
