use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::backend::auth::Role;

pub const DEFAULT_IMAGE: &str = "threadpulse:latest";
pub const DEFAULT_DASHBOARD_IMAGE: &str = "threadpulse-dashboard:latest";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Sentiment,
    Backend,
    RedditCrawler,
    MarketCrawler,
    Dashboard,
}

impl ComponentKind {
    pub const ALL: [ComponentKind; 5] = [
        ComponentKind::Sentiment,
        ComponentKind::Backend,
        ComponentKind::RedditCrawler,
        ComponentKind::MarketCrawler,
        ComponentKind::Dashboard,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ComponentKind::Sentiment => "sentiment",
            ComponentKind::Backend => "backend",
            ComponentKind::RedditCrawler => "reddit_crawler",
            ComponentKind::MarketCrawler => "market_crawler",
            ComponentKind::Dashboard => "dashboard",
        }
    }

    /// The only access key this component may mount, if it is a crawler.
    pub(crate) fn own_key(self) -> Option<Role> {
        match self {
            ComponentKind::RedditCrawler => Some(Role::RedditCrawler),
            ComponentKind::MarketCrawler => Some(Role::MarketCrawler),
            _ => None,
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StoreVolume {
    #[serde(default = "default_volume")]
    pub volume: String,
    #[serde(default = "default_mount")]
    pub mount: String,
}

fn default_volume() -> String {
    "store-data".into()
}

fn default_mount() -> String {
    "/data/store".into()
}

impl Default for StoreVolume {
    fn default() -> Self {
        Self {
            volume: default_volume(),
            mount: default_mount(),
        }
    }
}

/// One service of the deployment.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentConfig {
    pub name: String,
    pub kind: ComponentKind,
    pub image: Option<String>,
    pub listen: Option<String>,
    pub backend_url: Option<String>,
    pub sentiment_url: Option<String>,
    pub production: Option<bool>,
    /// Seconds between crawl cycles.
    pub poll_interval: Option<u64>,
    /// `live` or `fixture` for crawlers.
    pub mode: Option<String>,
    /// Fixture path inside the container when `mode = "fixture"`.
    pub fixture: Option<String>,
    #[serde(default)]
    pub secrets: Vec<String>,
    #[serde(default)]
    pub ports: Vec<String>,
    #[serde(default)]
    pub env: BTreeMap<String, String>,
}

impl ComponentConfig {
    pub fn image(&self) -> &str {
        self.image.as_deref().unwrap_or(match self.kind {
            ComponentKind::Dashboard => DEFAULT_DASHBOARD_IMAGE,
            _ => DEFAULT_IMAGE,
        })
    }
}

/// The declarative deployment file.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeploymentConfig {
    #[serde(default = "default_secrets_dir")]
    pub secrets_dir: PathBuf,
    /// Every secret the deployment knows about.
    #[serde(default)]
    pub secrets: Vec<String>,
    #[serde(default)]
    pub store: StoreVolume,
    #[serde(rename = "component", default)]
    pub components: Vec<ComponentConfig>,
}

fn default_secrets_dir() -> PathBuf {
    PathBuf::from(super::DEFAULT_SECRETS_DIR)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {reason}")]
    Read { path: PathBuf, reason: String },
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("duplicate service name {0:?}")]
    DuplicateService(String),
    #[error("invalid service name {0:?}")]
    BadServiceName(String),
    #[error("component {component:?} references undeclared secret {secret:?}")]
    DanglingSecret { component: String, secret: String },
    #[error("component {component:?} may not mount {secret:?}")]
    ForeignKey { component: String, secret: String },
    #[error("deployment needs exactly one {kind} component, found {found}")]
    ComponentCount { kind: ComponentKind, found: usize },
    #[error("component {component:?} is missing `{field}`")]
    MissingField {
        component: String,
        field: &'static str,
    },
    #[error("component {component:?}: {reason}")]
    Invalid { component: String, reason: String },
}

impl DeploymentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let config: Self = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn component(&self, kind: ComponentKind) -> Option<&ComponentConfig> {
        self.components.iter().find(|c| c.kind == kind)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let declared: BTreeSet<&str> = self.secrets.iter().map(String::as_str).collect();
        let mut names = BTreeSet::new();
        for c in &self.components {
            if !valid_service_name(&c.name) {
                return Err(ConfigError::BadServiceName(c.name.clone()));
            }
            if !names.insert(c.name.as_str()) {
                return Err(ConfigError::DuplicateService(c.name.clone()));
            }
            for secret in &c.secrets {
                if !declared.contains(secret.as_str()) {
                    return Err(ConfigError::DanglingSecret {
                        component: c.name.clone(),
                        secret: secret.clone(),
                    });
                }
                let foreign_key = Role::ALL
                    .into_iter()
                    .any(|r| r.secret_name() == secret && c.kind.own_key().is_some_and(|own| own != r));
                let key_outside_backend = Role::ALL.iter().any(|r| r.secret_name() == secret)
                    && matches!(c.kind, ComponentKind::Sentiment | ComponentKind::Dashboard);
                if foreign_key || key_outside_backend {
                    return Err(ConfigError::ForeignKey {
                        component: c.name.clone(),
                        secret: secret.clone(),
                    });
                }
            }
            check_fields(c)?;
        }
        for kind in ComponentKind::ALL {
            let found = self.components.iter().filter(|c| c.kind == kind).count();
            if found != 1 {
                return Err(ConfigError::ComponentCount { kind, found });
            }
        }
        if self.store.volume.is_empty() || !valid_service_name(&self.store.volume) {
            return Err(ConfigError::Invalid {
                component: "store".into(),
                reason: format!("invalid volume name {:?}", self.store.volume),
            });
        }
        Ok(())
    }
}

fn check_fields(c: &ComponentConfig) -> Result<(), ConfigError> {
    let missing = |field| ConfigError::MissingField {
        component: c.name.clone(),
        field,
    };
    match c.kind {
        ComponentKind::Sentiment => {
            c.listen.as_ref().ok_or_else(|| missing("listen"))?;
        }
        ComponentKind::Backend => {
            c.listen.as_ref().ok_or_else(|| missing("listen"))?;
            let keys: BTreeSet<&str> = c.secrets.iter().map(String::as_str).collect();
            for role in Role::ALL {
                if !keys.contains(role.secret_name()) {
                    return Err(ConfigError::Invalid {
                        component: c.name.clone(),
                        reason: format!("backend must mount {}", role.secret_name()),
                    });
                }
            }
        }
        ComponentKind::RedditCrawler | ComponentKind::MarketCrawler => {
            c.backend_url.as_ref().ok_or_else(|| missing("backend_url"))?;
            match c.mode.as_deref() {
                None | Some("live") => {}
                Some("fixture") => {
                    c.fixture.as_ref().ok_or_else(|| missing("fixture"))?;
                }
                Some(other) => {
                    return Err(ConfigError::Invalid {
                        component: c.name.clone(),
                        reason: format!("unknown mode {other:?}"),
                    });
                }
            }
            let own = c.kind.own_key().expect("crawler kinds have a key");
            if !c.secrets.iter().any(|s| s == own.secret_name()) {
                return Err(ConfigError::Invalid {
                    component: c.name.clone(),
                    reason: format!("crawler must mount {}", own.secret_name()),
                });
            }
        }
        ComponentKind::Dashboard => {
            c.backend_url.as_ref().ok_or_else(|| missing("backend_url"))?;
        }
    }
    Ok(())
}

fn valid_service_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-' || c == '_')
}
