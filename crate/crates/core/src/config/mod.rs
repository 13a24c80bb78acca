//! Secrets, access keys, deployment configuration and manifest generation.

mod deployment;
mod manifest;
mod secrets;

pub use deployment::{
    ComponentConfig, ComponentKind, ConfigError, DeploymentConfig, StoreVolume, DEFAULT_IMAGE,
};
pub use manifest::{emit_orchestration_manifest, SECRETS_MOUNT};
pub use secrets::{
    load_access_key, load_access_keys, load_secret, SecretError, SecretRef, SecretValue,
    DEFAULT_SECRETS_DIR,
};

use std::path::Path;

/// Outcome of [`check_config`]: every referenced secret, by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigReport {
    pub services: Vec<String>,
    pub secrets_resolved: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CheckError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Secret(#[from] SecretError),
}

/// Validates a deployment and resolves every secret it references from
/// `secrets_dir`. Access-key files are additionally checked for length and
/// cross-role uniqueness.
pub fn check_config(config: &DeploymentConfig, secrets_dir: &Path) -> Result<ConfigReport, CheckError> {
    config.validate()?;
    let mut names: Vec<&String> = config.components.iter().flat_map(|c| c.secrets.iter()).collect();
    names.sort();
    names.dedup();
    let mut resolved = Vec::with_capacity(names.len());
    for name in names {
        load_secret(name, secrets_dir)?;
        resolved.push(name.clone());
    }
    if config
        .component(ComponentKind::Backend)
        .is_some_and(|b| !b.secrets.is_empty())
    {
        load_access_keys(secrets_dir)?;
    }
    Ok(ConfigReport {
        services: config.components.iter().map(|c| c.name.clone()).collect(),
        secrets_resolved: resolved,
    })
}
