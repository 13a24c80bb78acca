//! Compose manifest generation.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::deployment::{ComponentConfig, ComponentKind, ConfigError, DeploymentConfig};

/// Where the container runtime mounts secret files.
pub const SECRETS_MOUNT: &str = "/run/secrets";
pub const STATE_VOLUME: &str = "crawler-state";
pub const STATE_MOUNT: &str = "/var/lib/threadpulse";

/// Renders a compose file with one service per component.
///
/// Start order is sentiment, then backend (which also waits for the store
/// volume), then crawlers and dashboard. Output is a pure function of the
/// config.
pub fn emit_orchestration_manifest(config: &DeploymentConfig) -> Result<String, ConfigError> {
    config.validate()?;
    let mut components: Vec<&ComponentConfig> = config.components.iter().collect();
    components.sort_by(|a, b| (a.kind, &a.name).cmp(&(b.kind, &b.name)));
    let service_of = |kind| {
        config
            .component(kind)
            .map(|c| c.name.clone())
            .expect("validated deployments contain every kind")
    };

    let mut out = String::new();
    out.push_str("# Generated by `threadpulse emit-manifest`. Do not edit by hand.\n");
    out.push_str("services:\n");
    for c in &components {
        let mut depends = Vec::new();
        let mut env: BTreeMap<String, String> = c.env.clone();
        let mut volumes = Vec::new();
        let command = match c.kind {
            ComponentKind::Sentiment => vec![
                "sentiment".to_owned(),
                "--listen".to_owned(),
                field(c.listen.as_ref()),
            ],
            ComponentKind::Backend => {
                depends.push(service_of(ComponentKind::Sentiment));
                volumes.push(format!("{}:{}", config.store.volume, config.store.mount));
                env.insert(
                    "PRODUCTION".into(),
                    c.production.unwrap_or(false).to_string(),
                );
                let mut cmd = vec![
                    "backend".to_owned(),
                    "--listen".to_owned(),
                    field(c.listen.as_ref()),
                    "--store-dir".to_owned(),
                    config.store.mount.clone(),
                    "--secrets-dir".to_owned(),
                    SECRETS_MOUNT.to_owned(),
                ];
                if let Some(url) = &c.sentiment_url {
                    cmd.extend(["--sentiment-url".to_owned(), url.clone()]);
                }
                cmd
            }
            ComponentKind::RedditCrawler | ComponentKind::MarketCrawler => {
                depends.push(service_of(ComponentKind::Backend));
                volumes.push(format!("{STATE_VOLUME}:{STATE_MOUNT}"));
                let (sub, state) = if c.kind == ComponentKind::RedditCrawler {
                    ("reddit-crawler", "reddit-state.json")
                } else {
                    ("market-crawler", "market-state.json")
                };
                let mut cmd = vec![
                    sub.to_owned(),
                    "--backend-url".to_owned(),
                    field(c.backend_url.as_ref()),
                    "--secrets-dir".to_owned(),
                    SECRETS_MOUNT.to_owned(),
                    "--state-file".to_owned(),
                    format!("{STATE_MOUNT}/{state}"),
                ];
                if let Some(secs) = c.poll_interval {
                    cmd.extend(["--poll-interval".to_owned(), secs.to_string()]);
                }
                match c.mode.as_deref() {
                    Some("fixture") => {
                        cmd.extend(["--fixture".to_owned(), field(c.fixture.as_ref())])
                    }
                    _ => cmd.push("--live".to_owned()),
                }
                cmd
            }
            ComponentKind::Dashboard => {
                depends.push(service_of(ComponentKind::Backend));
                env.insert("BACKEND_URL".into(), field(c.backend_url.as_ref()));
                Vec::new()
            }
        };

        writeln!(out, "  {}:", c.name).unwrap();
        writeln!(out, "    image: {}", quote(c.image())).unwrap();
        if !command.is_empty() {
            writeln!(out, "    command: {}", inline_list(&command)).unwrap();
        }
        list_block(&mut out, "depends_on", &depends);
        if !env.is_empty() {
            out.push_str("    environment:\n");
            for (k, v) in &env {
                writeln!(out, "      {}: {}", quote(k), quote(v)).unwrap();
            }
        }
        list_block(&mut out, "ports", &c.ports);
        let mut secrets = c.secrets.clone();
        secrets.sort();
        secrets.dedup();
        list_block(&mut out, "secrets", &secrets);
        list_block(&mut out, "volumes", &volumes);
        out.push_str("    restart: \"unless-stopped\"\n");
    }

    let mut used: Vec<&String> = components.iter().flat_map(|c| c.secrets.iter()).collect();
    used.sort();
    used.dedup();
    if !used.is_empty() {
        out.push_str("secrets:\n");
        for name in used {
            let path = config.secrets_dir.join(name);
            writeln!(out, "  {name}:").unwrap();
            writeln!(out, "    file: {}", quote(&path.to_string_lossy())).unwrap();
        }
    }

    let mut volumes = vec![config.store.volume.as_str(), STATE_VOLUME];
    volumes.sort_unstable();
    volumes.dedup();
    out.push_str("volumes:\n");
    for v in volumes {
        writeln!(out, "  {v}: {{}}").unwrap();
    }
    Ok(out)
}

fn field(value: Option<&String>) -> String {
    value.cloned().unwrap_or_default()
}

/// JSON string syntax is valid YAML double-quoted scalar syntax.
fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn inline_list(items: &[String]) -> String {
    let quoted: Vec<String> = items.iter().map(|s| quote(s)).collect();
    format!("[{}]", quoted.join(", "))
}

fn list_block(out: &mut String, key: &str, items: &[String]) {
    if items.is_empty() {
        return;
    }
    writeln!(out, "    {key}:").unwrap();
    for item in items {
        writeln!(out, "      - {}", quote(item)).unwrap();
    }
}
