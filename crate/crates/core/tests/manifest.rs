use std::path::PathBuf;

use threadpulse_core::config::{
    check_config, emit_orchestration_manifest, load_access_keys, ConfigError, DeploymentConfig,
};

fn example_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../deploy/threadpulse.toml")
}

fn example() -> DeploymentConfig {
    DeploymentConfig::load(example_path()).unwrap()
}

const GOLDEN: &str = include_str!("fixtures/compose.golden.yml");

#[test]
fn example_manifest_matches_golden() {
    let text = emit_orchestration_manifest(&example()).unwrap();
    if std::env::var_os("THREADPULSE_WRITE_GOLDEN").is_some() {
        let out = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/compose.golden.yml");
        std::fs::write(out, &text).unwrap();
        return;
    }
    assert_eq!(text, GOLDEN);
}

#[test]
fn emit_is_deterministic() {
    let a = emit_orchestration_manifest(&example()).unwrap();
    let b = emit_orchestration_manifest(&DeploymentConfig::load(example_path()).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn full_config_has_five_services() {
    let text = emit_orchestration_manifest(&example()).unwrap();
    let services_block = text.split("\nsecrets:").next().unwrap();
    let services: Vec<&str> = services_block
        .lines()
        .filter(|l| l.starts_with("  ") && !l.starts_with("   ") && l.ends_with(':'))
        .collect();
    assert_eq!(services.len(), 5, "{services:?}");
}

/// `depends_on` entries of one service block.
fn depends_on(manifest: &str, service: &str) -> Vec<String> {
    let header = format!("  {service}:");
    let mut lines = manifest.lines().skip_while(|l| *l != header).skip(1);
    let mut deps = Vec::new();
    let mut inside = false;
    for line in lines.by_ref().take_while(|l| l.starts_with("    ")) {
        if line == "    depends_on:" {
            inside = true;
        } else if inside && line.starts_with("      - ") {
            deps.push(line.trim_start_matches("      - ").trim_matches('"').to_owned());
        } else {
            inside = false;
        }
    }
    deps
}

#[test]
fn startup_order_follows_dependencies() {
    let text = emit_orchestration_manifest(&example()).unwrap();
    assert!(depends_on(&text, "sentiment").is_empty());
    assert_eq!(depends_on(&text, "backend"), ["sentiment"]);
    for s in ["reddit-crawler", "market-crawler", "dashboard"] {
        assert_eq!(depends_on(&text, s), ["backend"], "{s}");
    }
    assert!(text.contains("\"store-data:/data/store\""));
}

#[test]
fn unknown_secret_is_rejected() {
    let mut cfg = example();
    cfg.components[1].secrets.push("not_declared".into());
    assert!(matches!(
        emit_orchestration_manifest(&cfg),
        Err(ConfigError::DanglingSecret { .. })
    ));
}

#[test]
fn duplicate_service_name_is_rejected() {
    let mut cfg = example();
    cfg.components[4].name = "backend".into();
    assert!(matches!(
        emit_orchestration_manifest(&cfg),
        Err(ConfigError::DuplicateService(_))
    ));
}

#[test]
fn crawler_cannot_mount_foreign_key() {
    let mut cfg = example();
    cfg.components[3].secrets.push("key_admin".into());
    assert!(matches!(cfg.validate(), Err(ConfigError::ForeignKey { .. })));
}

#[test]
fn check_config_resolves_secrets_without_leaking() {
    let dir = tempfile::tempdir().unwrap();
    let values = [
        ("key_reddit_crawler", "rk-7f3a9c2e11d04b5a"),
        ("key_market_crawler", "mk-0c8e6d4b2a19f7e3"),
        ("key_admin", "ak-5b1d9f7e3c2a8064"),
        ("reddit_client_id", "cid-aaaaaaaa"),
        ("reddit_client_secret", "csec-bbbbbbbb"),
        ("reddit_username", "bot-user"),
        ("reddit_password", "pw-cccccccc"),
    ];
    for (name, value) in values {
        std::fs::write(dir.path().join(name), format!("{value}\n")).unwrap();
    }
    let cfg = example();
    let report = check_config(&cfg, dir.path()).unwrap();
    assert_eq!(report.services.len(), 5);
    assert_eq!(report.secrets_resolved.len(), 7);
    let rendered = format!("{report:?}\n{}", emit_orchestration_manifest(&cfg).unwrap());
    for (_, value) in values {
        assert!(!rendered.contains(value));
    }
    let keys = load_access_keys(dir.path()).unwrap();
    assert_eq!(keys.len(), 3);

    std::fs::remove_file(dir.path().join("reddit_client_secret")).unwrap();
    let err = check_config(&cfg, dir.path()).unwrap_err().to_string();
    assert!(err.contains("reddit_client_secret"), "{err}");
}
