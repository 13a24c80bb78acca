use std::io::Write;
use std::sync::Arc;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use threadpulse_core::backend::{
    self, select_services, ProductionSettings, Role, SentimentSource, ServiceMode,
};
use threadpulse_core::client::{BackendClient, GraphqlClient};
use threadpulse_core::clock::{Clock, SystemClock};
use threadpulse_core::config::{
    check_config, emit_orchestration_manifest, load_access_key, load_access_keys, DeploymentConfig,
};
use threadpulse_core::crawler::market::{
    FixtureMarketProvider, MarketCrawler, MarketCrawlerConfig, MarketDataProvider,
    YahooChartProvider,
};
use threadpulse_core::crawler::reddit::{
    CommentSource, FixtureCommentSource, RedditCrawler, RedditCrawlerConfig, RedditCredentials,
    RedditOAuthSource,
};
use threadpulse_core::crawler::{RateBudget, StateFile};
use threadpulse_core::sentiment::{self, load_lexicon};
use threadpulse_core::SentimentEngine;

use crate::{
    AdminCommand, BackendArgs, CheckArgs, Command, ManifestArgs, MarketArgs, RedditArgs,
    SentimentArgs,
};

pub async fn run(command: Command) -> Result<()> {
    match command {
        Command::Backend(a) => serve_backend(a).await,
        Command::Sentiment(a) => serve_sentiment(a).await,
        Command::RedditCrawler(a) => reddit_crawler(a).await,
        Command::MarketCrawler(a) => market_crawler(a).await,
        Command::EmitManifest(a) => emit_manifest(a),
        Command::CheckConfig(a) => check(a),
        Command::PrintSchema => {
            print!("{}", backend::schema_sdl());
            Ok(())
        }
        Command::Admin(AdminCommand::Track {
            backend_url,
            secrets_dir,
            subreddits,
            tickers,
        }) => {
            let key = load_access_key(Role::Admin, &secrets_dir)?;
            let client = GraphqlClient::new(&backend_url, Some(key));
            for s in subreddits {
                let added = client.track_subreddit(&s).await?;
                println!("subreddit {s}: {}", if added { "added" } else { "already tracked" });
            }
            for t in tickers {
                let added = client.track_ticker(&t).await?;
                println!("ticker {t}: {}", if added { "added" } else { "already tracked" });
            }
            Ok(())
        }
    }
}

async fn bind_and_serve(listen: std::net::SocketAddr, app: axum::Router, what: &str) -> Result<()> {
    let listener = tokio::net::TcpListener::bind(listen)
        .await
        .with_context(|| format!("cannot bind {listen}"))?;
    let addr = listener.local_addr()?;
    tracing::info!(%addr, "{what} listening");
    // machine-readable line for supervisors and tests
    println!("listening on http://{addr}");
    std::io::stdout().flush().ok();
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            tokio::signal::ctrl_c().await.ok();
        })
        .await?;
    Ok(())
}

async fn serve_backend(a: BackendArgs) -> Result<()> {
    let mode = ServiceMode::from_env()?;
    let keys = load_access_keys(&a.secrets_dir)?;
    let sentiment = match a.sentiment_url {
        Some(url) => SentimentSource::Remote(url),
        None => SentimentSource::Embedded(Arc::new(SentimentEngine::builtin())),
    };
    let services = select_services(
        mode,
        ProductionSettings {
            store_dir: a.store_dir,
            sentiment,
        },
    )?;
    let schema = backend::schema_for(&services)?;
    tracing::info!(production = mode.production, roles = keys.len(), "backend ready");
    bind_and_serve(a.listen, backend::router(schema, keys), "backend").await
}

async fn serve_sentiment(a: SentimentArgs) -> Result<()> {
    let engine = match (a.valence_lexicon, a.polarity_lexicon) {
        (Some(v), Some(p)) => SentimentEngine::new(
            load_lexicon(&v).with_context(|| format!("valence lexicon {}", v.display()))?,
            load_lexicon(&p).with_context(|| format!("polarity lexicon {}", p.display()))?,
        ),
        _ => SentimentEngine::builtin(),
    };
    bind_and_serve(a.listen, sentiment::http::router(Arc::new(engine)), "sentiment").await
}

async fn reddit_crawler(a: RedditArgs) -> Result<()> {
    let c = a.common;
    let key = load_access_key(Role::RedditCrawler, &c.secrets_dir)?;
    let clock: Arc<dyn Clock> = Arc::new(SystemClock);
    let source: Arc<dyn CommentSource> = match (a.fixture, a.live) {
        (Some(path), false) => Arc::new(FixtureCommentSource::new(path)),
        (None, true) => Arc::new(RedditOAuthSource::new(
            RedditCredentials::load(&c.secrets_dir)?,
            clock.clone(),
        )),
        _ => bail!("exactly one of --fixture or --live is required"),
    };
    let mut config = RedditCrawlerConfig {
        cycle_cap: a.cap,
        ..Default::default()
    };
    if let Some(secs) = c.poll_interval {
        config.poll_interval = Duration::from_secs(secs);
    }
    let mut crawler = RedditCrawler::new(
        Arc::new(GraphqlClient::new(&c.backend_url, Some(key))),
        source,
        Arc::new(RateBudget::new(clock.clone())),
        clock,
        StateFile::open(&c.state_file)?,
        config,
    );
    let reports = crawler.run(c.cycles).await?;
    let submitted: usize = reports.iter().map(|r| r.comments_submitted).sum();
    let failed = reports.iter().filter(|r| r.failed()).count();
    println!("cycles={} submitted={submitted} failed_cycles={failed}", reports.len());
    Ok(())
}

async fn market_crawler(a: MarketArgs) -> Result<()> {
    let c = a.common;
    let key = load_access_key(Role::MarketCrawler, &c.secrets_dir)?;
    let clock: Arc<dyn Clock> = Arc::new(SystemClock);
    let provider: Arc<dyn MarketDataProvider> = match (a.fixture, a.live) {
        (Some(dir), false) => Arc::new(FixtureMarketProvider::new(dir)),
        (None, true) => Arc::new(YahooChartProvider::default()),
        _ => bail!("exactly one of --fixture or --live is required"),
    };
    let mut config = MarketCrawlerConfig::default();
    if let Some(secs) = c.poll_interval {
        config.poll_interval = Duration::from_secs(secs);
    }
    if let Some(day) = a.history_start {
        config.history_start = day;
    }
    let mut crawler = MarketCrawler::new(
        Arc::new(GraphqlClient::new(&c.backend_url, Some(key))),
        provider,
        Arc::new(RateBudget::new(clock.clone())),
        clock,
        StateFile::open(&c.state_file)?,
        config,
    );
    let reports = crawler.run(c.cycles).await?;
    let submitted: usize = reports.iter().map(|r| r.bars_submitted).sum();
    let failed = reports.iter().filter(|r| r.failed()).count();
    println!("cycles={} submitted={submitted} failed_cycles={failed}", reports.len());
    Ok(())
}

fn emit_manifest(a: ManifestArgs) -> Result<()> {
    let config = DeploymentConfig::load(&a.config)?;
    let text = emit_orchestration_manifest(&config)?;
    match a.out {
        Some(path) => std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn check(a: CheckArgs) -> Result<()> {
    let config = DeploymentConfig::load(&a.config)?;
    let dir = a.secrets_dir.unwrap_or_else(|| config.secrets_dir.clone());
    let report = check_config(&config, &dir)?;
    println!("ok: {} services", report.services.len());
    for name in &report.secrets_resolved {
        println!("secret {name}: resolved");
    }
    Ok(())
}
