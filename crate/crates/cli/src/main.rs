mod commands;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tracing_subscriber::EnvFilter;

#[derive(Parser)]
#[command(name = "threadpulse", version, about = "Subreddit sentiment vs. stock price platform")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// GraphQL backend on /graphql. Real or mock services per $PRODUCTION.
    Backend(BackendArgs),
    /// Standalone sentiment service on POST /sentiment.
    Sentiment(SentimentArgs),
    /// Comment crawler loop.
    RedditCrawler(RedditArgs),
    /// Daily stock bar crawler loop.
    MarketCrawler(MarketArgs),
    /// Print the container-orchestration manifest for a deployment file.
    EmitManifest(ManifestArgs),
    /// Validate a deployment file and resolve every secret it references.
    CheckConfig(CheckArgs),
    /// Print the GraphQL schema (SDL).
    PrintSchema,
    /// Administrative calls against a running backend.
    #[command(subcommand)]
    Admin(AdminCommand),
}

#[derive(Args)]
struct BackendArgs {
    #[arg(long, default_value = "127.0.0.1:8000")]
    listen: SocketAddr,
    /// Embedded store directory (production mode only).
    #[arg(long, default_value = "./data/store")]
    store_dir: PathBuf,
    #[arg(long, default_value = threadpulse_core::config::DEFAULT_SECRETS_DIR)]
    secrets_dir: PathBuf,
    /// Score through a remote sentiment service instead of in-process.
    #[arg(long)]
    sentiment_url: Option<String>,
}

#[derive(Args)]
struct SentimentArgs {
    #[arg(long, default_value = "127.0.0.1:8001")]
    listen: SocketAddr,
    /// Valence lexicon (`token<TAB>value`); the built-in one by default.
    #[arg(long, requires = "polarity_lexicon")]
    valence_lexicon: Option<PathBuf>,
    #[arg(long, requires = "valence_lexicon")]
    polarity_lexicon: Option<PathBuf>,
}

#[derive(Args)]
struct CrawlerCommon {
    #[arg(long, default_value = "http://127.0.0.1:8000")]
    backend_url: String,
    #[arg(long, default_value = threadpulse_core::config::DEFAULT_SECRETS_DIR)]
    secrets_dir: PathBuf,
    /// JSON map of per-item progress markers.
    #[arg(long)]
    state_file: PathBuf,
    /// Seconds between cycles.
    #[arg(long)]
    poll_interval: Option<u64>,
    /// Stop after this many cycles (default: run forever).
    #[arg(long)]
    cycles: Option<u64>,
}

#[derive(Args)]
struct RedditArgs {
    #[command(flatten)]
    common: CrawlerCommon,
    /// JSON-lines comment fixture.
    #[arg(long, conflicts_with = "live", required_unless_present = "live")]
    fixture: Option<PathBuf>,
    /// Read from the Reddit API with credentials from the secrets directory.
    #[arg(long)]
    live: bool,
    /// Maximum comments per subreddit per cycle.
    #[arg(long, default_value_t = threadpulse_core::crawler::reddit::DEFAULT_CYCLE_CAP)]
    cap: usize,
}

#[derive(Args)]
struct MarketArgs {
    #[command(flatten)]
    common: CrawlerCommon,
    /// Directory of `<TICKER>.csv` fixtures.
    #[arg(long, conflicts_with = "live", required_unless_present = "live")]
    fixture: Option<PathBuf>,
    /// Read from the Yahoo Finance chart API.
    #[arg(long)]
    live: bool,
    /// First day fetched for a ticker without a watermark (YYYY-MM-DD).
    #[arg(long)]
    history_start: Option<chrono::NaiveDate>,
}

#[derive(Args)]
struct ManifestArgs {
    #[arg(long)]
    config: PathBuf,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides `secrets_dir` from the deployment file.
    #[arg(long)]
    secrets_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum AdminCommand {
    /// Add subreddits and tickers to the tracked lists (uses key_admin).
    Track {
        #[arg(long, default_value = "http://127.0.0.1:8000")]
        backend_url: String,
        #[arg(long, default_value = threadpulse_core::config::DEFAULT_SECRETS_DIR)]
        secrets_dir: PathBuf,
        #[arg(long = "subreddit")]
        subreddits: Vec<String>,
        #[arg(long = "ticker")]
        tickers: Vec<String>,
    },
}

fn init_logging() {
    let filter = EnvFilter::try_from_env("THREADPULSE_LOG")
        .unwrap_or_else(|_| EnvFilter::new("info"));
    tracing_subscriber::fmt()
        .with_env_filter(filter)
        .with_writer(std::io::stderr)
        .with_target(false)
        .init();
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_logging();
    let runtime = tokio::runtime::Runtime::new().expect("tokio runtime");
    match runtime.block_on(commands::run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            tracing::error!("{err:#}");
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
