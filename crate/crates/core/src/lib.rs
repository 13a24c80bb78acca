//! Sentiment and keyword time series for subreddits, juxtaposed with daily
//! stock bars.
//!
//! The crate holds every server-side piece: the dual-analyzer
//! [`sentiment`] engine, the embedded [`store`] with query-time aggregation,
//! the GraphQL [`backend`], the two [`crawler`] loops and the deployment
//! [`config`] tooling.

pub mod backend;
pub mod client;
pub mod clock;
pub mod config;
pub mod crawler;
pub mod sentiment;
pub mod store;

pub use sentiment::{
    classify, combine, Lexicon, NeutralBand, ScoreBreakdown, SentimentEngine, SentimentLabel,
    SentimentScore,
};
pub use store::{
    CommentDoc, DocumentStore, EmbeddedStore, IndexName, RawComment, SentimentBucket, StockBar,
};
