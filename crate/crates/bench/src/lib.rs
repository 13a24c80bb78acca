//! Shared inputs for the benchmarks.

use threadpulse_core::store::{CommentDoc, DocumentStore, EmbeddedStore};
use threadpulse_core::SentimentEngine;

pub const SENTENCES: &[&str] = &[
    "GME to the moon, this is GREAT!!!",
    "I don't think this is a good idea at all.",
    "The earnings call was okay but the guidance is terrible.",
    "Absolutely love the new product, extremely impressive work",
    "meh",
    "Bagholders everywhere, what a disaster of a quarter :(",
];

/// A subreddit index with `n` scored comments spread over one day.
pub fn populated_store(n: usize) -> EmbeddedStore {
    let engine = SentimentEngine::builtin();
    let store = EmbeddedStore::in_memory();
    for i in 0..n {
        let text = format!("{} buy gme {}", SENTENCES[i % SENTENCES.len()], i % 7);
        store
            .upsert_comment(CommentDoc {
                subreddit: "wallstreetbets".into(),
                sentiment: engine.score(&text).sentiment,
                text,
                timestamp: 1_650_000_000 + (i as i64 * 86_400 / n.max(1) as i64),
                comment_id: format!("c{i}"),
                user_id: "u".into(),
                article_id: "t3_b".into(),
                upvotes: 1,
                downvotes: 0,
            })
            .expect("valid doc");
    }
    store
}
