//! Brute-force reference for bucketed sentiment aggregation, plus a seeded
//! generator of fixture sets. Shared by the store property tests and the
//! acceptance suite.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use threadpulse_core::store::{CommentDoc, SentimentBucket, SentimentQuery};
use threadpulse_core::SentimentScore;

pub const SUBREDDIT: &str = "oracle_sub";

const VOCAB: &[&str] = &[
    "gme", "GME", "Gme", "moon", "short", "squeeze", "amc", "hold", "sell", "buy", "calls",
    "puts", "apes", "tendies", "rocket", "dip", "bag", "holder", "yolo", "dd", "bear", "bull",
    "market", "price", "up", "down", "to", "the", "is", "a", "2021", "q4", "über", "naïve",
];
const SEPARATORS: &[&str] = &[" ", " ", " ", ", ", "-", "! ", " $", ". ", "\t", "/"];

pub struct FixtureSet {
    /// Upserts in submission order; later docs with the same ID replace earlier ones.
    pub docs: Vec<CommentDoc>,
    pub queries: Vec<SentimentQuery>,
}

fn score(rng: &mut StdRng) -> SentimentScore {
    let v = match rng.random_range(0..20) {
        0 | 1 => 0.0,
        2 => 0.05,
        3 => -0.05,
        4 => 1.0,
        5 => -1.0,
        _ => rng.random_range(-1.0..=1.0),
    };
    SentimentScore::try_new(v).unwrap()
}

fn text(rng: &mut StdRng) -> String {
    let n = rng.random_range(0..16);
    let mut out = String::new();
    for i in 0..n {
        if i > 0 {
            out.push_str(SEPARATORS[rng.random_range(0..SEPARATORS.len())]);
        }
        out.push_str(VOCAB[rng.random_range(0..VOCAB.len())]);
    }
    out
}

fn keywords(rng: &mut StdRng) -> Vec<String> {
    let n = rng.random_range(0..4);
    (0..n)
        .map(|_| {
            if rng.random_bool(0.2) {
                let a = VOCAB[rng.random_range(0..VOCAB.len())];
                let b = VOCAB[rng.random_range(0..VOCAB.len())];
                format!("{a} {b}")
            } else {
                let w = VOCAB[rng.random_range(0..VOCAB.len())];
                if rng.random_bool(0.2) { w.to_uppercase() } else { w.to_owned() }
            }
        })
        .collect()
}

/// Deterministic fixture set for `seed`: up to `max_docs` upserts and a
/// handful of queries with random keywords, ranges and bucket widths.
pub fn generate(seed: u64, max_docs: usize) -> FixtureSet {
    let mut rng = StdRng::seed_from_u64(seed);
    let base: i64 = 1_600_000_000 + rng.random_range(0..10_000_000);
    let span: i64 = rng.random_range(1..200_000);
    let n = rng.random_range(0..=max_docs);
    let id_pool = (n + n / 10).max(1);
    let docs = (0..n)
        .map(|_| CommentDoc {
            subreddit: SUBREDDIT.into(),
            text: text(&mut rng),
            timestamp: base + rng.random_range(0..span),
            comment_id: format!("c{}", rng.random_range(0..id_pool)),
            user_id: "u".into(),
            article_id: "t3_o".into(),
            upvotes: rng.random_range(0..100),
            downvotes: rng.random_range(0..10),
            sentiment: score(&mut rng),
        })
        .collect();
    let queries = (0..5)
        .map(|_| {
            let from = base + rng.random_range(-span / 4 - 1..span / 2 + 1);
            let to = from + rng.random_range(1..span + 2);
            // at most ~2000 buckets per query
            let min_width = ((to - from) / 2_000).max(1);
            let width = rng.random_range(min_width..=(to - from).max(min_width));
            SentimentQuery::new(SUBREDDIT, from, to, width).keywords(keywords(&mut rng))
        })
        .collect();
    FixtureSet { docs, queries }
}

/// Space-padded lowercase word sequence: `" w1 w2 … "`.
fn padded_words(s: &str) -> String {
    let lower = s.to_lowercase();
    let mut out = String::from(" ");
    let mut word = String::new();
    for ch in lower.chars() {
        if ch.is_alphanumeric() {
            word.push(ch);
        } else if !word.is_empty() {
            out.push_str(&word);
            out.push(' ');
            word.clear();
        }
    }
    if !word.is_empty() {
        out.push_str(&word);
        out.push(' ');
    }
    out
}

fn label(v: f64) -> i8 {
    if v > 0.05 {
        1
    } else if v < -0.05 {
        -1
    } else {
        0
    }
}

/// Aggregates by scanning the final document set directly.
pub fn aggregate(docs: &[CommentDoc], q: &SentimentQuery) -> Vec<SentimentBucket> {
    let mut latest: HashMap<&str, &CommentDoc> = HashMap::new();
    for d in docs {
        latest.insert(&d.comment_id, d);
    }
    let phrases: Vec<String> = q.keywords.iter().map(|k| padded_words(k)).collect();
    let n = ((q.to - q.from) + q.bucket_width - 1) / q.bucket_width;
    let mut out: Vec<SentimentBucket> = (0..n)
        .map(|i| SentimentBucket {
            bucket_start: q.from + i * q.bucket_width,
            mention_count: 0,
            mean_sentiment: 0.0,
            positive_count: 0,
            neutral_count: 0,
            negative_count: 0,
        })
        .collect();
    let mut sums = vec![0.0; n as usize];
    for d in latest.values() {
        if d.timestamp < q.from || d.timestamp >= q.to {
            continue;
        }
        let hay = padded_words(&d.text);
        if !phrases.iter().all(|p| hay.contains(p.as_str())) {
            continue;
        }
        let i = ((d.timestamp - q.from) / q.bucket_width) as usize;
        let v = d.sentiment.value();
        sums[i] += v;
        let b = &mut out[i];
        b.mention_count += 1;
        match label(v) {
            1 => b.positive_count += 1,
            -1 => b.negative_count += 1,
            _ => b.neutral_count += 1,
        }
    }
    for (b, s) in out.iter_mut().zip(sums) {
        if b.mention_count > 0 {
            b.mean_sentiment = s / b.mention_count as f64;
        }
    }
    out
}

/// Integer fields exact, means within `tol`.
pub fn compare(actual: &[SentimentBucket], expected: &[SentimentBucket], tol: f64) -> Result<(), String> {
    if actual.len() != expected.len() {
        return Err(format!("bucket count {} != {}", actual.len(), expected.len()));
    }
    for (i, (a, e)) in actual.iter().zip(expected).enumerate() {
        let ints = |b: &SentimentBucket| {
            (b.bucket_start, b.mention_count, b.positive_count, b.neutral_count, b.negative_count)
        };
        if ints(a) != ints(e) {
            return Err(format!("bucket {i}: {a:?} != {e:?}"));
        }
        if (a.mean_sentiment - e.mean_sentiment).abs() > tol {
            return Err(format!("bucket {i}: mean {} vs {}", a.mean_sentiment, e.mean_sentiment));
        }
    }
    Ok(())
}
