//! Rule-based sentiment scoring.
//!
//! Two independent analyzers score a text: a valence analyzer that sums
//! lexicon valences adjusted by boosters, negation, capitalization, punctuation
//! and contrastive clauses, and a polarity analyzer that averages per-token
//! polarities. [`combine`] keeps the valence score only when both analyzers
//! land on the same [`SentimentLabel`].

mod lexicon;
mod polarity;
mod score;
mod tokenize;
mod valence;

pub mod http;

pub use lexicon::{load_lexicon, Lexicon, LexiconError, DEFAULT_BOOSTERS, DEFAULT_NEGATORS};
pub use polarity::analyze_polarity;
pub use score::{classify, combine, NeutralBand, SentimentLabel, SentimentScore, ScoreError};
pub use valence::analyze_valence;

use serde::Serialize;

/// Per-text result with both raw analyzer outputs and the combined value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScoreBreakdown {
    pub sentiment: SentimentScore,
    pub valence: SentimentScore,
    pub polarity: SentimentScore,
    pub label: SentimentLabel,
}

/// Both analyzers plus the agreement band, immutable after construction.
#[derive(Debug, Clone)]
pub struct SentimentEngine {
    valence: Lexicon,
    polarity: Lexicon,
    band: NeutralBand,
}

impl SentimentEngine {
    pub fn new(valence: Lexicon, polarity: Lexicon) -> Self {
        Self {
            valence,
            polarity,
            band: NeutralBand::default(),
        }
    }

    /// Engine over the lexicons bundled with the crate.
    pub fn builtin() -> Self {
        Self::new(Lexicon::builtin_valence(), Lexicon::builtin_polarity())
    }

    pub fn with_band(mut self, band: NeutralBand) -> Self {
        self.band = band;
        self
    }

    pub fn band(&self) -> NeutralBand {
        self.band
    }

    pub fn score(&self, text: &str) -> ScoreBreakdown {
        let valence = analyze_valence(text, &self.valence);
        let polarity = analyze_polarity(text, &self.polarity);
        let sentiment = self.band.combine(valence, polarity);
        ScoreBreakdown {
            sentiment,
            valence,
            polarity,
            label: self.band.classify(sentiment),
        }
    }
}
