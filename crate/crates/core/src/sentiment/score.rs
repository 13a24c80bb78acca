use std::fmt;

use serde::{Deserialize, Serialize};

/// A sentiment value in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct SentimentScore(f64);

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum ScoreError {
    #[error("sentiment score must be finite, got {0}")]
    NotFinite(f64),
    #[error("sentiment score {0} is outside [-1, 1]")]
    OutOfRange(f64),
}

impl SentimentScore {
    pub const NEUTRAL: SentimentScore = SentimentScore(0.0);

    /// Clamps into `[-1, 1]`; NaN maps to neutral.
    pub fn clamped(value: f64) -> Self {
        if value.is_nan() {
            Self::NEUTRAL
        } else {
            Self(value.clamp(-1.0, 1.0))
        }
    }

    /// Strict constructor used when validating stored documents.
    pub fn try_new(value: f64) -> Result<Self, ScoreError> {
        if !value.is_finite() {
            return Err(ScoreError::NotFinite(value));
        }
        if !(-1.0..=1.0).contains(&value) {
            return Err(ScoreError::OutOfRange(value));
        }
        Ok(Self(value))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for SentimentScore {
    type Error = ScoreError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Self::try_new(value)
    }
}

impl From<SentimentScore> for f64 {
    fn from(score: SentimentScore) -> f64 {
        score.0
    }
}

impl fmt::Display for SentimentScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SentimentLabel {
    Negative,
    Neutral,
    Positive,
}

impl SentimentLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            SentimentLabel::Negative => "negative",
            SentimentLabel::Neutral => "neutral",
            SentimentLabel::Positive => "positive",
        }
    }
}

impl fmt::Display for SentimentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Half-width of the neutral zone. Scores with `|s| <= width` are neutral.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct NeutralBand(f64);

impl NeutralBand {
    pub const DEFAULT_WIDTH: f64 = 0.05;

    pub fn new(width: f64) -> Option<Self> {
        (width.is_finite() && (0.0..1.0).contains(&width)).then_some(Self(width))
    }

    pub fn width(self) -> f64 {
        self.0
    }

    pub fn classify(self, score: SentimentScore) -> SentimentLabel {
        let s = score.value();
        if s > self.0 {
            SentimentLabel::Positive
        } else if s < -self.0 {
            SentimentLabel::Negative
        } else {
            SentimentLabel::Neutral
        }
    }

    /// Returns the valence score when both analyzers agree, neutral otherwise.
    pub fn combine(self, valence: SentimentScore, polarity: SentimentScore) -> SentimentScore {
        if self.classify(valence) == self.classify(polarity) {
            valence
        } else {
            SentimentScore::NEUTRAL
        }
    }
}

impl Default for NeutralBand {
    fn default() -> Self {
        Self(Self::DEFAULT_WIDTH)
    }
}

/// Classifies under the default band.
pub fn classify(score: SentimentScore) -> SentimentLabel {
    NeutralBand::default().classify(score)
}

/// Agreement rule under the default band.
pub fn combine(valence: SentimentScore, polarity: SentimentScore) -> SentimentScore {
    NeutralBand::default().combine(valence, polarity)
}
