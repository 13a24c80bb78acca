use super::lexicon::Lexicon;
use super::score::SentimentScore;
use super::tokenize::tokens;

const NEGATED_FACTOR: f64 = -0.5;

/// Averaging polarity analyzer.
///
/// Returns the mean polarity of the tokens found in the lexicon. A booster
/// directly before a word scales it by `1 + increment`; a negator in either of
/// the two preceding tokens multiplies it by -0.5.
pub fn analyze_polarity(text: &str, lexicon: &Lexicon) -> SentimentScore {
    let lower: Vec<String> = tokens(text).iter().map(|t| t.to_lowercase()).collect();
    let mut sum = 0.0;
    let mut matched = 0usize;
    for (i, word) in lower.iter().enumerate() {
        if lexicon.is_booster(word) {
            continue;
        }
        let Some(mut polarity) = lexicon.entry(word) else {
            continue;
        };
        if let Some(inc) = i.checked_sub(1).and_then(|j| lexicon.booster(&lower[j])) {
            polarity *= 1.0 + inc;
        }
        let negated = (1..=2)
            .filter_map(|back| i.checked_sub(back))
            .any(|j| lexicon.negates(&lower[j]));
        if negated {
            polarity *= NEGATED_FACTOR;
        }
        sum += polarity;
        matched += 1;
    }
    if matched == 0 {
        return SentimentScore::NEUTRAL;
    }
    SentimentScore::clamped(sum / matched as f64)
}
