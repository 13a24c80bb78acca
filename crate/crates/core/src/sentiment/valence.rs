use super::lexicon::Lexicon;
use super::score::SentimentScore;
use super::tokenize::{is_all_caps, tokens};

const NORMALIZATION_ALPHA: f64 = 15.0;
const NEGATION_FACTOR: f64 = -0.74;
const CAPS_EMPHASIS: f64 = 0.733;
const EXCLAMATION_STEP: f64 = 0.292;
const EXCLAMATION_CAP: usize = 3;
const BEFORE_BUT: f64 = 0.5;
const AFTER_BUT: f64 = 1.5;
/// Booster damping by distance from the scored word (1, 2, 3 tokens back).
const DISTANCE_DAMPING: [f64; 3] = [1.0, 0.95, 0.9];

/// Valence-summing analyzer.
///
/// Each lexicon word contributes its valence, adjusted by up to three
/// preceding non-lexicon tokens (boosters add a distance-damped increment,
/// negators multiply by the negation factor) and by all-caps emphasis when the
/// text mixes case. Words before the first `but` are halved and words after
/// it weighted by 1.5. The sum is pushed away from zero by up to three
/// exclamation marks and normalized with `s / sqrt(s^2 + 15)`.
pub fn analyze_valence(text: &str, lexicon: &Lexicon) -> SentimentScore {
    let toks = tokens(text);
    if toks.is_empty() {
        return SentimentScore::NEUTRAL;
    }
    let lower: Vec<String> = toks.iter().map(|t| t.to_lowercase()).collect();
    let caps = toks.iter().filter(|t| is_all_caps(t)).count();
    let mixed_case = caps > 0 && caps < toks.len();

    let mut scores: Vec<f64> = Vec::with_capacity(toks.len());
    for (i, word) in lower.iter().enumerate() {
        let Some(mut valence) = lexicon.entry(word).filter(|_| !lexicon.is_booster(word)) else {
            scores.push(0.0);
            continue;
        };
        if mixed_case && is_all_caps(toks[i]) {
            valence += emphasis(valence);
        }
        for (dist, damping) in DISTANCE_DAMPING.iter().enumerate() {
            let Some(j) = i.checked_sub(dist + 1) else {
                break;
            };
            let prev = lower[j].as_str();
            if lexicon.contains(prev) {
                continue;
            }
            if let Some(inc) = lexicon.booster(prev) {
                let mut scalar = if valence < 0.0 { -inc } else { inc };
                if mixed_case && is_all_caps(toks[j]) {
                    scalar += emphasis(valence);
                }
                valence += scalar * damping;
            }
            if lexicon.negates(prev) {
                valence *= NEGATION_FACTOR;
            }
        }
        scores.push(valence);
    }

    if let Some(pivot) = lower.iter().position(|w| w == "but") {
        for (k, score) in scores.iter_mut().enumerate() {
            if k < pivot {
                *score *= BEFORE_BUT;
            } else if k > pivot {
                *score *= AFTER_BUT;
            }
        }
    }

    let mut total: f64 = scores.iter().sum();
    if total != 0.0 {
        let bangs = text.matches('!').count().min(EXCLAMATION_CAP) as f64;
        let amp = bangs * EXCLAMATION_STEP;
        total += if total > 0.0 { amp } else { -amp };
    }
    if total == 0.0 {
        return SentimentScore::NEUTRAL;
    }
    SentimentScore::clamped(total / (total * total + NORMALIZATION_ALPHA).sqrt())
}

fn emphasis(valence: f64) -> f64 {
    if valence > 0.0 {
        CAPS_EMPHASIS
    } else {
        -CAPS_EMPHASIS
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex() -> Lexicon {
        Lexicon::builtin_valence()
    }

    fn v(text: &str) -> f64 {
        analyze_valence(text, &lex()).value()
    }

    #[test]
    fn empty_and_unknown_are_neutral() {
        assert_eq!(v(""), 0.0);
        assert_eq!(v("the market is open"), 0.0);
        assert_eq!(v("!!!"), 0.0);
    }

    #[test]
    fn single_word_normalization() {
        // 1.9 / sqrt(1.9^2 + 15)
        let expected = 1.9 / (1.9f64 * 1.9 + 15.0).sqrt();
        assert!((v("good") - expected).abs() < 1e-15);
    }

    #[test]
    fn negation_flips_sign() {
        assert!(v("not good") < 0.0);
        assert!(v("not good") < v("good"));
        // three tokens back still negates, four does not
        assert!(v("not a b good") < 0.0);
        assert!(v("not a b c good") > 0.0);
    }

    #[test]
    fn boosters_and_dampeners() {
        assert!(v("very good") > v("good"));
        assert!(v("slightly good") < v("good"));
        assert!(v("very bad") < v("bad"));
    }

    #[test]
    fn exclamation_capped() {
        assert!(v("good!") > v("good"));
        assert!(v("good!!!") > v("good!!"));
        assert_eq!(v("good!!!"), v("good!!!!!!"));
    }

    #[test]
    fn caps_only_when_mixed() {
        assert!(v("this is GOOD") > v("this is good"));
        // all-caps text gets no emphasis
        assert_eq!(v("GOOD"), v("good"));
    }

    #[test]
    fn but_reweights_clauses() {
        assert!(v("good but bad") < 0.0);
        assert!(v("bad but good") > 0.0);
    }
}
