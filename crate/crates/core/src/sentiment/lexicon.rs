use std::collections::{HashMap, HashSet};
use std::path::{Path, PathBuf};

const BOOST_INCREMENT: f64 = 0.293;

/// Intensifiers (positive increment) and dampeners (negative increment).
pub const DEFAULT_BOOSTERS: &[(&str, f64)] = &[
    ("absolutely", BOOST_INCREMENT),
    ("amazingly", BOOST_INCREMENT),
    ("awfully", BOOST_INCREMENT),
    ("completely", BOOST_INCREMENT),
    ("considerable", BOOST_INCREMENT),
    ("considerably", BOOST_INCREMENT),
    ("decidedly", BOOST_INCREMENT),
    ("deeply", BOOST_INCREMENT),
    ("effing", BOOST_INCREMENT),
    ("enormous", BOOST_INCREMENT),
    ("enormously", BOOST_INCREMENT),
    ("entirely", BOOST_INCREMENT),
    ("especially", BOOST_INCREMENT),
    ("exceptional", BOOST_INCREMENT),
    ("exceptionally", BOOST_INCREMENT),
    ("extreme", BOOST_INCREMENT),
    ("extremely", BOOST_INCREMENT),
    ("fabulously", BOOST_INCREMENT),
    ("flipping", BOOST_INCREMENT),
    ("flippin", BOOST_INCREMENT),
    ("frackin", BOOST_INCREMENT),
    ("fracking", BOOST_INCREMENT),
    ("fricking", BOOST_INCREMENT),
    ("frickin", BOOST_INCREMENT),
    ("frigging", BOOST_INCREMENT),
    ("friggin", BOOST_INCREMENT),
    ("fully", BOOST_INCREMENT),
    ("fuckin", BOOST_INCREMENT),
    ("fucking", BOOST_INCREMENT),
    ("fuggin", BOOST_INCREMENT),
    ("fugging", BOOST_INCREMENT),
    ("greatly", BOOST_INCREMENT),
    ("hella", BOOST_INCREMENT),
    ("highly", BOOST_INCREMENT),
    ("hugely", BOOST_INCREMENT),
    ("incredible", BOOST_INCREMENT),
    ("incredibly", BOOST_INCREMENT),
    ("intensely", BOOST_INCREMENT),
    ("major", BOOST_INCREMENT),
    ("majorly", BOOST_INCREMENT),
    ("more", BOOST_INCREMENT),
    ("most", BOOST_INCREMENT),
    ("particularly", BOOST_INCREMENT),
    ("purely", BOOST_INCREMENT),
    ("quite", BOOST_INCREMENT),
    ("really", BOOST_INCREMENT),
    ("remarkably", BOOST_INCREMENT),
    ("so", BOOST_INCREMENT),
    ("substantially", BOOST_INCREMENT),
    ("thoroughly", BOOST_INCREMENT),
    ("total", BOOST_INCREMENT),
    ("totally", BOOST_INCREMENT),
    ("tremendous", BOOST_INCREMENT),
    ("tremendously", BOOST_INCREMENT),
    ("uber", BOOST_INCREMENT),
    ("unbelievably", BOOST_INCREMENT),
    ("unusually", BOOST_INCREMENT),
    ("utter", BOOST_INCREMENT),
    ("utterly", BOOST_INCREMENT),
    ("very", BOOST_INCREMENT),
    ("almost", -BOOST_INCREMENT),
    ("barely", -BOOST_INCREMENT),
    ("hardly", -BOOST_INCREMENT),
    ("kinda", -BOOST_INCREMENT),
    ("kindof", -BOOST_INCREMENT),
    ("kind-of", -BOOST_INCREMENT),
    ("less", -BOOST_INCREMENT),
    ("little", -BOOST_INCREMENT),
    ("marginal", -BOOST_INCREMENT),
    ("marginally", -BOOST_INCREMENT),
    ("occasional", -BOOST_INCREMENT),
    ("occasionally", -BOOST_INCREMENT),
    ("partly", -BOOST_INCREMENT),
    ("scarce", -BOOST_INCREMENT),
    ("scarcely", -BOOST_INCREMENT),
    ("slight", -BOOST_INCREMENT),
    ("slightly", -BOOST_INCREMENT),
    ("somewhat", -BOOST_INCREMENT),
    ("sorta", -BOOST_INCREMENT),
    ("sortof", -BOOST_INCREMENT),
    ("sort-of", -BOOST_INCREMENT),
];

/// Negation words. Any token containing `n't` also negates.
pub const DEFAULT_NEGATORS: &[&str] = &[
    "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt", "ain't", "aren't",
    "can't", "couldn't", "daren't", "didn't", "doesn't", "dont", "hadnt", "hasnt", "havent",
    "isnt", "mightnt", "mustnt", "neither", "don't", "hadn't", "hasn't", "haven't", "isn't",
    "mightn't", "mustn't", "neednt", "needn't", "never", "none", "nope", "nor", "not", "nothing",
    "nowhere", "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent", "oughtn't", "shan't",
    "shouldn't", "uh-uh", "wasn't", "weren't", "without", "wont", "wouldnt", "won't", "wouldn't",
    "rarely", "seldom", "despite",
];

const BUILTIN_VALENCE: &str = include_str!("../../data/valence.tsv");
const BUILTIN_POLARITY: &str = include_str!("../../data/polarity.tsv");

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("cannot read lexicon {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("lexicon line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("invalid lexicon: {0}")]
    Invalid(String),
}

/// Word knowledge shared by both analyzers.
///
/// `entries` maps lowercase tokens to a score on the analyzer's own scale,
/// `boosters` maps modifier tokens to an increment, and `negators` lists
/// tokens that flip the words following them.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: HashMap<String, f64>,
    boosters: HashMap<String, f64>,
    negators: HashSet<String>,
}

impl Lexicon {
    pub fn new(
        entries: HashMap<String, f64>,
        boosters: HashMap<String, f64>,
        negators: HashSet<String>,
    ) -> Result<Self, LexiconError> {
        for (token, value) in entries.iter().chain(boosters.iter()) {
            check_token(token).map_err(LexiconError::Invalid)?;
            if !value.is_finite() {
                return Err(LexiconError::Invalid(format!("value for {token:?} is not finite")));
            }
        }
        for token in &negators {
            check_token(token).map_err(LexiconError::Invalid)?;
            if boosters.contains_key(token) {
                return Err(LexiconError::Invalid(format!(
                    "{token:?} is both a booster and a negator"
                )));
            }
        }
        Ok(Self {
            entries,
            boosters,
            negators,
        })
    }

    /// Parses `token<TAB>value` records, attaching the default boosters and
    /// negators. Blank lines and `#` comments are skipped; later duplicates win.
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut entries = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let raw = raw.trim_end_matches('\r');
            let mut fields = raw.split('\t');
            let (Some(token), Some(value), None) = (fields.next(), fields.next(), fields.next())
            else {
                return Err(LexiconError::Malformed {
                    line,
                    reason: "expected exactly two tab-separated fields".into(),
                });
            };
            let token = token.trim().to_lowercase();
            check_token(&token).map_err(|reason| LexiconError::Malformed { line, reason })?;
            let value: f64 = value.trim().parse().map_err(|_| LexiconError::Malformed {
                line,
                reason: format!("cannot parse value {:?}", value.trim()),
            })?;
            if !value.is_finite() {
                return Err(LexiconError::Malformed {
                    line,
                    reason: "value is not finite".into(),
                });
            }
            entries.insert(token, value);
        }
        Self::new(entries, default_boosters(), default_negators())
    }

    pub fn builtin_valence() -> Self {
        Self::parse(BUILTIN_VALENCE).expect("bundled valence lexicon is well-formed")
    }

    pub fn builtin_polarity() -> Self {
        Self::parse(BUILTIN_POLARITY).expect("bundled polarity lexicon is well-formed")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, token: &str) -> Option<f64> {
        self.entries.get(token).copied()
    }

    pub fn contains(&self, token: &str) -> bool {
        self.entries.contains_key(token)
    }

    pub fn booster(&self, token: &str) -> Option<f64> {
        self.boosters.get(token).copied()
    }

    pub fn is_booster(&self, token: &str) -> bool {
        self.boosters.contains_key(token)
    }

    /// `token` must already be lowercase.
    pub fn negates(&self, token: &str) -> bool {
        self.negators.contains(token) || token.contains("n't")
    }
}

/// Reads a lexicon file from disk.
pub fn load_lexicon(path: impl AsRef<Path>) -> Result<Lexicon, LexiconError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Lexicon::parse(&text)
}

fn default_boosters() -> HashMap<String, f64> {
    DEFAULT_BOOSTERS
        .iter()
        .map(|&(token, inc)| (token.to_owned(), inc))
        .collect()
}

fn default_negators() -> HashSet<String> {
    DEFAULT_NEGATORS.iter().map(|&t| t.to_owned()).collect()
}

fn check_token(token: &str) -> Result<(), String> {
    if token.is_empty() {
        return Err("empty token".into());
    }
    if token.chars().any(char::is_whitespace) {
        return Err(format!("token {token:?} contains whitespace"));
    }
    if token.chars().any(char::is_uppercase) {
        return Err(format!("token {token:?} is not lowercase"));
    }
    Ok(())
}
