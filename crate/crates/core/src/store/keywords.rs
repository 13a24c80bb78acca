use super::StoreError;

/// Lowercased alphanumeric runs of `text`.
pub(crate) fn words(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_owned)
        .collect()
}

/// Conjunction of case-insensitive whole-word keywords.
///
/// A keyword made of several words (`"short squeeze"`) matches when its words
/// appear consecutively. An empty filter matches every text.
#[derive(Debug, Clone, Default)]
pub(crate) struct KeywordFilter {
    phrases: Vec<Vec<String>>,
}

impl KeywordFilter {
    pub(crate) fn new<S: AsRef<str>>(keywords: &[S]) -> Result<Self, StoreError> {
        let mut phrases = Vec::with_capacity(keywords.len());
        for kw in keywords {
            let phrase = words(kw.as_ref());
            if phrase.is_empty() {
                return Err(StoreError::InvalidQuery(format!(
                    "keyword {:?} contains no letters or digits",
                    kw.as_ref()
                )));
            }
            phrases.push(phrase);
        }
        Ok(Self { phrases })
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    /// Every distinct word of every keyword.
    pub(crate) fn required_words(&self) -> impl Iterator<Item = &str> {
        self.phrases.iter().flatten().map(String::as_str)
    }

    pub(crate) fn matches(&self, text_words: &[String]) -> bool {
        self.phrases.iter().all(|phrase| {
            text_words
                .windows(phrase.len())
                .any(|window| window == phrase.as_slice())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(keywords: &[&str], text: &str) -> bool {
        KeywordFilter::new(keywords).unwrap().matches(&words(text))
    }

    #[test]
    fn whole_word_case_insensitive() {
        assert!(m(&["gme"], "Buy $GME now"));
        assert!(m(&["GME"], "gme!"));
        assert!(!m(&["gme"], "gmeeee to the moon"));
        assert!(!m(&["me"], "gme"));
    }

    #[test]
    fn conjunction_and_phrases() {
        assert!(m(&["gme", "moon"], "GME to the moon"));
        assert!(!m(&["gme", "amc"], "GME to the moon"));
        assert!(m(&["short squeeze"], "the short-squeeze is on"));
        assert!(!m(&["short squeeze"], "squeeze the short"));
        assert!(m(&[], "anything"));
        assert!(m(&[], ""));
    }

    #[test]
    fn blank_keyword_rejected() {
        assert!(KeywordFilter::new(&["  "]).is_err());
        assert!(KeywordFilter::new(&["$$"]).is_err());
    }
}
