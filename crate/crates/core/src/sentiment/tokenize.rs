/// Whitespace tokens with leading and trailing punctuation stripped.
///
/// Tokens that are nothing but punctuation are dropped. Exclamation marks are
/// counted on the raw text by the valence analyzer, so stripping them here
/// loses nothing.
pub(crate) fn tokens(text: &str) -> Vec<&str> {
    text.split_whitespace()
        .map(|piece| piece.trim_matches(|c: char| !c.is_alphanumeric()))
        .filter(|tok| !tok.is_empty())
        .collect()
}

/// True when the token has at least one cased letter and none in lowercase.
pub(crate) fn is_all_caps(token: &str) -> bool {
    token.chars().any(char::is_uppercase) && !token.chars().any(char::is_lowercase)
}
