use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NameError {
    #[error("{0} must not be empty")]
    Empty(&'static str),
    #[error("timestamp must be positive, got {0}")]
    Timestamp(i64),
    #[error("malformed index name {0:?}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexPrefix {
    /// `r_`: one index per subreddit.
    Subreddit,
    /// `f_`: one index per stock.
    Stock,
}

impl IndexPrefix {
    pub fn as_str(self) -> &'static str {
        match self {
            IndexPrefix::Subreddit => "r_",
            IndexPrefix::Stock => "f_",
        }
    }
}

impl FromStr for IndexPrefix {
    type Err = NameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "r_" | "r" => Ok(IndexPrefix::Subreddit),
            "f_" | "f" => Ok(IndexPrefix::Stock),
            other => Err(NameError::Malformed(other.to_owned())),
        }
    }
}

/// A validated index name matching `^[rf]_[a-z0-9_]+$`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct IndexName(String);

impl IndexName {
    pub fn parse(name: &str) -> Result<Self, NameError> {
        let malformed = || NameError::Malformed(name.to_owned());
        let rest = name
            .strip_prefix("r_")
            .or_else(|| name.strip_prefix("f_"))
            .ok_or_else(malformed)?;
        let valid = !rest.is_empty()
            && rest
                .bytes()
                .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_');
        if valid {
            Ok(Self(name.to_owned()))
        } else {
            Err(malformed())
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn prefix(&self) -> IndexPrefix {
        if self.0.starts_with("r_") {
            IndexPrefix::Subreddit
        } else {
            IndexPrefix::Stock
        }
    }
}

impl TryFrom<String> for IndexName {
    type Error = NameError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        Self::parse(&value)
    }
}

impl From<IndexName> for String {
    fn from(name: IndexName) -> String {
        name.0
    }
}

impl fmt::Display for IndexName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for IndexName {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Lowercases and maps every character outside `[a-z0-9]` to `_`.
pub fn normalize_name(raw: &str) -> String {
    raw.trim()
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() {
                c.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect()
}

pub fn index_for_subreddit(name: &str) -> Result<IndexName, NameError> {
    prefixed("r_", name, "subreddit")
}

pub fn index_for_stock(ticker: &str) -> Result<IndexName, NameError> {
    prefixed("f_", ticker, "ticker")
}

fn prefixed(prefix: &str, raw: &str, what: &'static str) -> Result<IndexName, NameError> {
    let norm = normalize_name(raw);
    if norm.is_empty() {
        return Err(NameError::Empty(what));
    }
    Ok(IndexName(format!("{prefix}{norm}")))
}

/// Document ID of a stock bar: `<normalized ticker>_<epoch seconds>`.
pub fn stock_doc_id(ticker: &str, timestamp: i64) -> Result<String, NameError> {
    let norm = normalize_name(ticker);
    if norm.is_empty() {
        return Err(NameError::Empty("ticker"));
    }
    if timestamp <= 0 {
        return Err(NameError::Timestamp(timestamp));
    }
    Ok(format!("{norm}_{timestamp}"))
}
