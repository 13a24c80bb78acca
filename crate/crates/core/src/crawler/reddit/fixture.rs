use std::path::PathBuf;

use async_trait::async_trait;

use super::{CommentPage, CommentSource, SourceError};
use crate::backend::tracked::normalize_subreddit;
use crate::store::RawComment;

/// JSON-lines file of raw comments. The cursor is the number of comments of
/// that subreddit already returned, so appending to the file yields only the
/// new lines on the next fetch.
#[derive(Debug, Clone)]
pub struct FixtureCommentSource {
    path: PathBuf,
}

impl FixtureCommentSource {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    /// All comments in file order.
    pub fn read_all(&self) -> Result<Vec<RawComment>, SourceError> {
        let text = std::fs::read_to_string(&self.path).map_err(|e| {
            SourceError(format!("cannot read fixture {}: {e}", self.path.display()))
        })?;
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                serde_json::from_str(l)
                    .map_err(|e| SourceError(format!("fixture line {}: {e}", i + 1)))
            })
            .collect()
    }
}

#[async_trait]
impl CommentSource for FixtureCommentSource {
    async fn fetch_comments(
        &self,
        subreddit: &str,
        after_cursor: Option<&str>,
        max_items: usize,
    ) -> Result<CommentPage, SourceError> {
        let offset: usize = match after_cursor {
            None => 0,
            Some(c) => c
                .parse()
                .map_err(|_| SourceError(format!("invalid fixture cursor {c:?}")))?,
        };
        let wanted = normalize_subreddit(subreddit);
        let all: Vec<RawComment> = self
            .read_all()?
            .into_iter()
            .filter(|c| normalize_subreddit(&c.subreddit) == wanted)
            .collect();
        let comments: Vec<RawComment> = all.into_iter().skip(offset).take(max_items).collect();
        let next = offset + comments.len();
        Ok(CommentPage {
            comments,
            next_cursor: Some(next.to_string()),
        })
    }
}
