//! In-memory index structures behind one index directory.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::keywords::{words, KeywordFilter};
use super::model::{CommentDoc, SentimentBucket, StockBar};
use super::naming::stock_doc_id;
use crate::sentiment::{NeutralBand, SentimentLabel};

/// Result of applying a document to an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Applied {
    Created,
    Replaced,
    /// Same ID, byte-identical content: nothing to write.
    Unchanged,
}

/// Comments keyed by ID, with a time index and a word → ID posting map.
#[derive(Debug, Default)]
pub(crate) struct CommentIndex {
    docs: HashMap<String, CommentDoc>,
    by_time: BTreeSet<(i64, String)>,
    postings: HashMap<String, BTreeSet<String>>,
}

impl CommentIndex {
    pub(crate) fn len(&self) -> usize {
        self.docs.len()
    }

    pub(crate) fn get(&self, id: &str) -> Option<&CommentDoc> {
        self.docs.get(id)
    }

    pub(crate) fn probe(&self, doc: &CommentDoc) -> Applied {
        match self.docs.get(&doc.comment_id) {
            None => Applied::Created,
            Some(old) if old == doc => Applied::Unchanged,
            Some(_) => Applied::Replaced,
        }
    }

    pub(crate) fn apply(&mut self, doc: CommentDoc) -> Applied {
        let applied = self.probe(&doc);
        if applied == Applied::Unchanged {
            return applied;
        }
        if let Some(old) = self.docs.remove(&doc.comment_id) {
            self.by_time.remove(&(old.timestamp, old.comment_id.clone()));
            for w in unique_words(&old.text) {
                if let Some(ids) = self.postings.get_mut(&w) {
                    ids.remove(&old.comment_id);
                    if ids.is_empty() {
                        self.postings.remove(&w);
                    }
                }
            }
        }
        self.by_time.insert((doc.timestamp, doc.comment_id.clone()));
        for w in unique_words(&doc.text) {
            self.postings.entry(w).or_default().insert(doc.comment_id.clone());
        }
        self.docs.insert(doc.comment_id.clone(), doc);
        applied
    }

    /// Groups matching comments in `[from, to)` into `bucket_count` buckets of
    /// `width` seconds aligned to `from`.
    pub(crate) fn aggregate(
        &self,
        filter: &KeywordFilter,
        from: i64,
        to: i64,
        width: i64,
        bucket_count: usize,
        band: NeutralBand,
    ) -> Vec<SentimentBucket> {
        let mut buckets: Vec<SentimentBucket> = (0..bucket_count)
            .map(|i| SentimentBucket::empty(from + i as i64 * width))
            .collect();
        let mut sums = vec![0.0f64; bucket_count];

        let mut add = |doc: &CommentDoc| {
            let slot = ((doc.timestamp - from) / width) as usize;
            let bucket = &mut buckets[slot];
            bucket.mention_count += 1;
            sums[slot] += doc.sentiment.value();
            match band.classify(doc.sentiment) {
                SentimentLabel::Positive => bucket.positive_count += 1,
                SentimentLabel::Neutral => bucket.neutral_count += 1,
                SentimentLabel::Negative => bucket.negative_count += 1,
            }
        };

        if filter.is_empty() {
            let lo = (from, String::new());
            let hi = (to, String::new());
            for (_, id) in self.by_time.range(lo..hi) {
                add(&self.docs[id]);
            }
        } else {
            // Scan the shortest posting list, then verify phrase order and range.
            let shortest = filter
                .required_words()
                .map(|w| self.postings.get(w))
                .min_by_key(|ids| ids.map_or(0, BTreeSet::len))
                .flatten();
            let Some(candidates) = shortest else {
                return buckets;
            };
            let mut hits: Vec<&CommentDoc> = candidates
                .iter()
                .map(|id| &self.docs[id])
                .filter(|doc| doc.timestamp >= from && doc.timestamp < to)
                .filter(|doc| filter.matches(&words(&doc.text)))
                .collect();
            hits.sort_by(|a, b| (a.timestamp, &a.comment_id).cmp(&(b.timestamp, &b.comment_id)));
            for doc in hits {
                add(doc);
            }
        }

        for (bucket, sum) in buckets.iter_mut().zip(sums) {
            if bucket.mention_count > 0 {
                bucket.mean_sentiment = sum / bucket.mention_count as f64;
            }
        }
        buckets
    }
}

fn unique_words(text: &str) -> BTreeSet<String> {
    words(text).into_iter().collect()
}

/// Bars of one ticker keyed by timestamp.
#[derive(Debug, Default)]
pub(crate) struct StockIndex {
    bars: BTreeMap<i64, StockBar>,
}

impl StockIndex {
    pub(crate) fn len(&self) -> usize {
        self.bars.len()
    }

    pub(crate) fn probe(&self, bar: &StockBar) -> Applied {
        match self.bars.get(&bar.timestamp) {
            None => Applied::Created,
            Some(old) if old == bar => Applied::Unchanged,
            Some(_) => Applied::Replaced,
        }
    }

    pub(crate) fn apply(&mut self, bar: StockBar) -> Applied {
        let applied = self.probe(&bar);
        if applied != Applied::Unchanged {
            self.bars.insert(bar.timestamp, bar);
        }
        applied
    }

    pub(crate) fn get(&self, id: &str) -> Option<&StockBar> {
        let (_, ts) = id.rsplit_once('_')?;
        let bar = self.bars.get(&ts.parse::<i64>().ok()?)?;
        (stock_doc_id(&bar.stock, bar.timestamp).ok()? == id).then_some(bar)
    }

    pub(crate) fn range(&self, from: i64, to: i64) -> Vec<StockBar> {
        self.bars.range(from..to).map(|(_, bar)| bar.clone()).collect()
    }
}
