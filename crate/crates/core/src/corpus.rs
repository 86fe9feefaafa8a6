//! Tweet ingestion, filtering and replayable keyword search.
//!
//! Live Twitter access is replaced by a local JSON-lines corpus. [`Corpus::search`]
//! emulates REST paging: at most `max_results` newest-first matches inside a
//! time window, delivered in pages of at most 100.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use chrono::{DateTime, NaiveDateTime};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lexicons::EnglishWords;
use crate::text::{alnum_terms, tokenize, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tweet {
    pub id: String,
    pub text: String,
    #[serde(default)]
    pub lang: String,
    /// UTC seconds since the epoch.
    #[serde(default)]
    pub created_at: i64,
    #[serde(default, rename = "retweeted")]
    pub is_retweet_hint: bool,
}

impl Tweet {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Tweet {
            id: id.into(),
            text: text.into(),
            lang: "en".into(),
            created_at: 0,
            is_retweet_hint: false,
        }
    }

    pub fn at(mut self, created_at: i64) -> Self {
        self.created_at = created_at;
        self
    }

    pub fn lang(mut self, lang: impl Into<String>) -> Self {
        self.lang = lang.into();
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub tweets: Vec<Tweet>,
    pub missing_text: usize,
    pub malformed: usize,
    pub duplicate_ids: usize,
}

/// Read a JSON-lines corpus.
///
/// Each line needs a string `text`; `id` (string or number), `lang`,
/// `created_at` (RFC 3339, Twitter's classic format, or epoch seconds) and
/// `retweeted` are optional. A missing id becomes the 1-based line number
/// and a missing timestamp becomes 0. Lines that fail to parse, or lack
/// `text`, are skipped with a warning; a repeated id keeps the first record.
pub fn ingest(path: impl AsRef<Path>) -> Result<IngestReport> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    ingest_reader(BufReader::new(file), path)
}

pub fn ingest_reader(reader: impl BufRead, origin: &Path) -> Result<IngestReport> {
    let mut report = IngestReport::default();
    let mut seen = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(origin, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = i + 1;
        let record: Value = match serde_json::from_str(&line) {
            Ok(v @ Value::Object(_)) => v,
            _ => {
                log::warn!("{}:{lineno}: malformed record, skipped", origin.display());
                report.malformed += 1;
                continue;
            }
        };
        match tweet_from_record(&record, lineno) {
            Some(t) => {
                if seen.insert(t.id.clone()) {
                    report.tweets.push(t);
                } else {
                    log::warn!("{}:{lineno}: duplicate id {}, skipped", origin.display(), t.id);
                    report.duplicate_ids += 1;
                }
            }
            None => {
                log::warn!("{}:{lineno}: record has no text, skipped", origin.display());
                report.missing_text += 1;
            }
        }
    }
    Ok(report)
}

fn tweet_from_record(record: &Value, lineno: usize) -> Option<Tweet> {
    let text = record.get("text")?.as_str()?.to_string();
    let id = match record.get("id") {
        Some(Value::String(s)) if !s.is_empty() => s.clone(),
        Some(Value::Number(n)) => n.to_string(),
        _ => lineno.to_string(),
    };
    let lang = record
        .get("lang")
        .and_then(Value::as_str)
        .unwrap_or_default()
        .to_string();
    let created_at = record.get("created_at").and_then(parse_timestamp).unwrap_or(0);
    let is_retweet_hint = record
        .get("retweeted")
        .and_then(Value::as_bool)
        .unwrap_or(false);
    Some(Tweet {
        id,
        text,
        lang,
        created_at,
        is_retweet_hint,
    })
}

fn parse_timestamp(v: &Value) -> Option<i64> {
    match v {
        Value::Number(n) => n.as_i64().or_else(|| n.as_f64().map(|f| f as i64)),
        Value::String(s) => {
            if let Ok(n) = s.parse::<i64>() {
                return Some(n);
            }
            if let Ok(dt) = DateTime::parse_from_rfc3339(s) {
                return Some(dt.timestamp());
            }
            if let Ok(dt) = DateTime::parse_from_str(s, "%a %b %d %H:%M:%S %z %Y") {
                return Some(dt.timestamp());
            }
            NaiveDateTime::parse_from_str(s, "%Y-%m-%d %H:%M:%S")
                .ok()
                .map(|dt| dt.and_utc().timestamp())
        }
        _ => None,
    }
}

/// Write tweets as JSON lines with the same keys [`ingest`] reads.
pub fn write_jsonl(mut out: impl Write, tweets: &[Tweet]) -> Result<()> {
    for t in tweets {
        serde_json::to_writer(&mut out, t)?;
        out.write_all(b"\n")
            .map_err(|e| Error::io("<output>", e))?;
    }
    Ok(())
}

/// Keep tweets whose account language has primary subtag `en`
/// (case-insensitive, so `EN` and `en-GB` pass).
pub fn keep_english_accounts(tweets: Vec<Tweet>) -> Vec<Tweet> {
    tweets.into_iter().filter(|t| is_english_tag(&t.lang)).collect()
}

fn is_english_tag(lang: &str) -> bool {
    let primary = lang.split(['-', '_']).next().unwrap_or_default();
    primary.eq_ignore_ascii_case("en")
}

#[derive(Debug, Clone)]
pub struct FilterConfig {
    pub min_length_chars: usize,
    pub english_words: EnglishWords,
    pub english_match_threshold: f64,
    pub similarity_threshold: f64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            min_length_chars: 20,
            english_words: EnglishWords::shipped().clone(),
            english_match_threshold: 0.15,
            similarity_threshold: 0.90,
        }
    }
}

impl FilterConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("english_match_threshold", self.english_match_threshold),
            ("similarity_threshold", self.similarity_threshold),
        ] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::invalid(format!("{name} must be in (0, 1], got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub retweets_removed: usize,
    pub short_removed: usize,
    pub non_english_removed: usize,
    pub duplicates_removed: usize,
    pub kept: usize,
}

impl FilterReport {
    pub fn total(&self) -> usize {
        self.retweets_removed
            + self.short_removed
            + self.non_english_removed
            + self.duplicates_removed
            + self.kept
    }
}

/// Fraction of word tokens (lowercased, punctuation stripped) found in the
/// English list. Zero when the text has no words.
pub fn english_fraction(text: &str, words: &EnglishWords) -> f64 {
    let tokens = tokenize(text);
    let mut total = 0usize;
    let mut hits = 0usize;
    for t in tokens.iter().filter(|t| t.kind == TokenKind::Word) {
        let w: String = t
            .surface
            .chars()
            .filter(|c| c.is_alphanumeric())
            .flat_map(char::to_lowercase)
            .collect();
        if w.is_empty() {
            continue;
        }
        total += 1;
        if words.contains(&w) {
            hits += 1;
        }
    }
    if total == 0 {
        0.0
    } else {
        hits as f64 / total as f64
    }
}

/// Jaccard similarity of two term sets; two empty sets count as identical.
pub fn jaccard(a: &HashSet<String>, b: &HashSet<String>) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let inter = a.intersection(b).count();
    let union = a.len() + b.len() - inter;
    inter as f64 / union as f64
}

pub fn term_set(text: &str) -> HashSet<String> {
    alnum_terms(text).collect()
}

/// Apply, in order: drop retweets (raw text contains the case-sensitive
/// substring `RT`, so words like `START` also match); drop texts shorter than
/// `min_length_chars` characters; drop texts whose English-word fraction is
/// below the threshold; drop a tweet whose term-set Jaccard similarity with
/// any earlier kept tweet exceeds `similarity_threshold`.
pub fn filter_pipeline(tweets: Vec<Tweet>, config: &FilterConfig) -> Result<(Vec<Tweet>, FilterReport)> {
    config.validate()?;
    let mut report = FilterReport::default();
    let mut survivors = Vec::with_capacity(tweets.len());
    for t in tweets {
        if t.text.contains("RT") {
            report.retweets_removed += 1;
        } else if t.text.chars().count() < config.min_length_chars {
            report.short_removed += 1;
        } else if english_fraction(&t.text, &config.english_words) < config.english_match_threshold {
            report.non_english_removed += 1;
        } else {
            survivors.push(t);
        }
    }

    let mut dedup = NearDuplicateIndex::new(config.similarity_threshold);
    let mut kept = Vec::with_capacity(survivors.len());
    for t in survivors {
        if dedup.admit(term_set(&t.text)) {
            kept.push(t);
        } else {
            report.duplicates_removed += 1;
        }
    }
    report.kept = kept.len();
    Ok((kept, report))
}

/// Kept term sets with an inverted index so that each candidate is only
/// compared against kept sets sharing at least one term. Jaccard above any
/// positive threshold requires a shared term, so results match the full
/// pairwise scan.
struct NearDuplicateIndex {
    threshold: f64,
    sets: Vec<HashSet<String>>,
    postings: HashMap<String, Vec<usize>>,
    has_empty: bool,
}

impl NearDuplicateIndex {
    fn new(threshold: f64) -> Self {
        NearDuplicateIndex {
            threshold,
            sets: Vec::new(),
            postings: HashMap::new(),
            has_empty: false,
        }
    }

    /// Returns true and records the set when it is not a near duplicate.
    fn admit(&mut self, set: HashSet<String>) -> bool {
        if set.is_empty() {
            if self.has_empty {
                return false;
            }
            self.has_empty = true;
            return true;
        }
        let mut candidates: Vec<usize> = set
            .iter()
            .filter_map(|term| self.postings.get(term))
            .flatten()
            .copied()
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        if candidates
            .iter()
            .any(|&i| jaccard(&set, &self.sets[i]) > self.threshold)
        {
            return false;
        }
        let idx = self.sets.len();
        for term in &set {
            self.postings.entry(term.clone()).or_default().push(idx);
        }
        self.sets.push(set);
        true
    }
}

pub const MAX_PAGE_SIZE: usize = 100;

#[derive(Debug, Clone)]
pub struct SearchParams {
    pub max_results: usize,
    pub page_size: usize,
    pub window_days: i64,
    pub now: i64,
}

impl SearchParams {
    pub fn at(now: i64) -> Self {
        SearchParams {
            max_results: 1000,
            page_size: MAX_PAGE_SIZE,
            window_days: 5,
            now,
        }
    }
}

/// Result of a keyword search, newest first, split into pages.
#[derive(Debug, Clone, Default)]
pub struct SearchResults {
    pub tweets: Vec<Tweet>,
    pub page_size: usize,
}

impl SearchResults {
    pub fn pages(&self) -> std::slice::Chunks<'_, Tweet> {
        self.tweets.chunks(self.page_size.max(1))
    }

    /// Number of page requests a client would issue.
    pub fn page_count(&self) -> usize {
        self.tweets.len().div_ceil(self.page_size.max(1))
    }
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    tweets: Vec<Tweet>,
}

impl Corpus {
    pub fn new(mut tweets: Vec<Tweet>) -> Self {
        sort_newest_first(&mut tweets);
        Corpus { tweets }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(Corpus::new(ingest(path)?.tweets))
    }

    /// Tweets newest first, ties by id ascending.
    pub fn tweets(&self) -> &[Tweet] {
        &self.tweets
    }

    pub fn len(&self) -> usize {
        self.tweets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tweets.is_empty()
    }

    /// Timestamp of the newest tweet, used as the replay clock.
    pub fn latest(&self) -> Option<i64> {
        self.tweets.first().map(|t| t.created_at)
    }

    /// Case-insensitive substring search within `[now - window_days, now]`.
    pub fn search(&self, keyword: &str, params: &SearchParams) -> Result<SearchResults> {
        let needle = keyword.trim().to_lowercase();
        if needle.is_empty() {
            return Err(Error::invalid("search keyword is empty"));
        }
        if params.page_size == 0 || params.page_size > MAX_PAGE_SIZE {
            return Err(Error::invalid(format!(
                "page size must be in 1..={MAX_PAGE_SIZE}, got {}",
                params.page_size
            )));
        }
        let oldest = params.now - params.window_days * 86_400;
        let tweets = self
            .tweets
            .iter()
            .filter(|t| t.created_at >= oldest && t.created_at <= params.now)
            .filter(|t| t.text.to_lowercase().contains(&needle))
            .take(params.max_results)
            .cloned()
            .collect();
        Ok(SearchResults {
            tweets,
            page_size: params.page_size,
        })
    }

    /// Keyword matches created in `[start, end)`, newest first, no cap.
    pub fn matching_in_range(&self, keyword: &str, start: i64, end: i64) -> Vec<Tweet> {
        let needle = keyword.trim().to_lowercase();
        self.tweets
            .iter()
            .filter(|t| t.created_at >= start && t.created_at < end)
            .filter(|t| t.text.to_lowercase().contains(&needle))
            .cloned()
            .collect()
    }
}

fn sort_newest_first(tweets: &mut [Tweet]) {
    tweets.sort_by(|a, b| b.created_at.cmp(&a.created_at).then_with(|| a.id.cmp(&b.id)));
}
