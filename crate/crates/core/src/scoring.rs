//! Keyword popularity scores, keyword comparison and hourly score history.

use std::collections::{BTreeMap, HashSet};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{Pipeline, Sentiment3};
use crate::corpus::{Corpus, SearchParams, Tweet};
use crate::error::{Error, Result};
use crate::features::Analyzer;

/// Most keywords a single stats tick will process.
pub const MAX_TICK_KEYWORDS: usize = 300;
/// Shortest window used for velocity, in hours (one minute).
pub const MIN_WINDOW_HOURS: f64 = 1.0 / 60.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScoreConfig {
    /// Tweets per hour at which the score reaches its full magnitude.
    pub velocity_ref: f64,
    /// Fraction of the base score kept at zero velocity.
    pub floor: f64,
    pub max_samples: usize,
    pub max_results: usize,
    pub window_days: i64,
}

impl Default for ScoreConfig {
    fn default() -> Self {
        ScoreConfig {
            velocity_ref: 200.0,
            floor: 0.25,
            max_samples: 10,
            max_results: 1000,
            window_days: 5,
        }
    }
}

impl ScoreConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.velocity_ref > 0.0 && self.velocity_ref.is_finite()) {
            return Err(Error::invalid("velocity_ref must be positive"));
        }
        if !(0.0..=1.0).contains(&self.floor) {
            return Err(Error::invalid("floor must be in [0, 1]"));
        }
        Ok(())
    }
}

/// `base · (floor + (1 − floor) · min(1, velocity / velocity_ref))` with
/// `base = 100 (pos − neg) / (pos + neg)`, or 0 without opinionated tweets.
pub fn popularity_score(n_pos: u64, n_neg: u64, velocity: f64, config: &ScoreConfig) -> f64 {
    if n_pos + n_neg == 0 {
        return 0.0;
    }
    let base = 100.0 * (n_pos as f64 - n_neg as f64) / (n_pos + n_neg) as f64;
    let intensity = (velocity.max(0.0) / config.velocity_ref).min(1.0);
    base * (config.floor + (1.0 - config.floor) * intensity)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleTweet {
    pub id: String,
    pub text: String,
    pub created_at: i64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Samples {
    pub positive: Vec<SampleTweet>,
    pub negative: Vec<SampleTweet>,
    pub neutral: Vec<SampleTweet>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreResult {
    pub keyword: String,
    pub score: f64,
    pub n_pos: u64,
    pub n_neg: u64,
    pub n_neu: u64,
    /// Newest minus oldest tweet time, at least one minute.
    pub window_seconds: f64,
    /// Tweets per hour over the window.
    pub velocity: f64,
    pub samples: Samples,
}

/// Score already-classified tweets.
pub fn tweet_score(keyword: &str, classified: &[(Tweet, Sentiment3)], config: &ScoreConfig) -> ScoreResult {
    let mut sorted: Vec<&(Tweet, Sentiment3)> = classified.iter().collect();
    sorted.sort_by(|a, b| b.0.created_at.cmp(&a.0.created_at).then_with(|| a.0.id.cmp(&b.0.id)));
    let mut samples = Samples::default();
    let (mut n_pos, mut n_neg, mut n_neu) = (0, 0, 0);
    for (t, class) in sorted.iter().map(|p| (&p.0, p.1)) {
        let (count, bucket) = match class {
            Sentiment3::Positive => (&mut n_pos, &mut samples.positive),
            Sentiment3::Negative => (&mut n_neg, &mut samples.negative),
            Sentiment3::Objective => (&mut n_neu, &mut samples.neutral),
        };
        *count += 1;
        if bucket.len() < config.max_samples {
            bucket.push(SampleTweet { id: t.id.clone(), text: t.text.clone(), created_at: t.created_at });
        }
    }
    let span_seconds = match (sorted.first(), sorted.last()) {
        (Some(newest), Some(oldest)) => (newest.0.created_at - oldest.0.created_at) as f64,
        _ => 0.0,
    };
    let window_seconds = span_seconds.max(MIN_WINDOW_HOURS * 3600.0);
    let hours = window_seconds / 3600.0;
    let velocity = classified.len() as f64 / hours;
    ScoreResult {
        keyword: keyword.to_string(),
        score: popularity_score(n_pos, n_neg, velocity, config),
        n_pos,
        n_neg,
        n_neu,
        window_seconds,
        velocity,
        samples,
    }
}

/// One keyword's score for one clock hour.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HourlyStat {
    pub keyword: String,
    pub hour_start: i64,
    pub score: f64,
    pub n_pos: u64,
    pub n_neg: u64,
    pub n_neu: u64,
}

/// JSON-lines file of [`HourlyStat`], one record per (keyword, hour).
/// Writes replace the whole file through a temporary file and rename, so a
/// failed write leaves the previous contents intact.
#[derive(Debug)]
pub struct StatsStore {
    path: PathBuf,
    write_lock: Mutex<()>,
}

impl StatsStore {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        StatsStore { path: path.into(), write_lock: Mutex::new(()) }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// All records, sorted by keyword then hour. A missing file is an empty
    /// store; on repeated keys the last line wins.
    pub fn load(&self) -> Result<Vec<HourlyStat>> {
        let text = match std::fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(Error::Store(format!("{}: {e}", self.path.display()))),
        };
        let mut by_key = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let rec: HourlyStat = serde_json::from_str(line).map_err(|e| Error::Parse {
                path: self.path.clone(),
                line: i + 1,
                message: e.to_string(),
            })?;
            by_key.insert((rec.keyword.clone(), rec.hour_start), rec);
        }
        Ok(by_key.into_values().collect())
    }

    /// Insert or replace records by (keyword, hour).
    pub fn upsert(&self, records: &[HourlyStat]) -> Result<()> {
        let _guard = self.write_lock.lock().unwrap_or_else(|e| e.into_inner());
        let mut by_key: BTreeMap<(String, i64), HourlyStat> = self
            .load()?
            .into_iter()
            .map(|r| ((r.keyword.clone(), r.hour_start), r))
            .collect();
        for r in records {
            by_key.insert((r.keyword.clone(), r.hour_start), r.clone());
        }
        let store_err = |e: std::io::Error| Error::Store(format!("{}: {e}", self.path.display()));
        let dir = match self.path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(store_err)?;
        for r in by_key.values() {
            serde_json::to_writer(&mut tmp, r)?;
            tmp.write_all(b"\n").map_err(store_err)?;
        }
        tmp.flush().map_err(store_err)?;
        tmp.persist(&self.path).map_err(|e| store_err(e.error))?;
        Ok(())
    }

    /// Records for `keyword` with `from ≤ hour_start < to`, oldest first.
    pub fn series(&self, keyword: &str, from: i64, to: i64) -> Result<Vec<HourlyStat>> {
        if from > to {
            return Err(Error::invalid(format!("from ({from}) is after to ({to})")));
        }
        let key = normalize_keyword(keyword);
        Ok(self
            .load()?
            .into_iter()
            .filter(|r| r.keyword == key && r.hour_start >= from && r.hour_start < to)
            .collect())
    }
}

fn normalize_keyword(k: &str) -> String {
    k.trim().to_lowercase()
}

/// Corpus, trained pipeline and settings needed to score keywords.
#[derive(Debug, Clone)]
pub struct Scorer {
    pub corpus: Corpus,
    pub pipeline: Pipeline,
    pub analyzer: Analyzer,
    pub config: ScoreConfig,
}

impl Scorer {
    pub fn new(corpus: Corpus, pipeline: Pipeline, analyzer: Analyzer, config: ScoreConfig) -> Result<Self> {
        config.validate()?;
        Ok(Scorer { corpus, pipeline, analyzer, config })
    }

    /// The replay clock: the newest tweet in the corpus.
    pub fn now(&self) -> i64 {
        self.corpus.latest().unwrap_or(0)
    }

    fn classify_all(&self, tweets: Vec<Tweet>) -> Vec<(Tweet, Sentiment3)> {
        tweets
            .into_par_iter()
            .map(|t| {
                let c = self.pipeline.classify(&self.analyzer, &self.analyzer.analyze(&t.text));
                (t, c)
            })
            .collect()
    }

    /// Search, classify and score one keyword as of `now`.
    pub fn score(&self, keyword: &str, now: i64) -> Result<ScoreResult> {
        let key = normalize_keyword(keyword);
        let params = SearchParams {
            max_results: self.config.max_results,
            window_days: self.config.window_days,
            ..SearchParams::at(now)
        };
        let found = self.corpus.search(&key, &params)?;
        Ok(tweet_score(&key, &self.classify_all(found.tweets), &self.config))
    }

    /// Score 2 or 3 distinct keywords; best first, ties alphabetical.
    pub fn compare<S: AsRef<str>>(&self, keywords: &[S], now: i64) -> Result<Vec<ScoreResult>> {
        if !(2..=3).contains(&keywords.len()) {
            return Err(Error::invalid(format!("compare takes 2 or 3 keywords, got {}", keywords.len())));
        }
        let mut seen = HashSet::new();
        for k in keywords {
            let key = normalize_keyword(k.as_ref());
            if key.is_empty() {
                return Err(Error::invalid("empty keyword"));
            }
            if !seen.insert(key.clone()) {
                return Err(Error::invalid(format!("duplicate keyword {key:?}")));
            }
        }
        let mut results = keywords
            .iter()
            .map(|k| self.score(k.as_ref(), now))
            .collect::<Result<Vec<_>>>()?;
        results.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.keyword.cmp(&b.keyword)));
        Ok(results)
    }

    /// Score each keyword over `[hour, hour + 3600)` and upsert the records.
    pub fn stats_tick<S: AsRef<str>>(&self, keywords: &[S], hour: i64, store: &StatsStore) -> Result<Vec<HourlyStat>> {
        if keywords.len() > MAX_TICK_KEYWORDS {
            return Err(Error::invalid(format!(
                "at most {MAX_TICK_KEYWORDS} keywords per tick, got {}",
                keywords.len()
            )));
        }
        if hour.rem_euclid(3600) != 0 {
            return Err(Error::invalid(format!("hour {hour} is not aligned to an hour boundary")));
        }
        let mut keys: Vec<String> = Vec::new();
        for k in keywords {
            let key = normalize_keyword(k.as_ref());
            if key.is_empty() {
                return Err(Error::invalid("empty keyword"));
            }
            if !keys.contains(&key) {
                keys.push(key);
            }
        }
        let stats: Vec<HourlyStat> = keys
            .iter()
            .map(|key| {
                let tweets = self.corpus.matching_in_range(key, hour, hour + 3600);
                let r = tweet_score(key, &self.classify_all(tweets), &self.config);
                HourlyStat {
                    keyword: r.keyword,
                    hour_start: hour,
                    score: r.score,
                    n_pos: r.n_pos,
                    n_neg: r.n_neg,
                    n_neu: r.n_neu,
                }
            })
            .collect();
        store.upsert(&stats)?;
        Ok(stats)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ScoreConfig {
        ScoreConfig::default()
    }

    #[test]
    fn formula_edges() {
        assert_eq!(popularity_score(5, 5, 1e6, &cfg()), 0.0);
        assert_eq!(popularity_score(10, 0, 200.0, &cfg()), 100.0);
        assert_eq!(popularity_score(10, 0, 0.0, &cfg()), 25.0);
        assert_eq!(popularity_score(0, 10, 1e9, &cfg()), -100.0);
        assert_eq!(popularity_score(0, 0, 5.0, &cfg()), 0.0);
    }

    fn classified(specs: &[(i64, Sentiment3)]) -> Vec<(Tweet, Sentiment3)> {
        specs
            .iter()
            .enumerate()
            .map(|(i, (at, c))| (Tweet::new(format!("t{i}"), format!("tweet {i}")).at(*at), *c))
            .collect()
    }

    #[test]
    fn window_and_samples() {
        let r = tweet_score("x", &[], &cfg());
        assert_eq!((r.score, r.n_pos, r.window_seconds), (0.0, 0, 60.0));

        let many: Vec<(i64, Sentiment3)> = (0..25).map(|i| (i * 60, Sentiment3::Positive)).collect();
        let r = tweet_score("x", &classified(&many), &cfg());
        assert_eq!(r.window_seconds, 24.0 * 60.0);
        assert_eq!(r.velocity, 25.0 / 0.4);
        assert_eq!(r.samples.positive.len(), 10);
        assert_eq!(r.samples.positive[0].created_at, 24 * 60);
        assert!(r.score > 25.0 && r.score < 100.0);
    }

    #[test]
    fn store_upsert_and_series() {
        let dir = tempfile::tempdir().unwrap();
        let store = StatsStore::new(dir.path().join("stats.jsonl"));
        assert!(store.series("a", 0, 10_000).unwrap().is_empty());
        let rec = |k: &str, h: i64, s: f64| HourlyStat { keyword: k.into(), hour_start: h, score: s, n_pos: 0, n_neg: 0, n_neu: 0 };
        store.upsert(&[rec("a", 3600, 1.0), rec("a", 0, 2.0), rec("b", 0, 3.0)]).unwrap();
        store.upsert(&[rec("a", 3600, 5.0)]).unwrap();
        let s = store.series("A", 0, 7200).unwrap();
        assert_eq!(s.iter().map(|r| (r.hour_start, r.score)).collect::<Vec<_>>(), vec![(0, 2.0), (3600, 5.0)]);
        assert!(store.series("a", 3600, 3600).unwrap().is_empty());
        assert!(store.series("a", 2, 1).is_err());
        assert_eq!(store.load().unwrap().len(), 3);
    }

    #[test]
    fn unavailable_store_fails_cleanly() {
        let store = StatsStore::new("/nonexistent-dir/for/sure/stats.jsonl");
        assert!(matches!(store.upsert(&[]), Err(Error::Store(_))));
    }
}
