//! Seeded generator of labeled synthetic tweets.
//!
//! Each class draws most of its words from its own vocabulary and the rest
//! from a shared pool, and follows loose class conventions: objective tweets
//! usually link somewhere, subjective ones use pronouns, exclamations and
//! emoticons of their polarity. Used for end-to-end checks and demos where
//! no hand-labeled corpus is available.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::Sentiment3;
use crate::corpus::Tweet;
use crate::labeling::{LabelSet, SentimentLabel};

const OBJECTIVE_WORDS: &[&str] = &[
    "report", "announced", "according", "official", "statement", "data", "percent", "market", "index", "quarter",
    "update", "schedule", "released", "meeting", "council", "committee", "results", "published", "survey", "county",
    "department", "agency", "week", "million", "revenue", "annual", "launch", "version", "available", "press",
    "conference", "minister", "election", "vote", "budget", "forecast", "temperature", "traffic", "station", "court",
];

const POSITIVE_WORDS: &[&str] = &[
    "love", "great", "awesome", "amazing", "happy", "best", "wonderful", "excited", "beautiful", "fantastic",
    "perfect", "enjoy", "glad", "fun", "brilliant", "nice", "cool", "thanks", "proud", "lovely",
    "excellent", "favorite", "yay", "smile", "incredible", "delighted", "sweet", "fabulous", "superb", "grateful",
    "blessed", "cheerful", "adore", "win", "good", "hope", "thrilled", "gorgeous", "epic", "stunning",
];

const NEGATIVE_WORDS: &[&str] = &[
    "hate", "awful", "terrible", "worst", "sad", "angry", "bad", "horrible", "annoying", "disappointed",
    "sucks", "ugly", "boring", "stupid", "upset", "fail", "broken", "tired", "sick", "pathetic",
    "useless", "disgusting", "miserable", "hurt", "lame", "ruined", "cry", "mad", "fear", "worse",
    "pain", "lost", "poor", "wrong", "nasty", "gross", "hopeless", "sorry", "crap", "fed",
];

const SHARED_WORDS: &[&str] = &[
    "the", "a", "to", "of", "and", "in", "on", "for", "with", "at",
    "today", "tomorrow", "new", "game", "show", "movie", "phone", "city", "team", "people",
    "time", "day", "night", "school", "work", "home", "music", "food", "world", "news",
    "year", "season", "weekend", "morning", "company", "app", "store", "car", "house", "friends",
];

const PRONOUNS: &[&str] = &["I", "we", "you", "my", "me", "our"];
const POSITIVE_EMOTICONS: &[&str] = &[":)", ":-)", ":D", ";)", "<3", "=)"];
const NEGATIVE_EMOTICONS: &[&str] = &[":(", ":-(", ":'(", "D:", ":/", "=("];

/// Topic keyword with relative affinity for (objective, positive,
/// negative) tweets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Topic {
    pub keyword: String,
    pub affinity: [f64; 3],
}

impl Topic {
    pub fn new(keyword: &str, affinity: [f64; 3]) -> Self {
        Topic { keyword: keyword.to_string(), affinity }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthConfig {
    pub per_class: usize,
    pub seed: u64,
    /// Probability that a word comes from the tweet's own class vocabulary.
    pub own_vocab_rate: f64,
    pub min_words: usize,
    pub max_words: usize,
    pub objective_url_rate: f64,
    pub subjective_url_rate: f64,
    pub emoticon_rate: f64,
    pub stray_emoticon_rate: f64,
    pub pronoun_rate: f64,
    pub exclamation_rate: f64,
    /// Timestamps fall uniformly in `[end − span_seconds, end)`.
    pub end: i64,
    pub span_seconds: i64,
    pub topics: Vec<Topic>,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            per_class: 1000,
            seed: 42,
            own_vocab_rate: 0.7,
            min_words: 6,
            max_words: 14,
            objective_url_rate: 0.8,
            subjective_url_rate: 0.1,
            emoticon_rate: 0.6,
            stray_emoticon_rate: 0.05,
            pronoun_rate: 0.7,
            exclamation_rate: 0.5,
            // 2013-03-01T00:00:00Z
            end: 1_362_096_000,
            span_seconds: 3 * 86_400,
            topics: vec![
                Topic::new("obama", [1.0, 0.6, 1.4]),
                Topic::new("iphone", [1.0, 1.5, 0.5]),
                Topic::new("weather", [1.2, 0.8, 1.0]),
                Topic::new("coffee", [0.6, 1.6, 0.6]),
                Topic::new("traffic", [1.0, 0.3, 1.7]),
            ],
        }
    }
}

/// A generated tweet and the class it was generated from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledTweet {
    pub tweet: Tweet,
    pub label: Sentiment3,
}

fn pick<'a, R: Rng>(rng: &mut R, xs: &'a [&'a str]) -> &'a str {
    xs.choose(rng).copied().unwrap_or_default()
}

fn topic_for<'a, R: Rng>(rng: &mut R, topics: &'a [Topic], class: Sentiment3) -> Option<&'a str> {
    let total: f64 = topics.iter().map(|t| t.affinity[class.index()].max(0.0)).sum();
    if total <= 0.0 {
        return None;
    }
    let mut r = rng.gen::<f64>() * total;
    for t in topics {
        let w = t.affinity[class.index()].max(0.0);
        if r < w {
            return Some(&t.keyword);
        }
        r -= w;
    }
    topics.last().map(|t| t.keyword.as_str())
}

fn compose<R: Rng>(rng: &mut R, class: Sentiment3, id: usize, cfg: &SynthConfig) -> String {
    let own = match class {
        Sentiment3::Objective => OBJECTIVE_WORDS,
        Sentiment3::Positive => POSITIVE_WORDS,
        Sentiment3::Negative => NEGATIVE_WORDS,
    };
    let n = rng.gen_range(cfg.min_words..=cfg.max_words.max(cfg.min_words));
    let mut words: Vec<String> = (0..n)
        .map(|_| {
            let pool = if rng.gen_bool(cfg.own_vocab_rate.clamp(0.0, 1.0)) { own } else { SHARED_WORDS };
            pick(rng, pool).to_string()
        })
        .collect();
    if let Some(topic) = topic_for(rng, &cfg.topics, class) {
        let at = rng.gen_range(0..=words.len());
        words.insert(at, topic.to_string());
    }
    let subjective = class != Sentiment3::Objective;
    if subjective && rng.gen_bool(cfg.pronoun_rate) {
        words.insert(0, pick(rng, PRONOUNS).to_string());
    }
    let mut text = words.join(" ");
    if let Some(first) = text.get(..1) {
        text = first.to_uppercase() + &text[1..];
    }
    if subjective && rng.gen_bool(cfg.exclamation_rate) {
        text.push_str(if rng.gen_bool(0.5) { "!" } else { "!!" });
    } else {
        text.push('.');
    }
    let url_rate = if subjective { cfg.subjective_url_rate } else { cfg.objective_url_rate };
    if rng.gen_bool(url_rate) {
        text.push_str(&format!(" http://t.co/{id:x}{}", rng.gen_range(100..1000)));
    }
    let emoticon = match class {
        Sentiment3::Positive if rng.gen_bool(cfg.emoticon_rate) => Some(pick(rng, POSITIVE_EMOTICONS)),
        Sentiment3::Negative if rng.gen_bool(cfg.emoticon_rate) => Some(pick(rng, NEGATIVE_EMOTICONS)),
        Sentiment3::Objective if rng.gen_bool(cfg.stray_emoticon_rate) => {
            let pool = if rng.gen_bool(0.5) { POSITIVE_EMOTICONS } else { NEGATIVE_EMOTICONS };
            Some(pick(rng, pool))
        }
        _ => None,
    };
    if let Some(e) = emoticon {
        text.push(' ');
        text.push_str(e);
    }
    text
}

/// `per_class` tweets of each class, interleaved in a seeded random order.
pub fn generate(cfg: &SynthConfig) -> Vec<LabeledTweet> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut classes: Vec<Sentiment3> = Sentiment3::ALL
        .iter()
        .flat_map(|c| std::iter::repeat_n(*c, cfg.per_class))
        .collect();
    classes.shuffle(&mut rng);
    classes
        .into_iter()
        .enumerate()
        .map(|(i, label)| {
            let text = compose(&mut rng, label, i, cfg);
            let at = cfg.end - 1 - rng.gen_range(0..cfg.span_seconds.max(1));
            LabeledTweet { tweet: Tweet::new(format!("s{i:06}"), text).at(at), label }
        })
        .collect()
}

fn annotator_label(class: Sentiment3) -> SentimentLabel {
    match class {
        Sentiment3::Objective => SentimentLabel::Neutral,
        Sentiment3::Positive => SentimentLabel::Positive,
        Sentiment3::Negative => SentimentLabel::Negative,
    }
}

/// Simulated annotators: each gives the true label, except with
/// probability `noise` a uniformly random one of the five label values.
pub fn annotate(tweets: &[LabeledTweet], annotators: usize, noise: f64, seed: u64) -> Vec<LabelSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    tweets
        .iter()
        .map(|t| LabelSet {
            tweet_id: t.tweet.id.clone(),
            labels: (0..annotators)
                .map(|_| {
                    if rng.gen_bool(noise.clamp(0.0, 1.0)) {
                        *SentimentLabel::ALL.choose(&mut rng).unwrap_or(&SentimentLabel::Ambiguous)
                    } else {
                        annotator_label(t.label)
                    }
                })
                .collect(),
        })
        .collect()
}
