use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct UnigramConfig {
    /// Additive smoothing constant `x`.
    pub smoothing: f64,
    /// Words used fewer times than this across both classes are pruned.
    pub min_count: u64,
    /// Use each class's own distinct-word count in the smoothing
    /// denominator instead of the shared vocabulary size.
    pub per_class_vocab: bool,
    /// Weight the posterior by training document frequencies instead of
    /// assuming equal class sizes.
    pub empirical_priors: bool,
    /// Count the word part of hashtags as a unigram.
    pub include_hashtags: bool,
}

impl Default for UnigramConfig {
    fn default() -> Self {
        UnigramConfig {
            smoothing: 1.0,
            min_count: 5,
            per_class_vocab: false,
            empirical_priors: false,
            include_hashtags: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnigramClass {
    A,
    B,
}

/// Laplace-smoothed bag-of-words model over two classes.
///
/// `P(w | c) = (count_c(w) + x) / (total_c + x·V)` where `V` is the size of
/// the pruned vocabulary shared by both classes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnigramModel {
    pub class_a: String,
    pub class_b: String,
    pub counts_a: BTreeMap<String, u64>,
    pub counts_b: BTreeMap<String, u64>,
    pub total_a: u64,
    pub total_b: u64,
    pub vocab: BTreeSet<String>,
    pub smoothing: f64,
    pub min_count: u64,
    #[serde(default)]
    pub per_class_vocab: bool,
    #[serde(default)]
    pub empirical_priors: bool,
    #[serde(default = "yes")]
    pub include_hashtags: bool,
    #[serde(default)]
    pub docs_a: u64,
    #[serde(default)]
    pub docs_b: u64,
}

fn yes() -> bool {
    true
}

impl UnigramModel {
    /// Count terms per class and prune to words with combined count
    /// `≥ min_count`. Totals cover the pruned vocabulary only.
    pub fn train<S: AsRef<str>>(
        class_names: (&str, &str),
        docs_a: &[Vec<S>],
        docs_b: &[Vec<S>],
        config: &UnigramConfig,
    ) -> Result<Self> {
        if docs_a.is_empty() {
            return Err(Error::MissingClass(class_names.0.into()));
        }
        if docs_b.is_empty() {
            return Err(Error::MissingClass(class_names.1.into()));
        }
        let count = |docs: &[Vec<S>]| {
            let mut m: BTreeMap<String, u64> = BTreeMap::new();
            for doc in docs {
                for w in doc {
                    *m.entry(w.as_ref().to_lowercase()).or_default() += 1;
                }
            }
            m
        };
        let mut model = UnigramModel::from_counts(
            class_names,
            count(docs_a),
            count(docs_b),
            config,
        )?;
        model.docs_a = docs_a.len() as u64;
        model.docs_b = docs_b.len() as u64;
        Ok(model)
    }

    /// Build from raw per-class counts, pruning by `config.min_count`.
    pub fn from_counts(
        class_names: (&str, &str),
        counts_a: BTreeMap<String, u64>,
        counts_b: BTreeMap<String, u64>,
        config: &UnigramConfig,
    ) -> Result<Self> {
        if !(config.smoothing >= 0.0 && config.smoothing.is_finite()) {
            return Err(Error::invalid(format!(
                "smoothing must be finite and non-negative, got {}",
                config.smoothing
            )));
        }
        let combined = |w: &str| counts_a.get(w).copied().unwrap_or(0) + counts_b.get(w).copied().unwrap_or(0);
        let vocab: BTreeSet<String> = counts_a
            .keys()
            .chain(counts_b.keys())
            .filter(|w| combined(w) >= config.min_count && combined(w) > 0)
            .cloned()
            .collect();
        let prune = |m: BTreeMap<String, u64>| -> BTreeMap<String, u64> {
            m.into_iter()
                .filter(|(w, c)| *c > 0 && vocab.contains(w))
                .collect()
        };
        let counts_a = prune(counts_a);
        let counts_b = prune(counts_b);
        Ok(UnigramModel {
            class_a: class_names.0.into(),
            class_b: class_names.1.into(),
            total_a: counts_a.values().sum(),
            total_b: counts_b.values().sum(),
            counts_a,
            counts_b,
            vocab,
            smoothing: config.smoothing,
            min_count: config.min_count,
            per_class_vocab: config.per_class_vocab,
            empirical_priors: config.empirical_priors,
            include_hashtags: config.include_hashtags,
            docs_a: 0,
            docs_b: 0,
        })
    }

    pub fn count(&self, word: &str, class: UnigramClass) -> u64 {
        let m = match class {
            UnigramClass::A => &self.counts_a,
            UnigramClass::B => &self.counts_b,
        };
        m.get(word).copied().unwrap_or(0)
    }

    pub fn total(&self, class: UnigramClass) -> u64 {
        match class {
            UnigramClass::A => self.total_a,
            UnigramClass::B => self.total_b,
        }
    }

    /// Vocabulary size used in the smoothing denominator for `class`.
    pub fn smoothing_vocab(&self, class: UnigramClass) -> usize {
        if !self.per_class_vocab {
            return self.vocab.len();
        }
        match class {
            UnigramClass::A => self.counts_a.len(),
            UnigramClass::B => self.counts_b.len(),
        }
    }

    pub fn word_prob(&self, word: &str, class: UnigramClass) -> Result<f64> {
        if !self.vocab.contains(word) {
            return Err(Error::OutOfVocabulary(word.into()));
        }
        let x = self.smoothing;
        let num = self.count(word, class) as f64 + x;
        let den = self.total(class) as f64 + x * self.smoothing_vocab(class) as f64;
        Ok(num / den)
    }

    /// Sum of log word probabilities over in-vocabulary terms.
    pub fn log_likelihood<S: AsRef<str>>(&self, terms: &[S], class: UnigramClass) -> f64 {
        terms
            .iter()
            .filter_map(|t| self.word_prob(t.as_ref(), class).ok())
            .map(f64::ln)
            .sum()
    }

    /// `P(class_a | terms)`. Out-of-vocabulary terms are skipped and a tweet
    /// without in-vocabulary terms gets 0.5 (under equal priors).
    pub fn posterior<S: AsRef<str>>(&self, terms: &[S]) -> f64 {
        let lower: Vec<String> = terms.iter().map(|t| t.as_ref().to_lowercase()).collect();
        let mut la = self.log_likelihood(&lower, UnigramClass::A);
        let mut lb = self.log_likelihood(&lower, UnigramClass::B);
        if self.empirical_priors && self.docs_a + self.docs_b > 0 {
            let n = (self.docs_a + self.docs_b) as f64;
            la += (self.docs_a as f64 / n).ln();
            lb += (self.docs_b as f64 / n).ln();
        }
        let diff = lb - la;
        if diff.is_nan() {
            // both likelihoods vanish (only possible without smoothing)
            return 0.5;
        }
        1.0 / (1.0 + diff.exp())
    }

    /// `P(class_b | terms) = 1 − P(class_a | terms)`.
    pub fn posterior_b<S: AsRef<str>>(&self, terms: &[S]) -> f64 {
        1.0 - self.posterior(terms)
    }

    /// The same model with the two classes exchanged.
    pub fn swapped(&self) -> Self {
        UnigramModel {
            class_a: self.class_b.clone(),
            class_b: self.class_a.clone(),
            counts_a: self.counts_b.clone(),
            counts_b: self.counts_a.clone(),
            total_a: self.total_b,
            total_b: self.total_a,
            docs_a: self.docs_b,
            docs_b: self.docs_a,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(n: usize, w: &str) -> Vec<Vec<&str>> {
        (0..n).map(|_| vec![w]).collect::<Vec<_>>()
    }

    #[test]
    fn prunes_at_threshold() {
        let m = UnigramModel::train(("a", "b"), &words(5, "good"), &words(5, "bad"), &UnigramConfig::default())
            .unwrap();
        assert_eq!(m.vocab.iter().map(String::as_str).collect::<Vec<_>>(), ["bad", "good"]);

        let mut docs_b = words(5, "bad");
        docs_b.push(vec!["rare"; 4]);
        let m = UnigramModel::train(("a", "b"), &words(5, "good"), &docs_b, &UnigramConfig::default())
            .unwrap();
        assert!(!m.vocab.contains("rare"));
        assert_eq!(m.total_b, 5);
    }

    #[test]
    fn empty_class_is_an_error() {
        let none: Vec<Vec<&str>> = vec![];
        let err = UnigramModel::train(("obj", "subj"), &none, &words(1, "x"), &UnigramConfig::default());
        assert!(matches!(err, Err(Error::MissingClass(c)) if c == "obj"));
    }

    fn model(a: &[(&str, u64)], b: &[(&str, u64)], x: f64) -> UnigramModel {
        let cfg = UnigramConfig { smoothing: x, min_count: 0, ..Default::default() };
        let to_map = |v: &[(&str, u64)]| v.iter().map(|(w, c)| (w.to_string(), *c)).collect();
        UnigramModel::from_counts(("a", "b"), to_map(a), to_map(b), &cfg).unwrap()
    }

    #[test]
    fn word_prob_formula() {
        // count 9, total 91, V 9
        let mut a = vec![("w0", 9u64)];
        let fillers: Vec<String> = (1..9).map(|i| format!("w{i}")).collect();
        for (i, f) in fillers.iter().enumerate() {
            a.push((f.as_str(), if i < 2 { 41 } else { 0 }));
        }
        let b: Vec<(&str, u64)> = fillers.iter().map(|f| (f.as_str(), 1)).collect();
        let m = model(&a, &b, 1.0);
        assert_eq!(m.vocab.len(), 9);
        assert_eq!(m.total_a, 91);
        assert_eq!(m.word_prob("w0", UnigramClass::A).unwrap(), 0.1);

        let m0 = model(&[("x", 3), ("y", 1)], &[("x", 1)], 0.0);
        assert_eq!(m0.word_prob("x", UnigramClass::A).unwrap(), 0.75);
        assert!(matches!(m0.word_prob("zzz", UnigramClass::A), Err(Error::OutOfVocabulary(_))));
    }

    #[test]
    fn posterior_edge_cases() {
        let m = model(&[("good", 2)], &[("bad", 1)], 1.0);
        assert_eq!(m.posterior::<&str>(&[]), 0.5);
        assert_eq!(m.posterior(&["unseen"]), 0.5);
        let sym = model(&[("x", 3), ("y", 1)], &[("x", 3), ("y", 1)], 1.0);
        assert_eq!(sym.posterior(&["x", "y", "x"]), 0.5);
        // (3/4) / (3/4 + 1/3) = 9/13
        assert!((m.posterior(&["good"]) - 9.0 / 13.0).abs() < 1e-15);
        assert_eq!(m.posterior_b(&["good"]), 1.0 - m.posterior(&["good"]));
        // unsmoothed, word absent from both classes' counts on one side
        let m0 = model(&[("x", 1)], &[("y", 1)], 0.0);
        assert_eq!(m0.posterior(&["x"]), 1.0);
        assert_eq!(m0.posterior(&["x", "y"]), 0.5);
    }

    #[test]
    fn per_class_vocab_and_priors() {
        let cfg = UnigramConfig { min_count: 0, per_class_vocab: true, ..Default::default() };
        let a = [("x".to_string(), 2u64)].into_iter().collect();
        let b = [("x".to_string(), 1u64), ("y".to_string(), 1)].into_iter().collect();
        let m = UnigramModel::from_counts(("a", "b"), a, b, &cfg).unwrap();
        assert_eq!(m.smoothing_vocab(UnigramClass::A), 1);
        assert_eq!(m.word_prob("x", UnigramClass::A).unwrap(), 1.0);

        let cfg = UnigramConfig { min_count: 0, empirical_priors: true, ..Default::default() };
        let m = UnigramModel::train(("a", "b"), &[vec!["x"], vec!["x"], vec!["x"]], &[vec!["x"]], &cfg).unwrap();
        assert!((m.posterior::<&str>(&[]) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let m = model(&[("good", 7), ("meh", 2)], &[("bad", 3), ("meh", 2)], 1.0);
        let back = UnigramModel::from_json(&m.to_json().unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
