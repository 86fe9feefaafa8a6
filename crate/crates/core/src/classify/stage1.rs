use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{
    default_redundant, extract, gain_report, published_selection, select_top_k, AnalyzedTweet, Analyzer, Binning,
    Catalog, Feature, FeatureKind, FeatureVector, Selection, UnigramConfig, UnigramModel,
};

/// How a stage-1 classifier picks its features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum SelectionMode {
    /// The published shortlists.
    Published,
    /// Top `k` by information gain on the training data, minus the
    /// catalog's known-redundant features.
    InformationGain { k: usize },
    /// An explicit list.
    Fixed { features: Vec<Feature> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Stage1Config {
    pub unigram: UnigramConfig,
    pub selection: SelectionMode,
    /// Counts above this share the last categorical bin.
    pub count_cap: u32,
    pub variance_floor: f64,
}

impl Default for Stage1Config {
    fn default() -> Self {
        Stage1Config {
            unigram: UnigramConfig::default(),
            selection: SelectionMode::Published,
            count_cap: 5,
            variance_floor: 1e-6,
        }
    }
}

/// Per-class likelihood of one feature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "model")]
pub enum Likelihood {
    /// The unigram posterior enters directly: `u` for class a, `1 − u` for b.
    Posterior,
    /// Laplace-smoothed distribution over bins `0..probs_a.len()`.
    Categorical { probs_a: Vec<f64>, probs_b: Vec<f64> },
    Gaussian { mean_a: f64, var_a: f64, mean_b: f64, var_b: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureModel {
    pub feature: Feature,
    pub likelihood: Likelihood,
}

fn bin(value: f64, bins: usize) -> usize {
    (value.max(0.0).round() as usize).min(bins - 1)
}

fn gaussian_log_pdf(x: f64, mean: f64, var: f64) -> f64 {
    -0.5 * ((2.0 * std::f64::consts::PI * var).ln() + (x - mean).powi(2) / var)
}

impl FeatureModel {
    fn fit(feature: Feature, a: &[f64], b: &[f64], config: &Stage1Config) -> Self {
        let likelihood = match feature.kind() {
            FeatureKind::Probability => Likelihood::Posterior,
            kind @ (FeatureKind::Flag | FeatureKind::Count) => {
                let bins = if kind == FeatureKind::Flag { 2 } else { config.count_cap as usize + 1 };
                let probs = |xs: &[f64]| {
                    let mut counts = vec![0usize; bins];
                    for &x in xs {
                        counts[bin(x, bins)] += 1;
                    }
                    let den = (xs.len() + bins) as f64;
                    counts.iter().map(|&c| (c + 1) as f64 / den).collect()
                };
                Likelihood::Categorical { probs_a: probs(a), probs_b: probs(b) }
            }
            FeatureKind::Continuous => {
                let moments = |xs: &[f64]| {
                    let n = xs.len() as f64;
                    let mean = xs.iter().sum::<f64>() / n;
                    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
                    (mean, var.max(config.variance_floor))
                };
                let (mean_a, var_a) = moments(a);
                let (mean_b, var_b) = moments(b);
                Likelihood::Gaussian { mean_a, var_a, mean_b, var_b }
            }
        };
        FeatureModel { feature, likelihood }
    }

    /// `(ln P(x | a), ln P(x | b))`.
    fn log_likelihoods(&self, x: f64) -> (f64, f64) {
        match &self.likelihood {
            Likelihood::Posterior => {
                let u = x.clamp(1e-15, 1.0 - 1e-15);
                (u.ln(), (1.0 - u).ln())
            }
            Likelihood::Categorical { probs_a, probs_b } => {
                let i = bin(x, probs_a.len());
                (probs_a[i].ln(), probs_b[i].ln())
            }
            Likelihood::Gaussian { mean_a, var_a, mean_b, var_b } => {
                (gaussian_log_pdf(x, *mean_a, *var_a), gaussian_log_pdf(x, *mean_b, *var_b))
            }
        }
    }
}

/// Naive Bayes over a unigram posterior plus a few hand-crafted features;
/// outputs `P(class_a | tweet)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageOneClassifier {
    pub catalog: Catalog,
    pub unigram: UnigramModel,
    pub selection: Selection,
    pub features: Vec<FeatureModel>,
}

impl StageOneClassifier {
    pub fn train(
        analyzer: &Analyzer,
        catalog: Catalog,
        class_names: (&str, &str),
        docs_a: &[&AnalyzedTweet],
        docs_b: &[&AnalyzedTweet],
        config: &Stage1Config,
    ) -> Result<Self> {
        let terms = |docs: &[&AnalyzedTweet]| -> Vec<Vec<String>> {
            docs.iter().map(|t| t.terms(config.unigram.include_hashtags)).collect()
        };
        let unigram = UnigramModel::train(class_names, &terms(docs_a), &terms(docs_b), &config.unigram)?;
        let vectors = |docs: &[&AnalyzedTweet]| -> Vec<FeatureVector> {
            docs.iter().map(|t| extract(catalog, t, analyzer, &unigram)).collect()
        };
        let va = vectors(docs_a);
        let vb = vectors(docs_b);
        let selection = match &config.selection {
            SelectionMode::Published => published_selection(catalog),
            SelectionMode::Fixed { features } => {
                if let Some(f) = features.iter().find(|f| catalog.position(**f).is_none()) {
                    return Err(Error::invalid(format!("{f} is not in the {catalog:?} catalog")));
                }
                Selection { features: features.clone(), redundant: vec![] }
            }
            SelectionMode::InformationGain { k } => {
                let labels: Vec<u8> = std::iter::repeat_n(0, va.len()).chain(std::iter::repeat_n(1, vb.len())).collect();
                let all: Vec<FeatureVector> = va.iter().chain(&vb).cloned().collect();
                let report = gain_report(catalog, &all, &labels, &[], Binning::BestBinarySplit)?;
                select_top_k(&report, *k, default_redundant(catalog))?
            }
        };
        let column = |vs: &[FeatureVector], f: Feature| -> Vec<f64> { vs.iter().map(|v| v.get(f).unwrap_or(0.0)).collect() };
        let features = selection
            .features
            .iter()
            .map(|&f| FeatureModel::fit(f, &column(&va, f), &column(&vb, f), config))
            .collect();
        Ok(StageOneClassifier { catalog, unigram, selection, features })
    }

    /// `P(class_a | tweet)` with equal class priors. A tweet without tokens
    /// carries no evidence and gets 0.5.
    pub fn probability(&self, analyzer: &Analyzer, tweet: &AnalyzedTweet) -> f64 {
        if tweet.is_empty() {
            return 0.5;
        }
        let v = extract(self.catalog, tweet, analyzer, &self.unigram);
        self.probability_of(&v)
    }

    pub fn probability_of(&self, v: &FeatureVector) -> f64 {
        let (mut la, mut lb) = (0.0, 0.0);
        for m in &self.features {
            let (a, b) = m.log_likelihoods(v.get(m.feature).unwrap_or(0.0));
            la += a;
            lb += b;
        }
        let p = 1.0 / (1.0 + (lb - la).exp());
        if p.is_nan() {
            0.5
        } else {
            p
        }
    }
}
