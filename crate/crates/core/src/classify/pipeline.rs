use std::path::Path;

use serde::{Deserialize, Serialize};

use super::stage1::{Stage1Config, StageOneClassifier};
use super::stage2::{train_stage2, Stage2Kind, Stage2Params, StageTwoModel};
use super::{Sentiment3, StageOnePoint};
use crate::error::{Error, Result};
use crate::features::{AnalyzedTweet, Analyzer, Catalog};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineSpec {
    pub stage1: Stage1Config,
    pub stage2: Stage2Kind,
    pub stage2_params: Stage2Params,
}

impl Default for PipelineSpec {
    fn default() -> Self {
        PipelineSpec {
            stage1: Stage1Config::default(),
            stage2: Stage2Kind::Svm,
            stage2_params: Stage2Params::default(),
        }
    }
}

impl PipelineSpec {
    pub fn with_stage2(mut self, kind: Stage2Kind) -> Self {
        self.stage2 = kind;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.stage2_params.seed = seed;
        self
    }
}

/// Stage-1 point plus final decision for one tweet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: Sentiment3,
    pub p_obj: f64,
    pub p_pos: f64,
}

/// Objectivity classifier on objective vs subjective, polarity classifier on
/// positive vs negative only.
pub fn train_stage1(
    analyzer: &Analyzer,
    tweets: &[AnalyzedTweet],
    labels: &[Sentiment3],
    config: &Stage1Config,
) -> Result<(StageOneClassifier, StageOneClassifier)> {
    if tweets.len() != labels.len() {
        return Err(Error::invalid("tweets and labels differ in length"));
    }
    let of = |c: Sentiment3| -> Vec<&AnalyzedTweet> {
        tweets.iter().zip(labels).filter(|(_, l)| **l == c).map(|(t, _)| t).collect()
    };
    let (obj, pos, neg) = (of(Sentiment3::Objective), of(Sentiment3::Positive), of(Sentiment3::Negative));
    for (c, docs) in [("objective", &obj), ("positive", &pos), ("negative", &neg)] {
        if docs.is_empty() {
            return Err(Error::MissingClass(c.into()));
        }
    }
    let subj: Vec<&AnalyzedTweet> = pos.iter().chain(&neg).copied().collect();
    let objectivity =
        StageOneClassifier::train(analyzer, Catalog::Objectivity, ("objective", "subjective"), &obj, &subj, config)?;
    let polarity = StageOneClassifier::train(analyzer, Catalog::Polarity, ("positive", "negative"), &pos, &neg, config)?;
    Ok((objectivity, polarity))
}

/// The full two-step classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pipeline {
    pub spec: PipelineSpec,
    pub objectivity: StageOneClassifier,
    pub polarity: StageOneClassifier,
    pub stage2: StageTwoModel,
}

impl Pipeline {
    pub fn train(analyzer: &Analyzer, tweets: &[AnalyzedTweet], labels: &[Sentiment3], spec: &PipelineSpec) -> Result<Self> {
        let (objectivity, polarity) = train_stage1(analyzer, tweets, labels, &spec.stage1)?;
        let points: Vec<StageOnePoint> = tweets
            .iter()
            .map(|t| apply_stage1(&objectivity, &polarity, analyzer, t))
            .collect();
        let stage2 = train_stage2(spec.stage2, &points, labels, &spec.stage2_params)?;
        Ok(Pipeline { spec: spec.clone(), objectivity, polarity, stage2 })
    }

    pub fn apply_stage1(&self, analyzer: &Analyzer, tweet: &AnalyzedTweet) -> StageOnePoint {
        apply_stage1(&self.objectivity, &self.polarity, analyzer, tweet)
    }

    pub fn classify(&self, analyzer: &Analyzer, tweet: &AnalyzedTweet) -> Sentiment3 {
        self.stage2.predict(self.apply_stage1(analyzer, tweet))
    }

    pub fn classify_text(&self, analyzer: &Analyzer, text: &str) -> Classification {
        let p = self.apply_stage1(analyzer, &analyzer.analyze(text));
        Classification { class: self.stage2.predict(p), p_obj: p.p_obj, p_pos: p.p_pos }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Pipeline::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()? + "\n").map_err(|e| Error::io(path, e))
    }
}

pub fn apply_stage1(
    objectivity: &StageOneClassifier,
    polarity: &StageOneClassifier,
    analyzer: &Analyzer,
    tweet: &AnalyzedTweet,
) -> StageOnePoint {
    StageOnePoint::new(objectivity.probability(analyzer, tweet), polarity.probability(analyzer, tweet))
}
