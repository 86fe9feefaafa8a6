//! Two-step classification: stage-1 Naive Bayes posteriors for objectivity
//! and polarity, then a stage-2 three-way decision on the resulting point.

mod cv;
mod metrics;
mod pipeline;
mod stage1;
mod stage2;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::MergedLabel;

pub use cv::{
    cross_validate, evaluate_all, evaluate_objectivity, evaluate_polarity, fold_gain_report, kfold_cv,
    stratified_folds, Evaluation, Objectivity, PolarityLabel,
};
pub use metrics::{compute_metrics, ClassMetrics, ConfusionMatrix, EvalReport, Metrics};
pub use pipeline::{apply_stage1, train_stage1, Classification, Pipeline, PipelineSpec};
pub use stage1::{FeatureModel, Likelihood, SelectionMode, Stage1Config, StageOneClassifier};
pub use stage2::{train_stage2, Stage2Kind, Stage2Params, StageTwoModel};

/// The three classes the pipeline predicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sentiment3 {
    Objective,
    Positive,
    Negative,
}

impl Sentiment3 {
    pub const ALL: [Sentiment3; 3] = [Sentiment3::Objective, Sentiment3::Positive, Sentiment3::Negative];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sentiment3::Objective => "objective",
            Sentiment3::Positive => "positive",
            Sentiment3::Negative => "negative",
        }
    }

    /// Training class of a merged label; neutral tweets are objective.
    /// Ambiguous, unresolved and non-English tweets are not trained on.
    pub fn from_merged(label: MergedLabel) -> Option<Self> {
        match label {
            MergedLabel::Neutral => Some(Sentiment3::Objective),
            MergedLabel::Positive => Some(Sentiment3::Positive),
            MergedLabel::Negative => Some(Sentiment3::Negative),
            _ => None,
        }
    }
}

impl fmt::Display for Sentiment3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Sentiment3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "objective" | "neutral" => Ok(Sentiment3::Objective),
            "positive" => Ok(Sentiment3::Positive),
            "negative" => Ok(Sentiment3::Negative),
            other => Err(Error::invalid(format!("unknown class {other:?}"))),
        }
    }
}

/// `(P(objective | tweet), P(positive | tweet))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageOnePoint {
    pub p_obj: f64,
    pub p_pos: f64,
}

impl StageOnePoint {
    pub fn new(p_obj: f64, p_pos: f64) -> Self {
        StageOnePoint { p_obj, p_pos }
    }
}
