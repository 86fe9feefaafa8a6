use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::{ConfusionMatrix, EvalReport};
use super::pipeline::{Pipeline, PipelineSpec};
use super::stage1::StageOneClassifier;
use super::Sentiment3;
use crate::error::{Error, Result};
use crate::features::{
    extract, gain_report, AnalyzedTweet, Analyzer, Binning, Catalog, FeatureGainReport, FeatureVector, UnigramConfig,
    UnigramModel,
};

/// Stratified `k`-fold partition. Each class's indices are shuffled with
/// the seeded generator and dealt round-robin, continuing the deal where the
/// previous class stopped, so fold sizes differ by at most one both overall
/// and per class. Each returned fold is sorted.
pub fn stratified_folds<L: Ord>(labels: &[L], k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 || k > labels.len() {
        return Err(Error::invalid(format!("need 2 <= k <= {} folds, got {k}", labels.len())));
    }
    let mut by_class: BTreeMap<&L, Vec<usize>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        by_class.entry(l).or_default().push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![Vec::new(); k];
    let mut next = 0;
    for (class_no, members) in by_class.values_mut().enumerate() {
        if members.len() < k {
            log::warn!("class #{class_no} has {} members, fewer than {k} folds", members.len());
        }
        members.shuffle(&mut rng);
        for &i in members.iter() {
            folds[next].push(i);
            next = (next + 1) % k;
        }
    }
    for f in &mut folds {
        f.sort_unstable();
    }
    Ok(folds)
}

fn complement(n: usize, held_out: &[usize]) -> Vec<usize> {
    let mut mask = vec![true; n];
    for &i in held_out {
        mask[i] = false;
    }
    (0..n).filter(|&i| mask[i]).collect()
}

/// Generic k-fold driver. `fit_predict(train, test)` returns a prediction
/// per test index. Folds run in parallel; results are combined in fold
/// order, so the report does not depend on scheduling.
pub fn cross_validate<L, F>(labels: &[L], classes: &[(L, &str)], k: usize, seed: u64, fit_predict: F) -> Result<EvalReport>
where
    L: Ord + Sync,
    F: Fn(&[usize], &[usize]) -> Result<Vec<L>> + Sync,
{
    let folds = stratified_folds(labels, k, seed)?;
    let per_fold: Vec<Vec<ConfusionMatrix>> = folds
        .par_iter()
        .map(|test| {
            let train = complement(labels.len(), test);
            let predicted = fit_predict(&train, test)?;
            if predicted.len() != test.len() {
                return Err(Error::invalid("fold returned the wrong number of predictions"));
            }
            let truth: Vec<&L> = test.iter().map(|&i| &labels[i]).collect();
            let predicted: Vec<&L> = predicted.iter().collect();
            Ok(classes
                .iter()
                .map(|(c, _)| ConfusionMatrix::one_vs_rest(&truth, &predicted, &c))
                .collect())
        })
        .collect::<Result<_>>()?;
    let names: Vec<String> = classes.iter().map(|(_, n)| n.to_string()).collect();
    Ok(EvalReport::from_folds(&names, &per_fold))
}

fn pick<T: Clone>(xs: &[T], idx: &[usize]) -> Vec<T> {
    idx.iter().map(|&i| xs[i].clone()).collect()
}

fn sentiment_classes() -> Vec<(Sentiment3, &'static str)> {
    Sentiment3::ALL.iter().map(|c| (*c, c.as_str())).collect()
}

/// Full two-step pipeline, retrained on each fold.
pub fn kfold_cv(
    analyzer: &Analyzer,
    tweets: &[AnalyzedTweet],
    labels: &[Sentiment3],
    k: usize,
    spec: &PipelineSpec,
    seed: u64,
) -> Result<EvalReport> {
    cross_validate(labels, &sentiment_classes(), k, seed, |train, test| {
        let p = Pipeline::train(analyzer, &pick(tweets, train), &pick(labels, train), spec)?;
        Ok(test.iter().map(|&i| p.classify(analyzer, &tweets[i])).collect())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objectivity {
    Objective,
    Subjective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolarityLabel {
    Positive,
    Negative,
}

/// Stage-1 objectivity classifier alone, objective vs subjective at 0.5.
pub fn evaluate_objectivity(
    analyzer: &Analyzer,
    tweets: &[AnalyzedTweet],
    labels: &[Sentiment3],
    k: usize,
    spec: &PipelineSpec,
    seed: u64,
) -> Result<EvalReport> {
    let binary: Vec<Objectivity> = labels
        .iter()
        .map(|l| if *l == Sentiment3::Objective { Objectivity::Objective } else { Objectivity::Subjective })
        .collect();
    let classes = [(Objectivity::Objective, "objective"), (Objectivity::Subjective, "subjective")];
    cross_validate(&binary, &classes, k, seed, |train, test| {
        let split = |c| -> Vec<&AnalyzedTweet> { train.iter().filter(|&&i| binary[i] == c).map(|&i| &tweets[i]).collect() };
        let m = StageOneClassifier::train(
            analyzer,
            Catalog::Objectivity,
            ("objective", "subjective"),
            &split(Objectivity::Objective),
            &split(Objectivity::Subjective),
            &spec.stage1,
        )?;
        Ok(test
            .iter()
            .map(|&i| if m.probability(analyzer, &tweets[i]) >= 0.5 { Objectivity::Objective } else { Objectivity::Subjective })
            .collect())
    })
}

/// Stage-1 polarity classifier alone, on subjective tweets only.
pub fn evaluate_polarity(
    analyzer: &Analyzer,
    tweets: &[AnalyzedTweet],
    labels: &[Sentiment3],
    k: usize,
    spec: &PipelineSpec,
    seed: u64,
) -> Result<EvalReport> {
    let (subj, polar): (Vec<AnalyzedTweet>, Vec<PolarityLabel>) = tweets
        .iter()
        .zip(labels)
        .filter_map(|(t, l)| match l {
            Sentiment3::Positive => Some((t.clone(), PolarityLabel::Positive)),
            Sentiment3::Negative => Some((t.clone(), PolarityLabel::Negative)),
            Sentiment3::Objective => None,
        })
        .unzip();
    let classes = [(PolarityLabel::Positive, "positive"), (PolarityLabel::Negative, "negative")];
    cross_validate(&polar, &classes, k, seed, |train, test| {
        let split = |c| -> Vec<&AnalyzedTweet> { train.iter().filter(|&&i| polar[i] == c).map(|&i| &subj[i]).collect() };
        let m = StageOneClassifier::train(
            analyzer,
            Catalog::Polarity,
            ("positive", "negative"),
            &split(PolarityLabel::Positive),
            &split(PolarityLabel::Negative),
            &spec.stage1,
        )?;
        Ok(test
            .iter()
            .map(|&i| if m.probability(analyzer, &subj[i]) >= 0.5 { PolarityLabel::Positive } else { PolarityLabel::Negative })
            .collect())
    })
}

/// Per-fold information gain of a whole catalog. The unigram posterior
/// feature uses a model trained on each fold's training part.
pub fn fold_gain_report(
    analyzer: &Analyzer,
    catalog: Catalog,
    tweets: &[AnalyzedTweet],
    labels: &[Sentiment3],
    k: usize,
    seed: u64,
    unigram: &UnigramConfig,
) -> Result<FeatureGainReport> {
    let (rows, binary): (Vec<&AnalyzedTweet>, Vec<bool>) = match catalog {
        Catalog::Objectivity => tweets.iter().zip(labels).map(|(t, l)| (t, *l == Sentiment3::Objective)).unzip(),
        Catalog::Polarity => tweets
            .iter()
            .zip(labels)
            .filter(|(_, l)| **l != Sentiment3::Objective)
            .map(|(t, l)| (t, *l == Sentiment3::Positive))
            .unzip(),
    };
    let names = match catalog {
        Catalog::Objectivity => ("objective", "subjective"),
        Catalog::Polarity => ("positive", "negative"),
    };
    let folds = stratified_folds(&binary, k, seed)?;
    let per_fold: Vec<Vec<f64>> = folds
        .par_iter()
        .map(|test| {
            let train = complement(rows.len(), test);
            let docs = |want: bool| -> Vec<Vec<String>> {
                train
                    .iter()
                    .filter(|&&i| binary[i] == want)
                    .map(|&i| rows[i].terms(unigram.include_hashtags))
                    .collect()
            };
            let model = UnigramModel::train(names, &docs(true), &docs(false), unigram)?;
            let vectors: Vec<FeatureVector> = train.iter().map(|&i| extract(catalog, rows[i], analyzer, &model)).collect();
            let ls: Vec<bool> = train.iter().map(|&i| binary[i]).collect();
            let r = gain_report(catalog, &vectors, &ls, &[], Binning::BestBinarySplit)?;
            Ok(r.gains.into_iter().next().unwrap_or_default())
        })
        .collect::<Result<_>>()?;
    Ok(FeatureGainReport { catalog, features: catalog.features().to_vec(), gains: per_fold })
}

/// The three evaluation tables: objectivity, polarity and the final
/// pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub seed: u64,
    pub folds: usize,
    pub stage2: String,
    pub objectivity: EvalReport,
    pub polarity: EvalReport,
    pub pipeline: EvalReport,
}

pub fn evaluate_all(
    analyzer: &Analyzer,
    tweets: &[AnalyzedTweet],
    labels: &[Sentiment3],
    k: usize,
    spec: &PipelineSpec,
    seed: u64,
) -> Result<Evaluation> {
    Ok(Evaluation {
        seed,
        folds: k,
        stage2: spec.stage2.to_string(),
        objectivity: evaluate_objectivity(analyzer, tweets, labels, k, spec, seed)?,
        polarity: evaluate_polarity(analyzer, tweets, labels, k, spec, seed)?,
        pipeline: kfold_cv(analyzer, tweets, labels, k, spec, seed)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folds_partition_and_stratify() {
        let labels: Vec<u8> = (0..37).map(|i| (i % 3) as u8).collect();
        let folds = stratified_folds(&labels, 10, 1).unwrap();
        let mut all: Vec<usize> = folds.concat();
        all.sort();
        assert_eq!(all, (0..37).collect::<Vec<_>>());
        let sizes: Vec<usize> = folds.iter().map(Vec::len).collect();
        assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        assert_eq!(folds, stratified_folds(&labels, 10, 1).unwrap());
        assert_ne!(folds, stratified_folds(&labels, 10, 2).unwrap());
    }

    #[test]
    fn bad_k() {
        assert!(stratified_folds(&[1, 2, 3], 1, 0).is_err());
        assert!(stratified_folds(&[1, 2, 3], 4, 0).is_err());
    }

    #[test]
    fn cross_validate_perfect_predictor() {
        let labels: Vec<u8> = (0..20).map(|i| (i % 2) as u8).collect();
        let r = cross_validate(&labels, &[(0, "a"), (1, "b")], 5, 3, |_, test| Ok(test.iter().map(|&i| labels[i]).collect()))
            .unwrap();
        assert_eq!(r.macro_f(), 1.0);
        assert_eq!(r.folds, 5);
    }
}
