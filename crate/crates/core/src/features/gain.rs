use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{Catalog, Feature, FeatureVector};
use crate::error::{Error, Result};

/// How feature values are grouped before computing conditional entropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Binning {
    /// One bin per distinct value. Exact for discrete features.
    Distinct,
    /// The single threshold cut that maximizes gain.
    #[default]
    BestBinarySplit,
}

fn label_ids<L: Ord>(labels: &[L]) -> (Vec<usize>, usize) {
    let mut ids = BTreeMap::new();
    for l in labels {
        let n = ids.len();
        ids.entry(l).or_insert(n);
    }
    (labels.iter().map(|l| ids[l]).collect(), ids.len())
}

fn entropy_of_counts(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// Shannon entropy of the label distribution, in bits.
pub fn entropy<L: Ord>(labels: &[L]) -> f64 {
    let (ids, k) = label_ids(labels);
    let mut counts = vec![0; k];
    for i in ids {
        counts[i] += 1;
    }
    entropy_of_counts(&counts)
}

fn check<L>(values: &[f64], labels: &[L]) -> Result<()> {
    if values.len() != labels.len() {
        return Err(Error::invalid(format!(
            "{} values but {} labels",
            values.len(),
            labels.len()
        )));
    }
    if values.is_empty() {
        return Err(Error::invalid("information gain of an empty sample"));
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::invalid("feature value is NaN"));
    }
    Ok(())
}

/// The threshold `t` (split is `value <= t`) with the highest gain, and that
/// gain. `None` when all values are equal.
pub fn best_binary_split<L: Ord>(values: &[f64], labels: &[L]) -> Result<Option<(f64, f64)>> {
    check(values, labels)?;
    let (ids, k) = label_ids(labels);
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut total = vec![0; k];
    for &i in &ids {
        total[i] += 1;
    }
    let h = entropy_of_counts(&total);
    let n = values.len() as f64;
    let mut left = vec![0; k];
    let mut right = total.clone();
    let mut best: Option<(f64, f64)> = None;
    for (pos, &i) in order.iter().enumerate() {
        left[ids[i]] += 1;
        right[ids[i]] -= 1;
        let Some(&next) = order.get(pos + 1) else { break };
        if values[next] == values[i] {
            continue;
        }
        let nl = (pos + 1) as f64;
        let cond = nl / n * entropy_of_counts(&left) + (n - nl) / n * entropy_of_counts(&right);
        let gain = (h - cond).max(0.0);
        if best.is_none_or(|(_, g)| gain > g) {
            best = Some(((values[i] + values[next]) / 2.0, gain));
        }
    }
    Ok(best)
}

/// `H(labels) − Σ_v p(v)·H(labels | v)` in bits, never negative.
pub fn information_gain<L: Ord>(values: &[f64], labels: &[L], binning: Binning) -> Result<f64> {
    check(values, labels)?;
    match binning {
        Binning::BestBinarySplit => Ok(best_binary_split(values, labels)?.map_or(0.0, |(_, g)| g)),
        Binning::Distinct => {
            let (ids, k) = label_ids(labels);
            let mut bins: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
            let mut total = vec![0; k];
            for (v, &l) in values.iter().zip(&ids) {
                // normalize -0.0 so it shares a bin with 0.0
                let key = if *v == 0.0 { 0.0f64 } else { *v }.to_bits();
                bins.entry(key).or_insert_with(|| vec![0; k])[l] += 1;
                total[l] += 1;
            }
            let n = values.len() as f64;
            let cond: f64 = bins
                .values()
                .map(|c| c.iter().sum::<usize>() as f64 / n * entropy_of_counts(c))
                .sum();
            Ok((entropy_of_counts(&total) - cond).max(0.0))
        }
    }
}

/// Information gain of every feature, computed separately on the training
/// part of each cross-validation fold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureGainReport {
    pub catalog: Catalog,
    pub features: Vec<Feature>,
    /// `gains[fold][feature]`, bits.
    pub gains: Vec<Vec<f64>>,
}

impl FeatureGainReport {
    pub fn mean_gains(&self) -> Vec<f64> {
        let folds = self.gains.len().max(1) as f64;
        (0..self.features.len())
            .map(|j| self.gains.iter().map(|g| g[j]).sum::<f64>() / folds)
            .collect()
    }

    /// Features by descending mean gain; ties keep catalog order.
    pub fn ranked(&self) -> Vec<(Feature, f64)> {
        let mut r: Vec<(Feature, f64)> = self.features.iter().copied().zip(self.mean_gains()).collect();
        r.sort_by(|a, b| b.1.total_cmp(&a.1));
        r
    }
}

/// Gain of each catalog feature per fold. `test_folds[i]` holds the indices
/// held out in fold `i`; gains use the remaining rows. With no folds the
/// whole sample is one fold.
pub fn gain_report<L: Ord + Sync>(
    catalog: Catalog,
    vectors: &[FeatureVector],
    labels: &[L],
    test_folds: &[Vec<usize>],
    binning: Binning,
) -> Result<FeatureGainReport> {
    if vectors.len() != labels.len() {
        return Err(Error::invalid("feature vectors and labels differ in length"));
    }
    let features = catalog.features().to_vec();
    let column = |f: Feature| -> Result<Vec<f64>> {
        vectors
            .iter()
            .map(|v| {
                v.get(f)
                    .ok_or_else(|| Error::invalid(format!("feature vector lacks {f}")))
            })
            .collect()
    };
    let columns: Vec<Vec<f64>> = features.iter().map(|&f| column(f)).collect::<Result<_>>()?;
    let all = vec![Vec::new()];
    let folds = if test_folds.is_empty() { &all[..] } else { test_folds };
    let mut gains = Vec::with_capacity(folds.len());
    for held_out in folds {
        let held: HashSet<usize> = held_out.iter().copied().collect();
        let keep: Vec<usize> = (0..labels.len()).filter(|i| !held.contains(i)).collect();
        let ls: Vec<&L> = keep.iter().map(|&i| &labels[i]).collect();
        let row = columns
            .iter()
            .map(|col| {
                let vs: Vec<f64> = keep.iter().map(|&i| col[i]).collect();
                information_gain(&vs, &ls, binning)
            })
            .collect::<Result<Vec<f64>>>()?;
        gains.push(row);
    }
    Ok(FeatureGainReport { catalog, features, gains })
}

/// Features chosen for a stage-1 classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub features: Vec<Feature>,
    /// Top-ranked features dropped because they add nothing given the
    /// others.
    #[serde(default)]
    pub redundant: Vec<Feature>,
}

/// The `k` best features by mean gain, minus any listed as redundant.
pub fn select_top_k(report: &FeatureGainReport, k: usize, redundant: &[Feature]) -> Result<Selection> {
    if k == 0 || k > report.features.len() {
        return Err(Error::invalid(format!(
            "k must be in 1..={}, got {k}",
            report.features.len()
        )));
    }
    let (mut features, mut dropped) = (Vec::new(), Vec::new());
    for (f, _) in report.ranked().into_iter().take(k) {
        if redundant.contains(&f) {
            dropped.push(f);
        } else {
            features.push(f);
        }
    }
    Ok(Selection { features, redundant: dropped })
}

/// Features that repeat information already carried by the shortlisted ones.
pub fn default_redundant(catalog: Catalog) -> &'static [Feature] {
    match catalog {
        Catalog::Objectivity => &[],
        Catalog::Polarity => &[Feature::EmoticonScore, Feature::MpqaScore],
    }
}

/// The published shortlists.
pub fn published_selection(catalog: Catalog) -> Selection {
    use Feature::*;
    match catalog {
        Catalog::Objectivity => Selection {
            features: vec![UnigramPosterior, UrlPresence, EmoticonPresence, PersonalPronouns, ExclamationCount],
            redundant: vec![],
        },
        Catalog::Polarity => Selection {
            features: vec![UnigramPosterior, PositiveEmoticons, NegativeEmoticons],
            redundant: vec![EmoticonScore, MpqaScore],
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_basics() {
        assert_eq!(entropy(&[1, 1, 1]), 0.0);
        assert_eq!(entropy(&["a", "b"]), 1.0);
        assert!((entropy(&[0, 1, 2, 3]) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn perfect_and_constant_features() {
        let labels = ["o", "s", "s", "o", "s"];
        let perfect: Vec<f64> = labels.iter().map(|l| (*l == "s") as u8 as f64).collect();
        for b in [Binning::Distinct, Binning::BestBinarySplit] {
            let g = information_gain(&perfect, &labels, b).unwrap();
            assert!((g - entropy(&labels)).abs() < 1e-12);
            assert_eq!(information_gain(&[3.0; 5], &labels, b).unwrap(), 0.0);
        }
    }

    #[test]
    fn binary_split_threshold() {
        let values = [0.1, 0.2, 0.3, 0.8, 0.9];
        let labels = [0, 0, 0, 1, 1];
        let (t, g) = best_binary_split(&values, &labels).unwrap().unwrap();
        assert!((t - 0.55).abs() < 1e-12);
        assert!((g - entropy(&labels)).abs() < 1e-12);
        assert!(best_binary_split(&[1.0, 1.0], &[0, 1]).unwrap().is_none());
    }

    #[test]
    fn mismatched_lengths_error() {
        assert!(information_gain(&[1.0], &[0, 1], Binning::Distinct).is_err());
        assert!(information_gain::<u8>(&[], &[], Binning::Distinct).is_err());
    }

    #[test]
    fn selection_ranks_and_drops_redundant() {
        let features = Catalog::Polarity.features().to_vec();
        let mut row = vec![0.0; features.len()];
        row[0] = 0.9; // emoticon_score
        row[2] = 0.8; // unigram
        row[4] = 0.5; // positive emoticons
        row[5] = 0.5; // negative emoticons
        row[1] = 0.4; // mpqa score
        let report = FeatureGainReport { catalog: Catalog::Polarity, features, gains: vec![row] };
        let s = select_top_k(&report, 5, default_redundant(Catalog::Polarity)).unwrap();
        assert_eq!(s, published_selection(Catalog::Polarity));
        assert_eq!(select_top_k(&report, 1, &[]).unwrap().features, vec![Feature::EmoticonScore]);
        assert!(select_top_k(&report, 22, &[]).is_err());
    }
}
