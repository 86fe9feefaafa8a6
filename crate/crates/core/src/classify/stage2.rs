use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Sentiment3, StageOnePoint};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage2Kind {
    Svm,
    Logreg,
    Knn,
    Nb,
    Kmeans,
    Rules,
}

impl Stage2Kind {
    pub const ALL: [Stage2Kind; 6] = [
        Stage2Kind::Svm,
        Stage2Kind::Logreg,
        Stage2Kind::Knn,
        Stage2Kind::Nb,
        Stage2Kind::Kmeans,
        Stage2Kind::Rules,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Stage2Kind::Svm => "svm",
            Stage2Kind::Logreg => "logreg",
            Stage2Kind::Knn => "knn",
            Stage2Kind::Nb => "nb",
            Stage2Kind::Kmeans => "kmeans",
            Stage2Kind::Rules => "rules",
        }
    }
}

impl fmt::Display for Stage2Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Stage2Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Stage2Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown stage-2 kind {s:?} (svm, logreg, knn, nb, kmeans, rules)")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Stage2Params {
    pub svm_lambda: f64,
    pub svm_iterations: usize,
    /// Project onto the ball of radius `1/√λ` after each step.
    pub svm_project: bool,
    pub logreg_learning_rate: f64,
    pub logreg_tolerance: f64,
    pub logreg_max_iterations: usize,
    pub logreg_l2: f64,
    pub knn_k: usize,
    pub kmeans_max_iterations: usize,
    pub rules_step: f64,
    pub seed: u64,
}

impl Default for Stage2Params {
    fn default() -> Self {
        Stage2Params {
            svm_lambda: 0.01,
            svm_iterations: 10_000,
            svm_project: false,
            logreg_learning_rate: 1.0,
            logreg_tolerance: 1e-8,
            logreg_max_iterations: 5_000,
            logreg_l2: 1e-4,
            knn_k: 5,
            kmeans_max_iterations: 100,
            rules_step: 0.01,
            seed: 42,
        }
    }
}

/// A trained three-way decision function over the unit square.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum StageTwoModel {
    /// One-vs-rest linear scores `w · (p_obj, p_pos, 1)`, one row per class.
    Svm { weights: [[f64; 3]; 3] },
    LogisticRegression { weights: [[f64; 3]; 3] },
    Knn { k: usize, points: Vec<[f64; 2]>, labels: Vec<Sentiment3> },
    NaiveBayes { means: [[f64; 2]; 3], variances: [[f64; 2]; 3], log_priors: [f64; 3] },
    KMeans { centroids: Vec<[f64; 2]>, classes: Vec<Sentiment3> },
    /// `p_obj ≥ t_obj` → objective, else `p_pos ≥ t_pos` → positive, else
    /// negative.
    RuleBased { t_obj: f64, t_pos: f64 },
}

fn xs(p: &StageOnePoint) -> [f64; 3] {
    [p.p_obj, p.p_pos, 1.0]
}

fn dot(w: &[f64; 3], x: &[f64; 3]) -> f64 {
    w[0] * x[0] + w[1] * x[1] + w[2] * x[2]
}

/// Index of the largest score; ties go to the lowest index.
fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, s) in scores.iter().enumerate() {
        if *s > scores[best] {
            best = i;
        }
    }
    best
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)
}

pub fn train_stage2(
    kind: Stage2Kind,
    points: &[StageOnePoint],
    labels: &[Sentiment3],
    params: &Stage2Params,
) -> Result<StageTwoModel> {
    if points.len() != labels.len() {
        return Err(Error::invalid("points and labels differ in length"));
    }
    for c in Sentiment3::ALL {
        if !labels.contains(&c) {
            return Err(Error::MissingClass(c.as_str().into()));
        }
    }
    if points.iter().any(|p| !p.p_obj.is_finite() || !p.p_pos.is_finite()) {
        return Err(Error::invalid("stage-1 point is not finite"));
    }
    if points.windows(2).all(|w| w[0] == w[1]) {
        return Err(Error::Degenerate("all stage-1 points are identical".into()));
    }
    let y: Vec<usize> = labels.iter().map(|l| l.index()).collect();
    Ok(match kind {
        Stage2Kind::Svm => StageTwoModel::Svm { weights: train_svm(points, &y, params) },
        Stage2Kind::Logreg => StageTwoModel::LogisticRegression { weights: train_logreg(points, &y, params) },
        Stage2Kind::Knn => {
            if params.knn_k == 0 {
                return Err(Error::invalid("knn_k must be positive"));
            }
            StageTwoModel::Knn {
                k: params.knn_k,
                points: points.iter().map(|p| [p.p_obj, p.p_pos]).collect(),
                labels: labels.to_vec(),
            }
        }
        Stage2Kind::Nb => train_nb(points, &y),
        Stage2Kind::Kmeans => train_kmeans(points, &y, params),
        Stage2Kind::Rules => train_rules(points, &y, params)?,
    })
}

/// Fixed, seed-determined visiting order of the training rows.
fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

// Pegasos-style hinge-loss subgradient descent; the bias is the third
// (constant) input and is regularized like the other weights.
fn train_svm(points: &[StageOnePoint], y: &[usize], params: &Stage2Params) -> [[f64; 3]; 3] {
    let order = permutation(points.len(), params.seed);
    let lambda = params.svm_lambda;
    let radius = 1.0 / lambda.sqrt();
    let mut weights = [[0.0; 3]; 3];
    for (class, w) in weights.iter_mut().enumerate() {
        for t in 1..=params.svm_iterations {
            let i = order[(t - 1) % order.len()];
            let x = xs(&points[i]);
            let target = if y[i] == class { 1.0 } else { -1.0 };
            let eta = 1.0 / (lambda * t as f64);
            let violated = target * dot(w, &x) < 1.0;
            for d in 0..3 {
                w[d] *= 1.0 - eta * lambda;
                if violated {
                    w[d] += eta * target * x[d];
                }
            }
            if params.svm_project {
                let norm = dot(w, w).sqrt();
                if norm > radius {
                    w.iter_mut().for_each(|v| *v *= radius / norm);
                }
            }
        }
    }
    weights
}

fn softmax(scores: [f64; 3]) -> [f64; 3] {
    let m = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let e = scores.map(|s| (s - m).exp());
    let z: f64 = e.iter().sum();
    e.map(|v| v / z)
}

fn train_logreg(points: &[StageOnePoint], y: &[usize], params: &Stage2Params) -> [[f64; 3]; 3] {
    let n = points.len() as f64;
    let inputs: Vec<[f64; 3]> = points.iter().map(xs).collect();
    let mut w = [[0.0; 3]; 3];
    for _ in 0..params.logreg_max_iterations {
        let mut grad = [[0.0; 3]; 3];
        for (x, &yi) in inputs.iter().zip(y) {
            let p = softmax([dot(&w[0], x), dot(&w[1], x), dot(&w[2], x)]);
            for c in 0..3 {
                let err = p[c] - if c == yi { 1.0 } else { 0.0 };
                for d in 0..3 {
                    grad[c][d] += err * x[d];
                }
            }
        }
        let mut max_abs: f64 = 0.0;
        for c in 0..3 {
            for d in 0..3 {
                let g = grad[c][d] / n + params.logreg_l2 * w[c][d];
                max_abs = max_abs.max(g.abs());
                w[c][d] -= params.logreg_learning_rate * g;
            }
        }
        if max_abs < params.logreg_tolerance {
            break;
        }
    }
    w
}

fn train_nb(points: &[StageOnePoint], y: &[usize]) -> StageTwoModel {
    let mut means = [[0.0; 2]; 3];
    let mut variances = [[0.0; 2]; 3];
    let mut counts = [0usize; 3];
    for (p, &c) in points.iter().zip(y) {
        counts[c] += 1;
        means[c][0] += p.p_obj;
        means[c][1] += p.p_pos;
    }
    for c in 0..3 {
        means[c] = means[c].map(|s| s / counts[c] as f64);
    }
    for (p, &c) in points.iter().zip(y) {
        variances[c][0] += (p.p_obj - means[c][0]).powi(2);
        variances[c][1] += (p.p_pos - means[c][1]).powi(2);
    }
    for c in 0..3 {
        variances[c] = variances[c].map(|s| (s / counts[c] as f64).max(1e-9));
    }
    let n = points.len() as f64;
    StageTwoModel::NaiveBayes { means, variances, log_priors: counts.map(|k| (k as f64 / n).ln()) }
}

fn train_kmeans(points: &[StageOnePoint], y: &[usize], params: &Stage2Params) -> StageTwoModel {
    let data: Vec<[f64; 2]> = points.iter().map(|p| [p.p_obj, p.p_pos]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    // k-means++ seeding
    let mut centroids = vec![data[rng.gen_range(0..data.len())]];
    while centroids.len() < 3 {
        let d: Vec<f64> = data
            .iter()
            .map(|x| centroids.iter().map(|c| dist2(*x, *c)).fold(f64::INFINITY, f64::min))
            .collect();
        let total: f64 = d.iter().sum();
        let next = if total == 0.0 {
            data[rng.gen_range(0..data.len())]
        } else {
            let mut r = rng.gen::<f64>() * total;
            let mut pick = data.len() - 1;
            for (i, di) in d.iter().enumerate() {
                if r < *di {
                    pick = i;
                    break;
                }
                r -= di;
            }
            data[pick]
        };
        centroids.push(next);
    }
    let nearest = |x: [f64; 2], cs: &[[f64; 2]]| {
        let d: Vec<f64> = cs.iter().map(|c| -dist2(x, *c)).collect();
        argmax(&d)
    };
    let mut assign = vec![usize::MAX; data.len()];
    for _ in 0..params.kmeans_max_iterations {
        let next: Vec<usize> = data.iter().map(|x| nearest(*x, &centroids)).collect();
        if next == assign {
            break;
        }
        assign = next;
        for (k, c) in centroids.iter_mut().enumerate() {
            let members: Vec<&[f64; 2]> = data.iter().zip(&assign).filter(|(_, a)| **a == k).map(|(x, _)| x).collect();
            if !members.is_empty() {
                let m = members.len() as f64;
                *c = [
                    members.iter().map(|x| x[0]).sum::<f64>() / m,
                    members.iter().map(|x| x[1]).sum::<f64>() / m,
                ];
            }
        }
    }
    let classes = (0..3)
        .map(|k| {
            let mut votes = [0.0; 3];
            for (a, &c) in assign.iter().zip(y) {
                if *a == k {
                    votes[c] += 1.0;
                }
            }
            Sentiment3::ALL[argmax(&votes)]
        })
        .collect();
    StageTwoModel::KMeans { centroids, classes }
}

/// Index of the largest grid threshold `≤ v`, grid `0, step, 2·step, …`.
fn grid_index(v: f64, step: f64, steps: usize) -> usize {
    let mut i = ((v / step).floor().max(0.0) as usize).min(steps);
    while i > 0 && (i as f64) * step > v {
        i -= 1;
    }
    while i < steps && ((i + 1) as f64) * step <= v {
        i += 1;
    }
    i
}

// Exhaustive grid search over both thresholds, using 2-D prefix sums of a
// histogram so each candidate pair costs O(1).
fn train_rules(points: &[StageOnePoint], y: &[usize], params: &Stage2Params) -> Result<StageTwoModel> {
    let step = params.rules_step;
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::invalid("rules_step must be in (0, 1]"));
    }
    let steps = (1.0 / step).round() as usize;
    let g = steps + 1;
    // hist[c][a][b]: class c, p_obj passes thresholds 0..=a, p_pos 0..=b
    let mut hist = vec![vec![vec![0u64; g]; g]; 3];
    for (p, &c) in points.iter().zip(y) {
        let a = grid_index(p.p_obj, step, steps);
        let b = grid_index(p.p_pos, step, steps);
        hist[c][a][b] += 1;
    }
    // obj_at_least[k1] = objective points with grid index ≥ k1
    let obj_row: Vec<u64> = (0..g).map(|a| hist[0][a].iter().sum()).collect();
    let mut best = (0u64, 0usize, 0usize);
    let mut first = true;
    for k1 in 0..g {
        let objective_correct: u64 = obj_row[k1..].iter().sum();
        // rows below k1 are classified by p_pos
        let mut pos_by_b = vec![0u64; g];
        let mut neg_by_b = vec![0u64; g];
        for a in 0..k1 {
            for b in 0..g {
                pos_by_b[b] += hist[1][a][b];
                neg_by_b[b] += hist[2][a][b];
            }
        }
        let pos_total: u64 = pos_by_b.iter().sum();
        let mut pos_ge = pos_total;
        let mut neg_lt = 0u64;
        for k2 in 0..g {
            if k2 > 0 {
                pos_ge -= pos_by_b[k2 - 1];
                neg_lt += neg_by_b[k2 - 1];
            }
            let correct = objective_correct + pos_ge + neg_lt;
            if first || correct > best.0 {
                best = (correct, k1, k2);
                first = false;
            }
        }
    }
    Ok(StageTwoModel::RuleBased { t_obj: best.1 as f64 * step, t_pos: best.2 as f64 * step })
}

impl StageTwoModel {
    pub fn kind(&self) -> Stage2Kind {
        match self {
            StageTwoModel::Svm { .. } => Stage2Kind::Svm,
            StageTwoModel::LogisticRegression { .. } => Stage2Kind::Logreg,
            StageTwoModel::Knn { .. } => Stage2Kind::Knn,
            StageTwoModel::NaiveBayes { .. } => Stage2Kind::Nb,
            StageTwoModel::KMeans { .. } => Stage2Kind::Kmeans,
            StageTwoModel::RuleBased { .. } => Stage2Kind::Rules,
        }
    }

    pub fn predict(&self, p: StageOnePoint) -> Sentiment3 {
        let x = xs(&p);
        let idx = match self {
            StageTwoModel::Svm { weights } | StageTwoModel::LogisticRegression { weights } => {
                argmax(&weights.map(|w| dot(&w, &x)))
            }
            StageTwoModel::Knn { k, points, labels } => {
                let q = [p.p_obj, p.p_pos];
                let mut near: Vec<(f64, usize)> = points.iter().map(|t| dist2(q, *t)).zip(0..).collect();
                let k = (*k).min(near.len());
                near.select_nth_unstable_by(k - 1, |a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                let mut votes = [0.0; 3];
                for (_, i) in &near[..k] {
                    votes[labels[*i].index()] += 1.0;
                }
                argmax(&votes)
            }
            StageTwoModel::NaiveBayes { means, variances, log_priors } => {
                let q = [p.p_obj, p.p_pos];
                let scores: Vec<f64> = (0..3)
                    .map(|c| {
                        log_priors[c]
                            + (0..2)
                                .map(|d| {
                                    let v = variances[c][d];
                                    -0.5 * ((2.0 * std::f64::consts::PI * v).ln() + (q[d] - means[c][d]).powi(2) / v)
                                })
                                .sum::<f64>()
                    })
                    .collect();
                argmax(&scores)
            }
            StageTwoModel::KMeans { centroids, classes } => {
                let q = [p.p_obj, p.p_pos];
                let d: Vec<f64> = centroids.iter().map(|c| -dist2(q, *c)).collect();
                return classes[argmax(&d)];
            }
            StageTwoModel::RuleBased { t_obj, t_pos } => {
                return if p.p_obj >= *t_obj {
                    Sentiment3::Objective
                } else if p.p_pos >= *t_pos {
                    Sentiment3::Positive
                } else {
                    Sentiment3::Negative
                };
            }
        };
        Sentiment3::ALL[idx]
    }
}
