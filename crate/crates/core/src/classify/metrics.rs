use serde::{Deserialize, Serialize};

/// One-vs-rest counts for a single class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

impl ConfusionMatrix {
    pub fn new(tp: u64, fp: u64, fn_: u64, tn: u64) -> Self {
        ConfusionMatrix { tp, fp, fn_, tn }
    }

    /// Counts for `class` from paired truth/prediction lists.
    pub fn one_vs_rest<L: PartialEq>(truth: &[L], predicted: &[L], class: &L) -> Self {
        let mut m = ConfusionMatrix::default();
        for (t, p) in truth.iter().zip(predicted) {
            match (t == class, p == class) {
                (true, true) => m.tp += 1,
                (false, true) => m.fp += 1,
                (true, false) => m.fn_ += 1,
                (false, false) => m.tn += 1,
            }
        }
        m
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }
}

/// Metrics derived from a confusion matrix. A metric whose denominator is
/// zero is reported as 0 and named in `degenerate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub precision: f64,
    pub recall: f64,
    pub accuracy: f64,
    pub f1: f64,
    pub true_rate: f64,
    /// `fp / (tp + fn)`, as the false-alarm rate is written in the source
    /// material.
    pub false_alarm_rate: f64,
    /// Conventional false-positive rate `fp / (fp + tn)`.
    pub false_positive_rate: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub degenerate: Vec<String>,
}

impl Metrics {
    pub fn is_degenerate(&self) -> bool {
        !self.degenerate.is_empty()
    }
}

pub fn compute_metrics(m: &ConfusionMatrix) -> Metrics {
    let mut degenerate = Vec::new();
    let mut ratio = |name: &str, num: u64, den: u64| {
        if den == 0 {
            degenerate.push(name.to_string());
            0.0
        } else {
            num as f64 / den as f64
        }
    };
    let precision = ratio("precision", m.tp, m.tp + m.fp);
    let recall = ratio("recall", m.tp, m.tp + m.fn_);
    let accuracy = ratio("accuracy", m.tp + m.tn, m.total());
    // 2PR/(P+R) simplified to 2tp/(2tp+fp+fn): same value, one rounding
    let f1 = ratio("f1", 2 * m.tp, 2 * m.tp + m.fp + m.fn_);
    let false_alarm_rate = ratio("false_alarm_rate", m.fp, m.tp + m.fn_);
    let false_positive_rate = ratio("false_positive_rate", m.fp, m.fp + m.tn);
    Metrics {
        precision,
        recall,
        accuracy,
        f1,
        true_rate: recall,
        false_alarm_rate,
        false_positive_rate,
        degenerate,
    }
}

/// One row of an evaluation table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub class: String,
    pub true_positive_rate: f64,
    pub false_positive_rate: f64,
    pub false_alarm_rate: f64,
    pub recall: f64,
    pub precision: f64,
    pub f_measure: f64,
    pub accuracy: f64,
}

impl ClassMetrics {
    fn from_metrics(class: &str, m: &Metrics) -> Self {
        ClassMetrics {
            class: class.to_string(),
            true_positive_rate: m.true_rate,
            false_positive_rate: m.false_positive_rate,
            false_alarm_rate: m.false_alarm_rate,
            recall: m.recall,
            precision: m.precision,
            f_measure: m.f1,
            accuracy: m.accuracy,
        }
    }

    fn mean(class: &str, rows: &[ClassMetrics]) -> Self {
        let n = rows.len().max(1) as f64;
        let avg = |f: fn(&ClassMetrics) -> f64| rows.iter().map(f).sum::<f64>() / n;
        ClassMetrics {
            class: class.to_string(),
            true_positive_rate: avg(|r| r.true_positive_rate),
            false_positive_rate: avg(|r| r.false_positive_rate),
            false_alarm_rate: avg(|r| r.false_alarm_rate),
            recall: avg(|r| r.recall),
            precision: avg(|r| r.precision),
            f_measure: avg(|r| r.f_measure),
            accuracy: avg(|r| r.accuracy),
        }
    }
}

/// Per-class metrics averaged over folds, plus their unweighted mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub classes: Vec<ClassMetrics>,
    pub average: ClassMetrics,
    pub folds: usize,
    /// Per-class confusion counts summed over folds.
    pub confusion: Vec<(String, ConfusionMatrix)>,
}

impl EvalReport {
    /// Aggregate fold results. `per_fold[f][c]` is class `c`'s matrix in
    /// fold `f`.
    pub fn from_folds(class_names: &[String], per_fold: &[Vec<ConfusionMatrix>]) -> Self {
        let classes: Vec<ClassMetrics> = class_names
            .iter()
            .enumerate()
            .map(|(c, name)| {
                let rows: Vec<ClassMetrics> = per_fold
                    .iter()
                    .map(|fold| ClassMetrics::from_metrics(name, &compute_metrics(&fold[c])))
                    .collect();
                ClassMetrics::mean(name, &rows)
            })
            .collect();
        let confusion = class_names
            .iter()
            .enumerate()
            .map(|(c, name)| {
                let sum = per_fold.iter().fold(ConfusionMatrix::default(), |acc, f| ConfusionMatrix {
                    tp: acc.tp + f[c].tp,
                    fp: acc.fp + f[c].fp,
                    fn_: acc.fn_ + f[c].fn_,
                    tn: acc.tn + f[c].tn,
                });
                (name.clone(), sum)
            })
            .collect();
        EvalReport {
            average: ClassMetrics::mean("average", &classes),
            classes,
            folds: per_fold.len(),
            confusion,
        }
    }

    pub fn class(&self, name: &str) -> Option<&ClassMetrics> {
        self.classes.iter().find(|c| c.class == name)
    }

    pub fn macro_f(&self) -> f64 {
        self.average.f_measure
    }
}
