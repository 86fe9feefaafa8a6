//! Majority-vote label merging and inter-annotator agreement.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One annotator's judgment of a tweet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SentimentLabel {
    Positive,
    Negative,
    Neutral,
    Ambiguous,
    /// Left blank: the tweet is not English.
    Unlabeled,
}

impl SentimentLabel {
    pub const ALL: [SentimentLabel; 5] = [
        SentimentLabel::Positive,
        SentimentLabel::Negative,
        SentimentLabel::Neutral,
        SentimentLabel::Ambiguous,
        SentimentLabel::Unlabeled,
    ];

    pub fn token(self) -> &'static str {
        match self {
            SentimentLabel::Positive => "pos",
            SentimentLabel::Negative => "neg",
            SentimentLabel::Neutral => "neu",
            SentimentLabel::Ambiguous => "amb",
            SentimentLabel::Unlabeled => "blank",
        }
    }
}

impl FromStr for SentimentLabel {
    type Err = Error;

    /// `pos|neg|neu|amb|blank`, case-insensitive; an empty cell is blank.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pos" => Ok(SentimentLabel::Positive),
            "neg" => Ok(SentimentLabel::Negative),
            "neu" => Ok(SentimentLabel::Neutral),
            "amb" => Ok(SentimentLabel::Ambiguous),
            "blank" | "" => Ok(SentimentLabel::Unlabeled),
            other => Err(Error::invalid(format!("unknown label token {other:?}"))),
        }
    }
}

/// Outcome of merging the labels of one tweet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MergedLabel {
    Positive,
    Negative,
    Neutral,
    Ambiguous,
    NoMajority,
    NonEnglish,
}

impl MergedLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            MergedLabel::Positive => "positive",
            MergedLabel::Negative => "negative",
            MergedLabel::Neutral => "neutral",
            MergedLabel::Ambiguous => "ambiguous",
            MergedLabel::NoMajority => "no_majority",
            MergedLabel::NonEnglish => "non_english",
        }
    }
}

impl fmt::Display for MergedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MergedLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "positive" => MergedLabel::Positive,
            "negative" => MergedLabel::Negative,
            "neutral" => MergedLabel::Neutral,
            "ambiguous" => MergedLabel::Ambiguous,
            "no_majority" => MergedLabel::NoMajority,
            "non_english" => MergedLabel::NonEnglish,
            other => return Err(Error::invalid(format!("unknown merged label {other:?}"))),
        })
    }
}

/// Votes needed for a majority among `k` annotators: `ceil((k + 1) / 2)`,
/// i.e. two of three.
pub fn majority_threshold(k: usize) -> usize {
    (k + 2) / 2
}

/// Merge one tweet's labels. The label held by at least
/// [`majority_threshold`] annotators wins; a blank majority means the tweet
/// is not English.
pub fn majority_vote(labels: &[SentimentLabel]) -> Result<MergedLabel> {
    if labels.is_empty() {
        return Err(Error::invalid("majority_vote needs at least one label"));
    }
    let mut counts = [0usize; 5];
    for l in labels {
        counts[*l as usize] += 1;
    }
    let need = majority_threshold(labels.len());
    let winner = SentimentLabel::ALL
        .into_iter()
        .find(|l| counts[*l as usize] >= need);
    Ok(match winner {
        Some(SentimentLabel::Positive) => MergedLabel::Positive,
        Some(SentimentLabel::Negative) => MergedLabel::Negative,
        Some(SentimentLabel::Neutral) => MergedLabel::Neutral,
        Some(SentimentLabel::Ambiguous) => MergedLabel::Ambiguous,
        Some(SentimentLabel::Unlabeled) => MergedLabel::NonEnglish,
        None => MergedLabel::NoMajority,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub positive: usize,
    pub negative: usize,
    pub neutral: usize,
    pub ambiguous: usize,
    pub no_majority: usize,
    pub non_english: usize,
}

impl ClassCounts {
    pub fn total(&self) -> usize {
        self.training_total() + self.ambiguous + self.no_majority + self.non_english
    }

    /// Positive + Negative + Neutral.
    pub fn training_total(&self) -> usize {
        self.subjective_total() + self.neutral
    }

    /// Positive + Negative.
    pub fn subjective_total(&self) -> usize {
        self.positive + self.negative
    }
}

pub fn class_counts(merged: &[MergedLabel]) -> ClassCounts {
    let mut c = ClassCounts::default();
    for m in merged {
        match m {
            MergedLabel::Positive => c.positive += 1,
            MergedLabel::Negative => c.negative += 1,
            MergedLabel::Neutral => c.neutral += 1,
            MergedLabel::Ambiguous => c.ambiguous += 1,
            MergedLabel::NoMajority => c.no_majority += 1,
            MergedLabel::NonEnglish => c.non_english += 1,
        }
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AgreementMode {
    Strict,
    /// An Ambiguous label on either side agrees with anything.
    Lenient,
}

pub fn agreement(a: &[SentimentLabel], b: &[SentimentLabel], mode: AgreementMode) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "label lists differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::invalid("agreement needs at least one label"));
    }
    let agree = a
        .iter()
        .zip(b)
        .filter(|(x, y)| {
            x == y
                || (mode == AgreementMode::Lenient
                    && (**x == SentimentLabel::Ambiguous || **y == SentimentLabel::Ambiguous))
        })
        .count();
    Ok(agree as f64 / a.len() as f64)
}

/// Pairwise agreement between every pair of annotator columns.
pub fn agreement_matrix(sets: &[LabelSet], mode: AgreementMode) -> Result<BTreeMap<(usize, usize), f64>> {
    let k = sets.first().map(|s| s.labels.len()).unwrap_or(0);
    let mut out = BTreeMap::new();
    for i in 0..k {
        for j in i + 1..k {
            let a: Vec<_> = sets.iter().map(|s| s.labels[i]).collect();
            let b: Vec<_> = sets.iter().map(|s| s.labels[j]).collect();
            out.insert((i + 1, j + 1), agreement(&a, &b, mode)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSet {
    pub tweet_id: String,
    pub labels: Vec<SentimentLabel>,
}

/// Parse annotator labels: `tweet_id<TAB>label_1..label_k`. A first row
/// whose id column reads `tweet_id` is a header. Every row must have the
/// same k ≥ 2.
pub fn parse_label_tsv(text: &str, origin: &Path) -> Result<Vec<LabelSet>> {
    let mut out = Vec::new();
    let mut k = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let mut cols = line.split('\t');
        let id = cols.next().unwrap_or_default().trim().to_string();
        if i == 0 && id.eq_ignore_ascii_case("tweet_id") {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: origin.into(),
            line: i + 1,
            message,
        };
        let labels = cols
            .map(str::parse)
            .collect::<Result<Vec<SentimentLabel>>>()
            .map_err(|e| parse_err(e.to_string()))?;
        if labels.len() < 2 {
            return Err(parse_err(format!("need at least 2 labels, got {}", labels.len())));
        }
        match k {
            None => k = Some(labels.len()),
            Some(k) if k != labels.len() => {
                return Err(parse_err(format!("expected {k} labels, got {}", labels.len())))
            }
            _ => {}
        }
        out.push(LabelSet { tweet_id: id, labels });
    }
    Ok(out)
}

pub fn read_label_tsv(path: impl AsRef<Path>) -> Result<Vec<LabelSet>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_label_tsv(&text, path)
}

/// Merge every row; output pairs keep input order.
pub fn merge_label_sets(sets: &[LabelSet]) -> Result<Vec<(String, MergedLabel)>> {
    sets.iter()
        .map(|s| Ok((s.tweet_id.clone(), majority_vote(&s.labels)?)))
        .collect()
}

/// Annotator rows in the format [`parse_label_tsv`] reads, with a header.
pub fn write_label_tsv(mut out: impl Write, sets: &[LabelSet]) -> Result<()> {
    let io = |e| Error::io("<output>", e);
    let k = sets.first().map_or(0, |s| s.labels.len());
    let header: Vec<String> = (1..=k).map(|i| format!("annotator_{i}")).collect();
    writeln!(out, "tweet_id\t{}", header.join("\t")).map_err(io)?;
    for s in sets {
        let labels: Vec<&str> = s.labels.iter().map(|l| l.token()).collect();
        writeln!(out, "{}\t{}", s.tweet_id, labels.join("\t")).map_err(io)?;
    }
    Ok(())
}

/// `tweet_id<TAB>outcome` rows.
pub fn write_merged_tsv(mut out: impl Write, merged: &[(String, MergedLabel)]) -> Result<()> {
    let io = |e| Error::io("<output>", e);
    writeln!(out, "tweet_id\toutcome").map_err(io)?;
    for (id, m) in merged {
        writeln!(out, "{id}\t{m}").map_err(io)?;
    }
    Ok(())
}

pub fn parse_merged_tsv(text: &str, origin: &Path) -> Result<Vec<(String, MergedLabel)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let (id, outcome) = line.split_once('\t').ok_or_else(|| Error::Parse {
            path: origin.into(),
            line: i + 1,
            message: "expected tweet_id<TAB>outcome".into(),
        })?;
        if i == 0 && id.eq_ignore_ascii_case("tweet_id") {
            continue;
        }
        let outcome = outcome.parse().map_err(|e: Error| Error::Parse {
            path: origin.into(),
            line: i + 1,
            message: e.to_string(),
        })?;
        out.push((id.trim().to_string(), outcome));
    }
    Ok(out)
}

/// Read either a merged-outcome TSV or a raw annotator TSV (merging it).
pub fn read_any_labels(path: impl AsRef<Path>) -> Result<Vec<(String, MergedLabel)>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    match parse_merged_tsv(&text, path) {
        Ok(merged) => Ok(merged),
        Err(_) => merge_label_sets(&parse_label_tsv(&text, path)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SentimentLabel::*;

    #[test]
    fn votes() {
        assert_eq!(majority_vote(&[Positive, Positive, Negative]).unwrap(), MergedLabel::Positive);
        assert_eq!(majority_vote(&[Positive, Negative, Neutral]).unwrap(), MergedLabel::NoMajority);
        assert_eq!(majority_vote(&[Neutral, Neutral, Neutral]).unwrap(), MergedLabel::Neutral);
        assert_eq!(majority_vote(&[Unlabeled, Unlabeled, Positive]).unwrap(), MergedLabel::NonEnglish);
        assert!(majority_vote(&[]).is_err());
    }

    #[test]
    fn thresholds_for_other_k() {
        assert_eq!(majority_threshold(2), 2);
        assert_eq!(majority_threshold(3), 2);
        assert_eq!(majority_threshold(4), 3);
        assert_eq!(majority_threshold(5), 3);
        assert_eq!(majority_vote(&[Positive, Negative]).unwrap(), MergedLabel::NoMajority);
        assert_eq!(
            majority_vote(&[Positive, Positive, Negative, Negative]).unwrap(),
            MergedLabel::NoMajority
        );
    }

    #[test]
    fn counts() {
        let c = class_counts(&[MergedLabel::Positive, MergedLabel::Positive]);
        assert_eq!(c.positive, 2);
        assert_eq!(c.total(), 2);
        assert_eq!(class_counts(&[]), ClassCounts::default());
    }

    #[test]
    fn agreement_examples() {
        let s = agreement(&[Positive, Negative, Neutral], &[Positive, Neutral, Neutral], AgreementMode::Strict).unwrap();
        assert!((s - 2.0 / 3.0).abs() < 1e-15);
        let a = [Ambiguous, Positive];
        let b = [Negative, Positive];
        assert_eq!(agreement(&a, &b, AgreementMode::Lenient).unwrap(), 1.0);
        assert_eq!(agreement(&a, &b, AgreementMode::Strict).unwrap(), 0.5);
        assert!(agreement(&a, &b[..1], AgreementMode::Strict).is_err());
        // blank gets no wildcard
        assert_eq!(agreement(&[Unlabeled], &[Positive], AgreementMode::Lenient).unwrap(), 0.0);
    }

    #[test]
    fn tsv_round_trip_and_errors() {
        let sets = parse_label_tsv("tweet_id\tl1\tl2\tl3\n1\tpos\tPOS\tneg\n2\tamb\t\tneu\n", Path::new("x")).unwrap();
        assert_eq!(sets[1].labels, vec![Ambiguous, Unlabeled, Neutral]);
        let merged = merge_label_sets(&sets).unwrap();
        let mut buf = Vec::new();
        write_merged_tsv(&mut buf, &merged).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "tweet_id\toutcome\n1\tpositive\n2\tno_majority\n");
        assert_eq!(parse_merged_tsv(&text, Path::new("x")).unwrap(), merged);

        assert!(parse_label_tsv("1\tpos\tneg\n2\tpos\n", Path::new("x")).is_err());
        assert!(parse_label_tsv("1\tpos\tmaybe\n", Path::new("x")).is_err());
    }

    #[test]
    fn agreement_matrix_covers_pairs() {
        let sets = vec![
            LabelSet { tweet_id: "1".into(), labels: vec![Positive, Positive, Ambiguous] },
            LabelSet { tweet_id: "2".into(), labels: vec![Negative, Neutral, Negative] },
        ];
        let m = agreement_matrix(&sets, AgreementMode::Strict).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m[&(1, 2)], 0.5);
        assert_eq!(m[&(1, 3)], 0.5);
        let l = agreement_matrix(&sets, AgreementMode::Lenient).unwrap();
        assert_eq!(l[&(1, 3)], 1.0);
    }
}
