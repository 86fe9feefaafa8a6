//! Merge three annotators' labels by majority vote and measure agreement.

use moodpipe::labeling::{
    agreement_matrix, class_counts, majority_vote, merge_label_sets, parse_label_tsv, AgreementMode,
};
use std::path::Path;

const LABELS: &str = "\
tweet_id\tannotator_1\tannotator_2\tannotator_3
101\tpos\tpos\tneu
102\tneg\tneg\tneg
103\tneu\tamb\tneu
104\tpos\tneg\tneu
105\tamb\tamb\tpos
106\tblank\tblank\tneu
107\tneu\tneu\tpos
108\tneg\tamb\tneg
";

fn main() -> moodpipe::Result<()> {
    let sets = parse_label_tsv(LABELS, Path::new("<built-in>"))?;
    for s in &sets {
        let tokens: Vec<&str> = s.labels.iter().map(|l| l.token()).collect();
        println!("{:>4}  {:<16} -> {}", s.tweet_id, tokens.join(","), majority_vote(&s.labels)?);
    }

    let merged = merge_label_sets(&sets)?;
    let outcomes: Vec<_> = merged.iter().map(|(_, m)| *m).collect();
    let counts = class_counts(&outcomes);
    println!("\n{}", serde_json::to_string_pretty(&counts)?);
    println!("trainable: {} ({} subjective)", counts.training_total(), counts.subjective_total());

    let strict = agreement_matrix(&sets, AgreementMode::Strict)?;
    let lenient = agreement_matrix(&sets, AgreementMode::Lenient)?;
    println!("\npair   strict  lenient");
    for ((a, b), s) in &strict {
        println!("{a}-{b}    {s:.3}   {:.3}", lenient[&(*a, *b)]);
    }
    Ok(())
}
