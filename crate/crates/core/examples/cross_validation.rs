//! Ten-fold cross-validation of stage 1 and of every stage-2 classifier.

use std::time::Instant;

use moodpipe::classify::{evaluate_all, EvalReport, PipelineSpec, Stage2Kind};
use moodpipe::features::Analyzer;
use moodpipe::synth::{generate, SynthConfig};

fn print_table(title: &str, r: &EvalReport) {
    println!("{title}");
    println!("  {:<11} {:>6} {:>6} {:>6} {:>6} {:>6}", "class", "TP", "FP", "R", "P", "F");
    for row in r.classes.iter().chain([&r.average]) {
        println!(
            "  {:<11} {:>6.3} {:>6.3} {:>6.3} {:>6.3} {:>6.3}",
            row.class, row.true_positive_rate, row.false_positive_rate, row.recall, row.precision, row.f_measure
        );
    }
}

fn main() -> moodpipe::Result<()> {
    let per_class = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(500);
    // a harder corpus than the default: more shared words, fewer emoticons
    let cfg = SynthConfig { per_class, own_vocab_rate: 0.35, emoticon_rate: 0.3, ..Default::default() };
    let analyzer = Analyzer::default();
    let data = generate(&cfg);
    let tweets: Vec<_> = data.iter().map(|t| analyzer.analyze(&t.tweet.text)).collect();
    let labels: Vec<_> = data.iter().map(|t| t.label).collect();

    let first = evaluate_all(&analyzer, &tweets, &labels, 10, &PipelineSpec::default(), 42)?;
    print_table("objectivity (stage 1)", &first.objectivity);
    print_table("polarity (stage 1)", &first.polarity);

    println!("\nstage 2, macro F-measure over 10 folds");
    for kind in Stage2Kind::ALL {
        let start = Instant::now();
        let spec = PipelineSpec::default().with_stage2(kind);
        let r = moodpipe::classify::kfold_cv(&analyzer, &tweets, &labels, 10, &spec, 42)?;
        println!("  {:<7} {:.4}  ({:.1} s)", kind.as_str(), r.macro_f(), start.elapsed().as_secs_f64());
    }
    Ok(())
}
