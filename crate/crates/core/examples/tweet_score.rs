//! Score and compare keywords over a replayed corpus.

use moodpipe::classify::{Pipeline, PipelineSpec};
use moodpipe::corpus::Corpus;
use moodpipe::features::Analyzer;
use moodpipe::scoring::{popularity_score, ScoreConfig, Scorer};
use moodpipe::synth::{generate, SynthConfig};

fn main() -> moodpipe::Result<()> {
    let analyzer = Analyzer::default();
    let data = generate(&SynthConfig { per_class: 400, ..Default::default() });
    let tweets: Vec<_> = data.iter().map(|t| analyzer.analyze(&t.tweet.text)).collect();
    let labels: Vec<_> = data.iter().map(|t| t.label).collect();
    let pipeline = Pipeline::train(&analyzer, &tweets, &labels, &PipelineSpec::default())?;
    let corpus = Corpus::new(data.into_iter().map(|t| t.tweet).collect());
    let scorer = Scorer::new(corpus, pipeline, analyzer, ScoreConfig::default())?;
    let now = scorer.now();

    let r = scorer.score("coffee", now)?;
    println!(
        "coffee: score {:.1} from {} positive, {} negative, {} neutral at {:.1} tweets/hour",
        r.score, r.n_pos, r.n_neg, r.n_neu, r.velocity
    );
    for s in r.samples.positive.iter().take(3) {
        println!("  + {}", s.text);
    }
    for s in r.samples.negative.iter().take(3) {
        println!("  - {}", s.text);
    }

    println!("\ncompare:");
    for r in scorer.compare(&["obama", "iphone", "traffic"], now)? {
        println!("  {:<8} {:>7.1}", r.keyword, r.score);
    }

    let cfg = ScoreConfig::default();
    println!("\n10 pos / 0 neg at increasing velocity:");
    for v in [0.0, 50.0, 100.0, 200.0, 400.0] {
        println!("  {v:>5} tweets/hour -> {:.1}", popularity_score(10, 0, v, &cfg));
    }
    Ok(())
}
