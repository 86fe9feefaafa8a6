//! Record hourly scores for a few keywords and read a series back.

use moodpipe::classify::{Pipeline, PipelineSpec};
use moodpipe::corpus::Corpus;
use moodpipe::features::Analyzer;
use moodpipe::scoring::{ScoreConfig, Scorer, StatsStore};
use moodpipe::synth::{generate, SynthConfig};

fn main() -> moodpipe::Result<()> {
    let analyzer = Analyzer::default();
    let data = generate(&SynthConfig { per_class: 600, ..Default::default() });
    let tweets: Vec<_> = data.iter().map(|t| analyzer.analyze(&t.tweet.text)).collect();
    let labels: Vec<_> = data.iter().map(|t| t.label).collect();
    let pipeline = Pipeline::train(&analyzer, &tweets, &labels, &PipelineSpec::default())?;
    let scorer = Scorer::new(Corpus::new(data.into_iter().map(|t| t.tweet).collect()), pipeline, analyzer, ScoreConfig::default())?;

    let dir = tempfile::tempdir().map_err(|e| moodpipe::Error::Io { path: "<tempdir>".into(), source: e })?;
    let store = StatsStore::new(dir.path().join("stats.jsonl"));
    let last = scorer.now().div_euclid(3600) * 3600;
    let keywords = ["coffee", "traffic"];
    for h in (0..12).rev() {
        scorer.stats_tick(&keywords, last - h * 3600, &store)?;
    }
    // reruns overwrite, never duplicate
    scorer.stats_tick(&keywords, last, &store)?;

    for k in keywords {
        println!("{k}");
        for s in store.series(k, last - 6 * 3600, last + 3600)? {
            let bar = "#".repeat((s.score.abs() / 5.0).round() as usize);
            println!("  {} {:>6.1} {}{bar}", s.hour_start, s.score, if s.score < 0.0 { "-" } else { "+" });
        }
    }
    println!("{} records in {}", store.load()?.len(), store.path().display());
    Ok(())
}
