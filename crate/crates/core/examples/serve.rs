//! Serve the JSON API over a synthetic corpus.
//!
//! `cargo run --example serve [port]`, then e.g.
//! `curl 'localhost:8080/api/score?q=coffee'`.

use std::net::SocketAddr;

use moodpipe::classify::{Pipeline, PipelineSpec};
use moodpipe::corpus::Corpus;
use moodpipe::features::Analyzer;
use moodpipe::scoring::{ScoreConfig, Scorer, StatsStore};
use moodpipe::server::{serve, AppState};
use moodpipe::synth::{generate, SynthConfig};

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let port: u16 = std::env::args().nth(1).map(|p| p.parse()).transpose()?.unwrap_or(8080);
    let analyzer = Analyzer::default();
    let data = generate(&SynthConfig::default());
    let tweets: Vec<_> = data.iter().map(|t| analyzer.analyze(&t.tweet.text)).collect();
    let labels: Vec<_> = data.iter().map(|t| t.label).collect();
    let pipeline = Pipeline::train(&analyzer, &tweets, &labels, &PipelineSpec::default())?;
    let scorer = Scorer::new(Corpus::new(data.into_iter().map(|t| t.tweet).collect()), pipeline, analyzer, ScoreConfig::default())?;

    let store = StatsStore::new(std::env::temp_dir().join("moodpipe-example-stats.jsonl"));
    let hour = scorer.now().div_euclid(3600) * 3600;
    for h in 0..24 {
        scorer.stats_tick(&["coffee", "obama", "iphone"], hour - h * 3600, &store)?;
    }

    let addr = SocketAddr::from(([127, 0, 0, 1], port));
    println!("http://{addr}/api/score?q=coffee");
    println!("http://{addr}/api/compare?q=obama,iphone");
    println!("http://{addr}/api/stats?q=coffee");
    serve(addr, AppState::new(scorer, Some(store))).await?;
    Ok(())
}
