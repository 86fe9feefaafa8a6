#![allow(dead_code)]

use moodpipe::classify::{Pipeline, PipelineSpec, Sentiment3};
use moodpipe::corpus::{Corpus, Tweet};
use moodpipe::features::{AnalyzedTweet, Analyzer};
use moodpipe::scoring::{ScoreConfig, Scorer};
use moodpipe::synth::{generate, SynthConfig};

pub struct Fixture {
    pub raw: Vec<Tweet>,
    pub tweets: Vec<AnalyzedTweet>,
    pub labels: Vec<Sentiment3>,
    pub analyzer: Analyzer,
}

pub fn synthetic(per_class: usize) -> Fixture {
    let analyzer = Analyzer::default();
    let data = generate(&SynthConfig { per_class, ..Default::default() });
    Fixture {
        tweets: data.iter().map(|t| analyzer.analyze(&t.tweet.text)).collect(),
        labels: data.iter().map(|t| t.label).collect(),
        raw: data.into_iter().map(|t| t.tweet).collect(),
        analyzer,
    }
}

pub fn pipeline(f: &Fixture) -> Pipeline {
    Pipeline::train(&f.analyzer, &f.tweets, &f.labels, &PipelineSpec::default()).unwrap()
}

pub fn scorer(per_class: usize) -> Scorer {
    let f = synthetic(per_class);
    let p = pipeline(&f);
    Scorer::new(Corpus::new(f.raw), p, f.analyzer, ScoreConfig::default()).unwrap()
}
