//! Train the objective-vs-subjective unigram model and inspect posteriors.

use moodpipe::classify::Sentiment3;
use moodpipe::features::{Analyzer, UnigramClass, UnigramConfig, UnigramModel};
use moodpipe::synth::{generate, SynthConfig};

fn main() -> moodpipe::Result<()> {
    let analyzer = Analyzer::default();
    let data = generate(&SynthConfig { per_class: 300, ..Default::default() });
    let cfg = UnigramConfig::default();
    let (mut objective, mut subjective) = (Vec::new(), Vec::new());
    for t in &data {
        let terms = analyzer.analyze(&t.tweet.text).terms(cfg.include_hashtags);
        match t.label {
            Sentiment3::Objective => objective.push(terms),
            _ => subjective.push(terms),
        }
    }

    let model = UnigramModel::train(("objective", "subjective"), &objective, &subjective, &cfg)?;
    let unpruned = UnigramModel::train(
        ("objective", "subjective"),
        &objective,
        &subjective,
        &UnigramConfig { min_count: 1, ..cfg.clone() },
    )?;
    println!("vocabulary: {} words, {} after pruning below {}", unpruned.vocab.len(), model.vocab.len(), cfg.min_count);
    for w in ["report", "love", "the"] {
        println!(
            "P({w:>6} | obj) = {:.5}   P({w:>6} | subj) = {:.5}",
            model.word_prob(w, UnigramClass::A)?,
            model.word_prob(w, UnigramClass::B)?
        );
    }

    println!();
    for text in [
        "Council published the annual budget report",
        "I love this so much, best day ever",
        "the city today",
        "",
    ] {
        let terms = analyzer.analyze(text).terms(cfg.include_hashtags);
        println!("P(obj) = {:.4}  {text:?}", model.posterior(&terms));
    }
    Ok(())
}
