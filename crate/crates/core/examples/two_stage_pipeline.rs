//! Train the full pipeline, place tweets on the (P(obj), P(pos)) plane,
//! and round-trip the model through JSON.

use moodpipe::classify::{Pipeline, PipelineSpec, Stage2Kind};
use moodpipe::features::Analyzer;
use moodpipe::synth::{generate, SynthConfig};

fn main() -> moodpipe::Result<()> {
    let kind: Stage2Kind = std::env::args().nth(1).as_deref().unwrap_or("svm").parse()?;
    let analyzer = Analyzer::default();
    let data = generate(&SynthConfig { per_class: 400, ..Default::default() });
    let tweets: Vec<_> = data.iter().map(|t| analyzer.analyze(&t.tweet.text)).collect();
    let labels: Vec<_> = data.iter().map(|t| t.label).collect();

    let pipeline = Pipeline::train(&analyzer, &tweets, &labels, &PipelineSpec::default().with_stage2(kind))?;
    let names = |s: &moodpipe::classify::StageOneClassifier| {
        s.selection.features.iter().map(|f| f.name()).collect::<Vec<_>>().join(", ")
    };
    println!("objectivity features: {}", names(&pipeline.objectivity));
    println!("polarity features:    {}", names(&pipeline.polarity));

    let texts = [
        "Committee released the quarterly revenue data http://t.co/abc",
        "I love my new phone so much!! :)",
        "Worst traffic ever, I hate this city :(",
        "we are at the game tonight",
        "",
    ];
    println!("\n{:<10} {:>6} {:>6}  text", kind.as_str(), "P(obj)", "P(pos)");
    for text in texts {
        let c = pipeline.classify_text(&analyzer, text);
        println!("{:<10} {:>6.3} {:>6.3}  {text:?}", c.class.as_str(), c.p_obj, c.p_pos);
    }

    let json = pipeline.to_json()?;
    let restored = Pipeline::from_json(&json)?;
    let same = texts.iter().all(|t| restored.classify_text(&analyzer, t) == pipeline.classify_text(&analyzer, t));
    println!("\nmodel JSON: {} bytes, reload gives identical output: {same}", json.len());
    Ok(())
}
