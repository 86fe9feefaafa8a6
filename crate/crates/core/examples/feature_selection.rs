//! Rank both feature catalogs by information gain, fold by fold.

use moodpipe::classify::fold_gain_report;
use moodpipe::features::{default_redundant, published_selection, select_top_k, Analyzer, Catalog, UnigramConfig};
use moodpipe::synth::{generate, SynthConfig};

fn main() -> moodpipe::Result<()> {
    let analyzer = Analyzer::default();
    let data = generate(&SynthConfig { per_class: 300, ..Default::default() });
    let tweets: Vec<_> = data.iter().map(|t| analyzer.analyze(&t.tweet.text)).collect();
    let labels: Vec<_> = data.iter().map(|t| t.label).collect();

    for catalog in [Catalog::Objectivity, Catalog::Polarity] {
        let report = fold_gain_report(&analyzer, catalog, &tweets, &labels, 10, 42, &UnigramConfig::default())?;
        println!("{catalog:?}: {} features, mean gain over {} folds", catalog.features().len(), report.gains.len());
        for (f, g) in report.ranked().iter().take(8) {
            println!("  {:<28} {g:.4}", f.name());
        }
        let top = select_top_k(&report, 5, default_redundant(catalog))?;
        let names: Vec<_> = top.features.iter().map(|f| f.name()).collect();
        println!("  top 5 minus redundant ones:     {}", names.join(", "));
        let fixed: Vec<_> = published_selection(catalog).features.iter().map(|f| f.name()).collect();
        println!("  default selection:              {}\n", fixed.join(", "));
    }
    Ok(())
}
