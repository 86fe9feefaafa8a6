//! Ingest a JSON-lines dump and run the four corpus filters.
//!
//! `cargo run --example ingest_and_filter [corpus.jsonl]`. Without an
//! argument a small built-in dump is used.

use std::io::Cursor;
use std::path::Path;

use moodpipe::corpus::{filter_pipeline, ingest, ingest_reader, keep_english_accounts, FilterConfig};

const DUMP: &str = r#"{"id": "1", "text": "Obama speech tonight was about the economy and jobs", "lang": "en", "created_at": "2013-02-28T20:00:00Z"}
{"id": "2", "text": "RT @news: Obama speech tonight was about the economy", "lang": "en"}
{"id": "3", "text": "so tired", "lang": "en"}
{"id": "4", "text": "Le discours de ce soir était très long", "lang": "fr"}
{"id": "5", "text": "Obama speech tonight was about the economy and jobs!", "lang": "en-US"}
{"id": "6", "text": "Watched the game with friends, what a great finish", "lang": "en"}
{"id": "7", "text": "ok ok ok ok ok ok ok ok ok ok ok", "lang": "en"}
this line is not json
"#;

fn main() -> moodpipe::Result<()> {
    let report = match std::env::args().nth(1) {
        Some(path) => ingest(path)?,
        None => ingest_reader(Cursor::new(DUMP), Path::new("<built-in>"))?,
    };
    println!(
        "ingested {} tweets ({} malformed lines, {} without text, {} duplicate ids)",
        report.tweets.len(),
        report.malformed,
        report.missing_text,
        report.duplicate_ids
    );

    let english = keep_english_accounts(report.tweets);
    println!("{} from English-language accounts", english.len());

    let (kept, counts) = filter_pipeline(english, &FilterConfig::default())?;
    println!("{}", serde_json::to_string_pretty(&counts)?);
    for t in &kept {
        println!("  kept {:>3}  {}", t.id, t.text);
    }
    Ok(())
}
