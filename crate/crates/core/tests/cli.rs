use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn moodpipe(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moodpipe"))
        .args(args)
        .current_dir(dir)
        .env_remove("MOODPIPE_CONFIG")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn with_corpus() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    json(&moodpipe(&["synth", "--out", ".", "--per-class", "80"], dir.path()));
    dir
}

#[test]
fn help_and_version_go_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = moodpipe(&["--help"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for sub in [
        "ingest", "filter", "merge-labels", "train", "evaluate", "classify", "score", "compare", "stats-tick",
        "stats-series", "serve",
    ] {
        assert!(text.contains(sub), "help lacks {sub}");
    }
    assert_eq!(moodpipe(&["--version"], dir.path()).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = moodpipe(&["filter", "--bogus"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(moodpipe(&["frobnicate"], dir.path()).status.code(), Some(1));
    assert_eq!(moodpipe(&["evaluate", "--stage2", "forest"], dir.path()).status.code(), Some(1));
    // required path neither given nor configured
    assert_eq!(moodpipe(&["train"], dir.path()).status.code(), Some(1));
}

#[test]
fn data_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = moodpipe(&["filter", "--in", "missing.jsonl"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    std::fs::write(dir.path().join("bad.tsv"), "tweet_id\tannotator_1\nx\tmaybe\n").unwrap();
    assert_eq!(moodpipe(&["merge-labels", "--in", "bad.tsv"], dir.path()).status.code(), Some(2));
}

#[test]
fn full_flow() {
    let dir = with_corpus();
    let d = dir.path();

    let f = json(&moodpipe(&["filter", "--in", "tweets.jsonl", "--out", "kept.jsonl"], d));
    let total: u64 = ["retweets_removed", "short_removed", "non_english_removed", "duplicates_removed", "kept"]
        .iter()
        .map(|k| f[k].as_u64().unwrap())
        .sum();
    assert_eq!(total, 240);

    let m = json(&moodpipe(&["merge-labels", "--in", "labels.tsv", "--out", "merged.tsv"], d));
    assert_eq!(m["total"], 240);
    assert_eq!(m["agreement"].as_array().unwrap().len(), 3);

    let t = json(&moodpipe(&["train", "--in", "tweets.jsonl", "--labels", "merged.tsv", "--out", "model.json"], d));
    assert_eq!(t["stage2"], "svm");
    assert!(d.join("model.json").exists());

    let c = json(&moodpipe(&["classify", "--model", "model.json", "--text", "I hate this traffic :("], d));
    assert_eq!(c["class"], "negative");
    let all = json(&moodpipe(&["classify", "--model", "model.json", "--in", "tweets.jsonl"], d));
    assert_eq!(all.as_array().unwrap().len(), 240);

    let s = json(&moodpipe(&["score", "--in", "tweets.jsonl", "--model", "model.json", "--keyword", "coffee"], d));
    assert_eq!(s["keyword"], "coffee");
    let cmp = json(&moodpipe(
        &["compare", "--in", "tweets.jsonl", "--model", "model.json", "--keyword", "traffic,coffee"],
        d,
    ));
    assert_eq!(cmp.as_array().unwrap().len(), 2);
    let bad = moodpipe(&["compare", "--in", "tweets.jsonl", "--model", "model.json", "--keyword", "coffee"], d);
    assert_eq!(bad.status.code(), Some(1));

    let tick = ["stats-tick", "--in", "tweets.jsonl", "--model", "model.json", "--store", "s.jsonl", "--keyword", "coffee,obama"];
    json(&moodpipe(&tick, d));
    let first = std::fs::read(d.join("s.jsonl")).unwrap();
    json(&moodpipe(&tick, d));
    assert_eq!(std::fs::read(d.join("s.jsonl")).unwrap(), first);
    let series = json(&moodpipe(&["stats-series", "--store", "s.jsonl", "--keyword", "coffee"], d));
    assert_eq!(series.as_array().unwrap().len(), 1);
    let bad = moodpipe(&["stats-series", "--store", "s.jsonl", "--keyword", "coffee", "--from", "9", "--to", "1"], d);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn evaluate_report_shape_and_gain() {
    let dir = with_corpus();
    let d = dir.path();
    let args = ["evaluate", "--in", "tweets.jsonl", "--labels", "labels.tsv", "--folds", "5", "--stage2", "knn"];
    let r = json(&moodpipe(&[&args[..], &["--gain", "--out", "report.json"]].concat(), d));
    assert_eq!(r["folds"], 5);
    assert_eq!(r["stage2"], "knn");
    for table in ["objectivity", "polarity", "pipeline"] {
        let classes = r[table]["classes"].as_array().unwrap();
        assert!(!classes.is_empty());
        for row in classes {
            for col in ["true_positive_rate", "false_positive_rate", "recall", "precision", "f_measure"] {
                let v = row[col].as_f64().unwrap_or_else(|| panic!("{table}: no {col} in {row}"));
                assert!((0.0..=1.0).contains(&v));
            }
        }
    }
    assert_eq!(r["information_gain"]["objectivity"]["gains"].as_array().unwrap().len(), 5);
    let saved: Value = serde_json::from_slice(&std::fs::read(d.join("report.json")).unwrap()).unwrap();
    assert_eq!(saved, r);
}

#[test]
fn config_file_and_env_with_flag_override() {
    let dir = with_corpus();
    let d = dir.path();
    std::fs::write(
        d.join("run.toml"),
        "seed = 7\nfolds = 3\n[paths]\ncorpus = \"tweets.jsonl\"\nlabels = \"labels.tsv\"\n[pipeline]\nstage2 = \"nb\"\n",
    )
    .unwrap();
    let r = json(&moodpipe(&["--config", "run.toml", "evaluate"], d));
    assert_eq!((r["seed"].as_u64(), r["folds"].as_u64(), r["stage2"].as_str()), (Some(7), Some(3), Some("nb")));

    let out = Command::new(env!("CARGO_BIN_EXE_moodpipe"))
        .args(["evaluate", "--seed", "9", "--stage2", "rules"])
        .env("MOODPIPE_CONFIG", "run.toml")
        .current_dir(d)
        .output()
        .unwrap();
    let r = json(&out);
    assert_eq!((r["seed"].as_u64(), r["folds"].as_u64(), r["stage2"].as_str()), (Some(9), Some(3), Some("rules")));

    std::fs::write(d.join("bad.toml"), "seed = 1\nfoldz = 3\n").unwrap();
    let out = moodpipe(&["--config", "bad.toml", "evaluate"], d);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":2:"));
}

#[test]
fn ingest_normalizes_and_filters_languages() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let raw = [
        r#"{"id": "1", "text": "hello there world", "lang": "en-GB", "created_at": "2013-03-01T10:00:00Z"}"#,
        r#"{"id": "2", "text": "bonjour tout le monde", "lang": "fr"}"#,
        r#"{"id": "3", "lang": "en"}"#,
        "not json",
    ];
    std::fs::write(d.join("raw.jsonl"), raw.join("\n")).unwrap();
    let r = json(&moodpipe(&["ingest", "--in", "raw.jsonl", "--out", "c.jsonl", "--english-only"], d));
    assert_eq!(r["written"], 1);
    assert_eq!(r["non_english_accounts"], 1);
    let written = std::fs::read_to_string(d.join("c.jsonl")).unwrap();
    let t: Value = serde_json::from_str(written.lines().next().unwrap()).unwrap();
    assert_eq!(t["created_at"], 1362132000);
}
