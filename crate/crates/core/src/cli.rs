//! The `moodpipe` command line.
//!
//! Every subcommand prints one JSON document on stdout and a short human
//! summary on stderr. Exit codes: 0 success, 1 usage error, 2 data error.

use std::collections::HashMap;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{evaluate_all, fold_gain_report, Classification, Pipeline, Sentiment3, Stage2Kind};
use crate::config::{RunConfig, CONFIG_ENV};
use crate::corpus::{filter_pipeline, ingest, keep_english_accounts, write_jsonl, Corpus, FilterReport};
use crate::error::{Error, Result};
use crate::features::{AnalyzedTweet, Analyzer, Catalog, FeatureGainReport};
use crate::labeling::{
    agreement_matrix, class_counts, merge_label_sets, read_any_labels, read_label_tsv, write_label_tsv,
    write_merged_tsv, AgreementMode, ClassCounts, MergedLabel,
};
use crate::scoring::{Scorer, StatsStore};
use crate::server::{self, AppState};
use crate::synth::{annotate, generate, SynthConfig};

#[derive(Debug, Parser)]
#[command(name = "moodpipe", version, about = "Two-stage tweet sentiment pipeline and keyword scoring")]
struct Cli {
    /// TOML config file; falls back to $MOODPIPE_CONFIG.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Seed for fold assignment and stage-2 training order.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normalize a raw JSON-lines dump into the corpus format.
    Ingest(IngestArgs),
    /// Drop retweets, short, non-English and near-duplicate tweets.
    Filter(IoArgs),
    /// Majority-vote annotator labels into one outcome per tweet.
    MergeLabels(IoArgs),
    /// Train the two-stage pipeline and save it as JSON.
    Train(TrainArgs),
    /// Cross-validate stage 1 and the full pipeline.
    Evaluate(EvaluateArgs),
    /// Classify a text or every tweet of a corpus.
    Classify(ClassifyArgs),
    /// Popularity score of one keyword.
    Score(ScoreArgs),
    /// Rank 2 or 3 keywords by popularity score.
    Compare(ScoreArgs),
    /// Score keywords for one clock hour and record them in the stats store.
    StatsTick(StatsTickArgs),
    /// Recorded hourly scores of a keyword.
    StatsSeries(StatsSeriesArgs),
    /// Serve the JSON API.
    Serve(ServeArgs),
    /// Write a synthetic labeled corpus (tweets.jsonl, labels.tsv).
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
struct IoArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct IngestArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Keep only tweets whose account language is English.
    #[arg(long)]
    english_only: bool,
}

#[derive(Debug, Args)]
struct LabeledArgs {
    /// Corpus (JSON lines).
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Merged or raw annotator labels (TSV).
    #[arg(long, value_name = "FILE")]
    labels: Option<PathBuf>,
    #[arg(long, value_parser = parse_stage2)]
    stage2: Option<Stage2Kind>,
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[command(flatten)]
    data: LabeledArgs,
    /// Where to write the model.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[command(flatten)]
    data: LabeledArgs,
    #[arg(long)]
    folds: Option<usize>,
    /// Also report per-fold information gain of both feature catalogs.
    #[arg(long)]
    gain: bool,
    /// Also write the report to this file.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,
    /// Text to classify; otherwise every tweet of --in.
    #[arg(long, conflicts_with = "input")]
    text: Option<String>,
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    /// Keyword; for compare, a comma-separated list or repeated flag.
    #[arg(long, value_delimiter = ',', required = true)]
    keyword: Vec<String>,
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,
    /// Replay clock (epoch seconds); defaults to the newest tweet.
    #[arg(long)]
    now: Option<i64>,
}

#[derive(Debug, Args)]
struct StatsTickArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    keyword: Vec<String>,
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    store: Option<PathBuf>,
    /// Hour start (epoch seconds, multiple of 3600); defaults to the hour
    /// holding the newest tweet.
    #[arg(long)]
    hour: Option<i64>,
}

#[derive(Debug, Args)]
struct StatsSeriesArgs {
    #[arg(long)]
    keyword: String,
    #[arg(long, value_name = "FILE")]
    store: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    from: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    to: Option<i64>,
}

#[derive(Debug, Args)]
struct ServeArgs {
    #[arg(long)]
    port: Option<u16>,
    #[arg(long, default_value = "127.0.0.1")]
    host: IpAddr,
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    store: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    #[arg(long, default_value_t = 1000)]
    per_class: usize,
    /// Probability an annotator gives a random label.
    #[arg(long, default_value_t = 0.1)]
    label_noise: f64,
}

fn parse_stage2(s: &str) -> std::result::Result<Stage2Kind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Either a problem with how the command was invoked, or with the data.
enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => Failure::Usage(m),
            other => Failure::Data(other),
        }
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn need(flag: Option<PathBuf>, configured: &Option<PathBuf>, name: &str) -> Outcome<PathBuf> {
    flag.or_else(|| configured.clone())
        .ok_or_else(|| usage(format!("--{name} is required (or set it in the config file)")))
}

struct Ctx<'a> {
    config: RunConfig,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn json<T: Serialize>(&mut self, value: &T) -> Outcome {
        let text = serde_json::to_string_pretty(value).map_err(Error::from)?;
        match writeln!(self.out, "{text}") {
            // reader went away (`| head`); nothing left to report
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            r => r.map_err(|e| Error::io("<stdout>", e).into()),
        }
    }

    fn say(&mut self, msg: impl AsRef<str>) {
        let _ = writeln!(self.err, "{}", msg.as_ref());
    }
}

fn create(path: &Path) -> Result<std::io::BufWriter<std::fs::File>> {
    std::fs::File::create(path)
        .map(std::io::BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

/// Run the CLI with explicit arguments and output streams; returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    1
                }
            };
        }
    };
    let config_path = cli.config.clone().or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let config = match config_path {
        Some(p) => match RunConfig::load(&p) {
            Ok(c) => c,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                return 1;
            }
        },
        None => RunConfig::default(),
    };
    let mut ctx = Ctx { config, out: stdout, err: stderr };
    if let Some(seed) = cli.seed {
        ctx.config.seed = seed;
    }
    match dispatch(cli.command, &mut ctx) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            ctx.say(format!("error: {m}"));
            1
        }
        Err(Failure::Data(e)) => {
            ctx.say(format!("error: {e}"));
            2
        }
    }
}

/// Entry point for the binary: real arguments, streams and logging.
pub fn main_with_env() -> i32 {
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(command: Command, ctx: &mut Ctx) -> Outcome {
    match command {
        Command::Ingest(a) => cmd_ingest(a, ctx),
        Command::Filter(a) => cmd_filter(a, ctx),
        Command::MergeLabels(a) => cmd_merge_labels(a, ctx),
        Command::Train(a) => cmd_train(a, ctx),
        Command::Evaluate(a) => cmd_evaluate(a, ctx),
        Command::Classify(a) => cmd_classify(a, ctx),
        Command::Score(a) => cmd_score(a, ctx, false),
        Command::Compare(a) => cmd_score(a, ctx, true),
        Command::StatsTick(a) => cmd_stats_tick(a, ctx),
        Command::StatsSeries(a) => cmd_stats_series(a, ctx),
        Command::Serve(a) => cmd_serve(a, ctx),
        Command::Synth(a) => cmd_synth(a, ctx),
    }
}

#[derive(Serialize)]
struct IngestSummary {
    read: usize,
    written: usize,
    missing_text: usize,
    malformed: usize,
    duplicate_ids: usize,
    non_english_accounts: usize,
}

fn cmd_ingest(a: IngestArgs, ctx: &mut Ctx) -> Outcome {
    let input = need(a.io.input, &None, "in")?;
    let report = ingest(&input)?;
    let read = report.tweets.len();
    let tweets = if a.english_only { keep_english_accounts(report.tweets) } else { report.tweets };
    if let Some(out) = &a.io.out {
        write_jsonl(create(out)?, &tweets)?;
    }
    let s = IngestSummary {
        read,
        written: tweets.len(),
        missing_text: report.missing_text,
        malformed: report.malformed,
        duplicate_ids: report.duplicate_ids,
        non_english_accounts: read - tweets.len(),
    };
    ctx.say(format!("ingested {} tweets ({} skipped lines)", s.written, s.missing_text + s.malformed));
    ctx.json(&s)
}

fn cmd_filter(a: IoArgs, ctx: &mut Ctx) -> Outcome {
    let input = need(a.input, &None, "in")?;
    let cfg = ctx.config.filter_config()?;
    let (kept, report): (_, FilterReport) = filter_pipeline(ingest(&input)?.tweets, &cfg)?;
    if let Some(out) = &a.out {
        write_jsonl(create(out)?, &kept)?;
    }
    ctx.say(format!("kept {} of {} tweets", report.kept, report.total()));
    ctx.json(&report)
}

#[derive(Serialize)]
struct PairAgreement {
    a: usize,
    b: usize,
    strict: f64,
    lenient: f64,
}

#[derive(Serialize)]
struct MergeSummary {
    rows: usize,
    counts: ClassCounts,
    total: usize,
    training_total: usize,
    subjective_total: usize,
    agreement: Vec<PairAgreement>,
}

fn cmd_merge_labels(a: IoArgs, ctx: &mut Ctx) -> Outcome {
    let input = need(a.input, &ctx.config.paths.labels, "in")?;
    let sets = read_label_tsv(&input)?;
    let merged = merge_label_sets(&sets)?;
    if let Some(out) = &a.out {
        write_merged_tsv(create(out)?, &merged)?;
    }
    let strict = agreement_matrix(&sets, AgreementMode::Strict)?;
    let lenient = agreement_matrix(&sets, AgreementMode::Lenient)?;
    let agreement = strict
        .iter()
        .map(|(&(i, j), &s)| PairAgreement { a: i, b: j, strict: s, lenient: lenient[&(i, j)] })
        .collect();
    let outcomes: Vec<MergedLabel> = merged.iter().map(|(_, m)| *m).collect();
    let counts = class_counts(&outcomes);
    let s = MergeSummary {
        rows: merged.len(),
        counts,
        total: counts.total(),
        training_total: counts.training_total(),
        subjective_total: counts.subjective_total(),
        agreement,
    };
    ctx.say(format!("merged {} rows: {} trainable", s.rows, s.training_total));
    ctx.json(&s)
}

struct Labeled {
    tweets: Vec<AnalyzedTweet>,
    labels: Vec<Sentiment3>,
    unlabeled: usize,
    excluded: usize,
}

/// Join corpus tweets with trainable labels, in corpus order.
fn load_labeled(input: &Path, labels: &Path, analyzer: &Analyzer) -> Result<Labeled> {
    let corpus = ingest(input)?.tweets;
    let by_id: HashMap<String, MergedLabel> = read_any_labels(labels)?.into_iter().collect();
    let mut texts = Vec::new();
    let mut ys = Vec::new();
    let (mut unlabeled, mut excluded) = (0, 0);
    for t in &corpus {
        match by_id.get(&t.id) {
            None => unlabeled += 1,
            Some(m) => match Sentiment3::from_merged(*m) {
                Some(y) => {
                    texts.push(t.text.as_str());
                    ys.push(y);
                }
                None => excluded += 1,
            },
        }
    }
    let tweets = texts.par_iter().map(|t| analyzer.analyze(t)).collect();
    Ok(Labeled { tweets, labels: ys, unlabeled, excluded })
}

fn labeled_inputs(a: &LabeledArgs, ctx: &mut Ctx) -> Outcome<(Analyzer, Labeled)> {
    let input = need(a.input.clone(), &ctx.config.paths.corpus, "in")?;
    let labels = need(a.labels.clone(), &ctx.config.paths.labels, "labels")?;
    if let Some(k) = a.stage2 {
        ctx.config.pipeline.stage2 = k;
    }
    ctx.config.pipeline.stage2_params.seed = ctx.config.seed;
    let analyzer = ctx.config.analyzer()?;
    let data = load_labeled(&input, &labels, &analyzer)?;
    if data.unlabeled + data.excluded > 0 {
        ctx.say(format!(
            "{} tweets without labels and {} with non-trainable outcomes were skipped",
            data.unlabeled, data.excluded
        ));
    }
    Ok((analyzer, data))
}

#[derive(Serialize)]
struct TrainSummary {
    tweets: usize,
    objective: usize,
    positive: usize,
    negative: usize,
    stage2: Stage2Kind,
    objectivity_features: Vec<String>,
    polarity_features: Vec<String>,
    vocabulary: (usize, usize),
    model: Option<PathBuf>,
}

fn cmd_train(a: TrainArgs, ctx: &mut Ctx) -> Outcome {
    let (analyzer, data) = labeled_inputs(&a.data, ctx)?;
    let out = a.out.or_else(|| ctx.config.paths.model.clone());
    let pipeline = Pipeline::train(&analyzer, &data.tweets, &data.labels, &ctx.config.pipeline)?;
    if let Some(p) = &out {
        pipeline.save(p)?;
    }
    let count = |c| data.labels.iter().filter(|l| **l == c).count();
    let names = |fs: &[crate::features::Feature]| fs.iter().map(|f| f.name().to_string()).collect();
    let s = TrainSummary {
        tweets: data.labels.len(),
        objective: count(Sentiment3::Objective),
        positive: count(Sentiment3::Positive),
        negative: count(Sentiment3::Negative),
        stage2: pipeline.spec.stage2,
        objectivity_features: names(&pipeline.objectivity.selection.features),
        polarity_features: names(&pipeline.polarity.selection.features),
        vocabulary: (pipeline.objectivity.unigram.vocab.len(), pipeline.polarity.unigram.vocab.len()),
        model: out,
    };
    ctx.say(format!("trained on {} tweets with {} stage 2", s.tweets, s.stage2));
    ctx.json(&s)
}

#[derive(Serialize)]
struct EvaluateOutput {
    #[serde(flatten)]
    evaluation: crate::classify::Evaluation,
    #[serde(skip_serializing_if = "Option::is_none")]
    information_gain: Option<GainOutput>,
}

#[derive(Serialize)]
struct GainOutput {
    objectivity: FeatureGainReport,
    polarity: FeatureGainReport,
}

fn cmd_evaluate(a: EvaluateArgs, ctx: &mut Ctx) -> Outcome {
    if let Some(k) = a.folds {
        ctx.config.folds = k;
    }
    let (analyzer, data) = labeled_inputs(&a.data, ctx)?;
    let (k, seed) = (ctx.config.folds, ctx.config.seed);
    let spec = ctx.config.pipeline.clone();
    let evaluation = evaluate_all(&analyzer, &data.tweets, &data.labels, k, &spec, seed)?;
    let information_gain = if a.gain {
        let gain = |c| fold_gain_report(&analyzer, c, &data.tweets, &data.labels, k, seed, &spec.stage1.unigram);
        Some(GainOutput { objectivity: gain(Catalog::Objectivity)?, polarity: gain(Catalog::Polarity)? })
    } else {
        None
    };
    ctx.say(format!(
        "{k}-fold macro F: objectivity {:.3}, polarity {:.3}, pipeline ({}) {:.3}",
        evaluation.objectivity.macro_f(),
        evaluation.polarity.macro_f(),
        evaluation.stage2,
        evaluation.pipeline.macro_f()
    ));
    let report = EvaluateOutput { evaluation, information_gain };
    if let Some(out) = &a.out {
        let mut f = create(out)?;
        serde_json::to_writer_pretty(&mut f, &report).map_err(Error::from)?;
        writeln!(f).map_err(|e| Error::io(out, e))?;
    }
    ctx.json(&report)
}

fn load_pipeline(flag: Option<PathBuf>, ctx: &Ctx) -> Outcome<Pipeline> {
    let path = need(flag, &ctx.config.paths.model, "model")?;
    Ok(Pipeline::load(path)?)
}

#[derive(Serialize)]
struct ClassifiedTweet {
    id: String,
    #[serde(flatten)]
    result: Classification,
}

fn cmd_classify(a: ClassifyArgs, ctx: &mut Ctx) -> Outcome {
    let pipeline = load_pipeline(a.model, ctx)?;
    let analyzer = ctx.config.analyzer()?;
    if let Some(text) = a.text {
        let r = pipeline.classify_text(&analyzer, &text);
        ctx.say(format!("{} (p_obj {:.3}, p_pos {:.3})", r.class, r.p_obj, r.p_pos));
        return ctx.json(&r);
    }
    let input = need(a.input, &ctx.config.paths.corpus, "in")?;
    let tweets = ingest(&input)?.tweets;
    let results: Vec<ClassifiedTweet> = tweets
        .par_iter()
        .map(|t| ClassifiedTweet { id: t.id.clone(), result: pipeline.classify_text(&analyzer, &t.text) })
        .collect();
    ctx.say(format!("classified {} tweets", results.len()));
    ctx.json(&results)
}

fn scorer(input: Option<PathBuf>, model: Option<PathBuf>, ctx: &Ctx) -> Outcome<Scorer> {
    let corpus_path = need(input, &ctx.config.paths.corpus, "in")?;
    let pipeline = load_pipeline(model, ctx)?;
    let corpus = Corpus::load(corpus_path)?;
    Ok(Scorer::new(corpus, pipeline, ctx.config.analyzer()?, ctx.config.score.clone())?)
}

fn cmd_score(a: ScoreArgs, ctx: &mut Ctx, compare: bool) -> Outcome {
    let s = scorer(a.input, a.model, ctx)?;
    let now = a.now.unwrap_or_else(|| s.now());
    if compare {
        let ranked = s.compare(&a.keyword, now)?;
        let line: Vec<String> = ranked.iter().map(|r| format!("{} {:.1}", r.keyword, r.score)).collect();
        ctx.say(line.join(" > "));
        return ctx.json(&ranked);
    }
    let [keyword] = a.keyword.as_slice() else {
        return Err(usage("score takes exactly one --keyword"));
    };
    let r = s.score(keyword, now)?;
    ctx.say(format!("{}: {:.1} ({} pos, {} neg, {} neutral)", r.keyword, r.score, r.n_pos, r.n_neg, r.n_neu));
    ctx.json(&r)
}

fn store(flag: Option<PathBuf>, ctx: &Ctx) -> Outcome<StatsStore> {
    Ok(StatsStore::new(need(flag, &ctx.config.paths.stats, "store")?))
}

fn cmd_stats_tick(a: StatsTickArgs, ctx: &mut Ctx) -> Outcome {
    let st = store(a.store, ctx)?;
    let s = scorer(a.input, a.model, ctx)?;
    let hour = a.hour.unwrap_or_else(|| s.now().div_euclid(3600) * 3600);
    let stats = s.stats_tick(&a.keyword, hour, &st)?;
    ctx.say(format!("recorded {} keywords for hour {hour}", stats.len()));
    ctx.json(&stats)
}

fn cmd_stats_series(a: StatsSeriesArgs, ctx: &mut Ctx) -> Outcome {
    let st = store(a.store, ctx)?;
    let series = st.series(&a.keyword, a.from.unwrap_or(i64::MIN), a.to.unwrap_or(i64::MAX))?;
    ctx.say(format!("{} hourly records", series.len()));
    ctx.json(&series)
}

fn cmd_serve(a: ServeArgs, ctx: &mut Ctx) -> Outcome {
    let port = a.port.unwrap_or(ctx.config.port);
    let s = scorer(a.input, a.model, ctx)?;
    let st = a.store.or_else(|| ctx.config.paths.stats.clone()).map(StatsStore::new);
    let state = AppState::new(s, st);
    let addr = SocketAddr::new(a.host, port);
    ctx.say(format!("serving on http://{addr} (clock {})", state.now));
    let rt = tokio::runtime::Runtime::new().map_err(|e| Error::io("<runtime>", e))?;
    rt.block_on(server::serve(addr, state)).map_err(|e| Error::io(format!("{addr}"), e))?;
    Ok(())
}

#[derive(Serialize)]
struct SynthSummary {
    tweets: PathBuf,
    labels: PathBuf,
    count: usize,
    seed: u64,
}

fn cmd_synth(a: SynthArgs, ctx: &mut Ctx) -> Outcome {
    if !(0.0..=1.0).contains(&a.label_noise) {
        return Err(usage("--label-noise must be in [0, 1]"));
    }
    std::fs::create_dir_all(&a.out).map_err(|e| Error::io(&a.out, e))?;
    let cfg = SynthConfig { per_class: a.per_class, seed: ctx.config.seed, ..Default::default() };
    let data = generate(&cfg);
    let tweets: Vec<_> = data.iter().map(|t| t.tweet.clone()).collect();
    let tweets_path = a.out.join("tweets.jsonl");
    let labels_path = a.out.join("labels.tsv");
    write_jsonl(create(&tweets_path)?, &tweets)?;
    write_label_tsv(create(&labels_path)?, &annotate(&data, 3, a.label_noise, ctx.config.seed))?;
    ctx.say(format!("wrote {} tweets to {}", tweets.len(), a.out.display()));
    ctx.json(&SynthSummary { tweets: tweets_path, labels: labels_path, count: tweets.len(), seed: ctx.config.seed })
}
