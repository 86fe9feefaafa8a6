//! Two-stage tweet sentiment pipeline.
//!
//! The crate covers the full path from raw micro-blog posts to keyword
//! popularity scores:
//!
//! * [`corpus`]: JSON-lines ingestion, the four-rule corpus filter and a
//!   replayable keyword search that emulates paged REST access.
//! * [`labeling`]: majority-vote merging of annotator labels and
//!   strict/lenient agreement.
//! * [`text`]: tokenizer, Porter stemmer, stop words and a lexicon tagger.
//! * [`lexicons`]: MPQA subjectivity clues and emoticon lists.
//! * [`features`]: unigram Naive Bayes models, the objectivity and polarity
//!   feature catalogs, and information-gain ranking.
//! * [`classify`]: stage-1 Naive Bayes classifiers, stage-2 classifiers over
//!   the `(P(obj), P(pos))` plane, metrics and stratified cross-validation.
//! * [`scoring`]: TweetScore, TweetCompare and hourly TweetStats.
//! * [`server`] and [`cli`]: HTTP API and command-line front end.

pub mod classify;
pub mod cli;
pub mod config;
pub mod corpus;
pub mod error;
pub mod features;
pub mod labeling;
pub mod lexicons;
pub mod scoring;
pub mod server;
pub mod synth;
pub mod text;

pub use error::{Error, Result};
