//! Run configuration read from a TOML file. Every field has a default, so an
//! empty file is valid; command-line flags override file values.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classify::PipelineSpec;
use crate::corpus::FilterConfig;
use crate::error::{Error, Result};
use crate::features::Analyzer;
use crate::lexicons::{EmoticonLexicon, EnglishWords, MpqaLexicon};
use crate::scoring::ScoreConfig;

/// Environment variable naming a config file when `--config` is absent.
pub const CONFIG_ENV: &str = "MOODPIPE_CONFIG";

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Paths {
    pub corpus: Option<PathBuf>,
    pub labels: Option<PathBuf>,
    pub model: Option<PathBuf>,
    pub stats: Option<PathBuf>,
    /// MPQA clues file (`.tff`).
    pub mpqa: Option<PathBuf>,
    pub emoticons_positive: Option<PathBuf>,
    pub emoticons_negative: Option<PathBuf>,
    pub english_words: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterSettings {
    pub min_length_chars: usize,
    pub english_match_threshold: f64,
    pub similarity_threshold: f64,
}

impl Default for FilterSettings {
    fn default() -> Self {
        let d = FilterConfig::default();
        FilterSettings {
            min_length_chars: d.min_length_chars,
            english_match_threshold: d.english_match_threshold,
            similarity_threshold: d.similarity_threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub folds: usize,
    pub port: u16,
    pub paths: Paths,
    pub filter: FilterSettings,
    pub pipeline: PipelineSpec,
    pub score: ScoreConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            folds: 10,
            port: 8080,
            paths: Paths::default(),
            filter: FilterSettings::default(),
            pipeline: PipelineSpec::default(),
            score: ScoreConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(0, |s| text[..s.start.min(text.len())].matches('\n').count() + 1);
            Error::Parse { path: origin.into(), line, message: e.message().to_string() }
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        RunConfig::parse(&text, path)
    }

    /// Text resources with any configured lexicon files swapped in.
    pub fn analyzer(&self) -> Result<Analyzer> {
        let mut a = Analyzer::default();
        if let Some(p) = &self.paths.mpqa {
            a = a.with_mpqa(MpqaLexicon::load(p)?);
        }
        match (&self.paths.emoticons_positive, &self.paths.emoticons_negative) {
            (Some(p), Some(n)) => a = a.with_emoticons(EmoticonLexicon::load(p, n)?),
            (None, None) => {}
            _ => return Err(Error::invalid("set both emoticons_positive and emoticons_negative, or neither")),
        }
        if let Some(p) = &self.paths.english_words {
            a.english = std::sync::Arc::new(EnglishWords::load(p)?);
        }
        Ok(a)
    }

    pub fn filter_config(&self) -> Result<FilterConfig> {
        let english_words = match &self.paths.english_words {
            Some(p) => EnglishWords::load(p)?,
            None => EnglishWords::shipped().clone(),
        };
        let c = FilterConfig {
            min_length_chars: self.filter.min_length_chars,
            english_words,
            english_match_threshold: self.filter.english_match_threshold,
            similarity_threshold: self.filter.similarity_threshold,
        };
        c.validate()?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Stage2Kind;

    #[test]
    fn empty_file_is_defaults() {
        assert_eq!(RunConfig::parse("", Path::new("x.toml")).unwrap(), RunConfig::default());
    }

    #[test]
    fn nested_overrides() {
        let text = r#"
seed = 7
folds = 5

[paths]
corpus = "tweets.jsonl"

[pipeline]
stage2 = "knn"

[pipeline.stage1.unigram]
min_count = 3

[pipeline.stage1.selection]
mode = "information_gain"
k = 4

[score]
velocity_ref = 50.0
"#;
        let c = RunConfig::parse(text, Path::new("x.toml")).unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.folds, 5);
        assert_eq!(c.paths.corpus.as_deref(), Some(Path::new("tweets.jsonl")));
        assert_eq!(c.pipeline.stage2, Stage2Kind::Knn);
        assert_eq!(c.pipeline.stage1.unigram.min_count, 3);
        assert_eq!(c.pipeline.stage1.unigram.smoothing, 1.0);
        assert_eq!(c.score.velocity_ref, 50.0);
    }

    #[test]
    fn unknown_key_reports_line() {
        let err = RunConfig::parse("seed = 1\nbogus = 2\n", Path::new("x.toml")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }
}
