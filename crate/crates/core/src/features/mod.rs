//! Unigram class models, the two feature catalogs and information-gain
//! feature ranking.

mod catalog;
mod gain;
mod unigram;

use std::sync::{Arc, LazyLock};

use crate::lexicons::{EmoticonLexicon, EnglishWords, MpqaLexicon};
use crate::text::{PosTag, Token, TokenKind, Tagger, Tokenizer};

pub use catalog::{extract, extract_objsubj, extract_polarity, Catalog, Feature, FeatureKind, FeatureVector};
pub use gain::{
    best_binary_split, default_redundant, entropy, gain_report, information_gain, published_selection,
    select_top_k,
    Binning, FeatureGainReport, Selection,
};
pub use unigram::{UnigramClass, UnigramConfig, UnigramModel};

/// Text resources shared by feature extraction: tokenizer, tagger and the
/// three lexicons. Cheap to clone.
#[derive(Debug, Clone)]
pub struct Analyzer {
    pub tokenizer: Arc<Tokenizer>,
    pub tagger: Arc<Tagger>,
    pub emoticons: Arc<EmoticonLexicon>,
    pub mpqa: Arc<MpqaLexicon>,
    pub english: Arc<EnglishWords>,
}

static SHIPPED: LazyLock<Analyzer> = LazyLock::new(|| Analyzer {
    tokenizer: Arc::new(Tokenizer::from_lexicon(EmoticonLexicon::shipped())),
    tagger: Arc::new(Tagger::shipped().clone()),
    emoticons: Arc::new(EmoticonLexicon::shipped().clone()),
    mpqa: Arc::new(MpqaLexicon::shipped().clone()),
    english: Arc::new(EnglishWords::shipped().clone()),
});

impl Default for Analyzer {
    fn default() -> Self {
        SHIPPED.clone()
    }
}

impl Analyzer {
    pub fn with_mpqa(mut self, mpqa: MpqaLexicon) -> Self {
        self.mpqa = Arc::new(mpqa);
        self
    }

    pub fn with_emoticons(mut self, emoticons: EmoticonLexicon) -> Self {
        self.tokenizer = Arc::new(Tokenizer::from_lexicon(&emoticons));
        self.emoticons = Arc::new(emoticons);
        self
    }

    pub fn analyze(&self, text: &str) -> AnalyzedTweet {
        let tokens = self.tokenizer.tokenize(text);
        let tags = self.tagger.tag(&tokens);
        AnalyzedTweet {
            text: text.to_string(),
            tokens,
            tags,
        }
    }
}

/// A tweet's tokens with aligned POS tags.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzedTweet {
    pub text: String,
    pub tokens: Vec<Token>,
    pub tags: Vec<PosTag>,
}

impl AnalyzedTweet {
    /// Lowercased unigram terms: word tokens, plus hashtag words when
    /// `include_hashtags` is set.
    pub fn terms(&self, include_hashtags: bool) -> Vec<String> {
        self.tokens
            .iter()
            .filter_map(|t| match t.kind {
                TokenKind::Word => Some(t.surface.to_lowercase()),
                TokenKind::Hashtag if include_hashtags => t.hashtag_word().map(str::to_lowercase),
                _ => None,
            })
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}
