use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use super::{Token, TokenKind};
use crate::error::{Error, Result};

macro_rules! pos_tags {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// Penn Treebank part-of-speech tag, plus a sentinel for non-word
        /// tokens.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum PosTag {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl PosTag {
            pub const ALL: &'static [PosTag] = &[$(PosTag::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(PosTag::$variant => $name,)*
                }
            }
        }

        impl FromStr for PosTag {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(PosTag::$variant),)*
                    _ => Err(Error::invalid(format!("unknown POS tag {s:?}"))),
                }
            }
        }
    };
}

pos_tags! {
    CC => "CC", CD => "CD", DT => "DT", EX => "EX", FW => "FW", IN => "IN",
    JJ => "JJ", JJR => "JJR", JJS => "JJS", LS => "LS", MD => "MD",
    NN => "NN", NNS => "NNS", NNP => "NNP", NNPS => "NNPS", PDT => "PDT",
    POS => "POS", PRP => "PRP", PRPS => "PRP$", RB => "RB", RBR => "RBR",
    RBS => "RBS", RP => "RP", SYM => "SYM", TO => "TO", UH => "UH",
    VB => "VB", VBD => "VBD", VBG => "VBG", VBN => "VBN", VBP => "VBP",
    VBZ => "VBZ", WDT => "WDT", WP => "WP", WPS => "WP$", WRB => "WRB",
    NonWord => "-NONE-",
}

impl PosTag {
    pub fn is_adjective(self) -> bool {
        matches!(self, PosTag::JJ | PosTag::JJR | PosTag::JJS)
    }

    pub fn is_verb(self) -> bool {
        matches!(
            self,
            PosTag::VB | PosTag::VBD | PosTag::VBG | PosTag::VBN | PosTag::VBP | PosTag::VBZ
        )
    }

    pub fn is_noun(self) -> bool {
        matches!(self, PosTag::NN | PosTag::NNS | PosTag::NNP | PosTag::NNPS)
    }

    pub fn is_pronoun(self) -> bool {
        matches!(self, PosTag::PRP | PosTag::PRPS | PosTag::WP | PosTag::WPS)
    }

    pub fn is_adverb(self) -> bool {
        matches!(self, PosTag::RB | PosTag::RBR | PosTag::RBS | PosTag::WRB)
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

static SHIPPED_LEXICON: &str = include_str!("../../data/tag_lexicon.tsv");
static SHIPPED_TAGGER: LazyLock<Tagger> =
    LazyLock::new(|| Tagger::parse(SHIPPED_LEXICON).expect("shipped tag lexicon is valid"));

/// Unigram lexicon tagger with suffix fallbacks.
///
/// Known words (case-folded) get their most frequent tag from the lexicon.
/// Unknown words go through, in order: capitalized and not sentence-initial
/// → NNP; `-ly` → RB; `-ing` → VBG; `-ed` → VBD; `-est` → JJS; `-er` on an
/// adjectival stem → JJR; `-s` → VBZ when the stem is a known verb, NNS
/// otherwise; anything else → NN. Number tokens are CD, every other non-word
/// token gets [`PosTag::NonWord`].
#[derive(Debug, Clone)]
pub struct Tagger {
    lexicon: HashMap<String, PosTag>,
}

impl Default for Tagger {
    fn default() -> Self {
        SHIPPED_TAGGER.clone()
    }
}

impl Tagger {
    /// Parse a `word<TAB>TAG` lexicon. Later duplicates are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lexicon = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, tag) = line.split_once('\t').ok_or_else(|| Error::Parse {
                path: "<tag lexicon>".into(),
                line: i + 1,
                message: "expected word<TAB>TAG".into(),
            })?;
            let tag: PosTag = tag.trim().parse().map_err(|e: Error| Error::Parse {
                path: "<tag lexicon>".into(),
                line: i + 1,
                message: e.to_string(),
            })?;
            lexicon.entry(word.trim().to_lowercase()).or_insert(tag);
        }
        Ok(Tagger { lexicon })
    }

    pub fn shipped() -> &'static Tagger {
        &SHIPPED_TAGGER
    }

    pub fn lookup(&self, word: &str) -> Option<PosTag> {
        self.lexicon.get(&word.to_lowercase()).copied()
    }

    /// One tag per input token.
    pub fn tag(&self, tokens: &[Token]) -> Vec<PosTag> {
        let mut tags: Vec<PosTag> = Vec::with_capacity(tokens.len());
        for (i, tok) in tokens.iter().enumerate() {
            let tag = match tok.kind {
                TokenKind::Word => {
                    let initial = i == 0 || ends_sentence(&tokens[i - 1]);
                    self.tag_word(&tok.surface, initial, tags.last().copied())
                }
                TokenKind::Number => PosTag::CD,
                _ => PosTag::NonWord,
            };
            tags.push(tag);
        }
        tags
    }

    fn tag_word(&self, word: &str, sentence_initial: bool, prev: Option<PosTag>) -> PosTag {
        let lower = word.to_lowercase().replace('\u{2019}', "'");
        if lower == "'s" && matches!(prev, Some(PosTag::PRP | PosTag::WP | PosTag::EX | PosTag::DT))
        {
            return PosTag::VBZ;
        }
        if let Some(tag) = self.lexicon.get(&lower) {
            return *tag;
        }
        let capitalized = word.chars().next().is_some_and(char::is_uppercase);
        if capitalized && !sentence_initial {
            return PosTag::NNP;
        }
        self.suffix_tag(&lower)
    }

    fn suffix_tag(&self, w: &str) -> PosTag {
        let n = w.chars().count();
        if n > 3 && w.ends_with("ly") {
            return PosTag::RB;
        }
        if n > 4 && w.ends_with("ing") {
            return PosTag::VBG;
        }
        if n > 3 && w.ends_with("ed") {
            return PosTag::VBD;
        }
        if n > 4 && w.ends_with("est") {
            return PosTag::JJS;
        }
        if n > 3 && w.ends_with("er") && self.adjectival_stem(&w[..w.len() - 2]) {
            return PosTag::JJR;
        }
        if n > 3 && w.ends_with('s') && !w.ends_with("ss") {
            let verb_stem = verb_stems(w)
                .iter()
                .any(|s| matches!(self.lexicon.get(s), Some(t) if t.is_verb()));
            return if verb_stem { PosTag::VBZ } else { PosTag::NNS };
        }
        PosTag::NN
    }

    // stem forms for comparatives: happi → happy, nic → nice, bigg → big
    fn adjectival_stem(&self, stem: &str) -> bool {
        let mut candidates = vec![stem.to_string(), format!("{stem}e")];
        if let Some(s) = stem.strip_suffix('i') {
            candidates.push(format!("{s}y"));
        }
        let b = stem.as_bytes();
        if b.len() >= 2 && b[b.len() - 1] == b[b.len() - 2] {
            candidates.push(stem[..stem.len() - 1].to_string());
        }
        candidates
            .iter()
            .any(|c| matches!(self.lexicon.get(c), Some(t) if t.is_adjective()))
    }
}

fn verb_stems(w: &str) -> Vec<String> {
    let mut out = vec![w[..w.len() - 1].to_string()];
    if let Some(s) = w.strip_suffix("es") {
        out.push(s.to_string());
    }
    if let Some(s) = w.strip_suffix("ies") {
        out.push(format!("{s}y"));
    }
    out
}

fn ends_sentence(tok: &Token) -> bool {
    tok.kind == TokenKind::Punct && tok.surface.contains(['.', '!', '?'])
}

/// Tag with the shipped lexicon, pairing each token with its tag.
pub fn pos_tag(tokens: &[Token]) -> Vec<(Token, PosTag)> {
    let tags = Tagger::shipped().tag(tokens);
    tokens.iter().cloned().zip(tags).collect()
}
