//! MPQA subjectivity clues, emoticon lists and the English word list.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::Path;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::{porter_stem, PosTag, Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strength {
    Strong,
    Weak,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
    Neutral,
    Both,
}

/// Part-of-speech class an MPQA clue is restricted to (`pos1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosClass {
    Adj,
    Noun,
    Verb,
    Adverb,
    AnyPos,
}

impl PosClass {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "adj" => PosClass::Adj,
            "noun" => PosClass::Noun,
            "verb" => PosClass::Verb,
            "adverb" => PosClass::Adverb,
            "anypos" => PosClass::AnyPos,
            _ => return None,
        })
    }

    pub fn admits(self, tag: PosTag) -> bool {
        match self {
            PosClass::Adj => tag.is_adjective(),
            PosClass::Noun => tag.is_noun(),
            PosClass::Verb => tag.is_verb(),
            PosClass::Adverb => tag.is_adverb(),
            PosClass::AnyPos => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpqaEntry {
    pub word: String,
    pub strength: Strength,
    pub polarity: Polarity,
    pub pos_constraint: Option<PosClass>,
    pub stemmed: bool,
}

impl MpqaEntry {
    /// Score contribution: ±1.0 for strong, ±0.5 for weak, 0 for
    /// neutral/both.
    pub fn weight(&self) -> f64 {
        let magnitude = match self.strength {
            Strength::Strong => 1.0,
            Strength::Weak => 0.5,
        };
        match self.polarity {
            Polarity::Positive => magnitude,
            Polarity::Negative => -magnitude,
            Polarity::Neutral | Polarity::Both => 0.0,
        }
    }
}

/// Parsed MPQA clues file.
///
/// Lookups are by word only unless `enforce_pos` is set, in which case a
/// clue with a `pos1` restriction only matches tokens whose tag falls in that
/// class.
#[derive(Debug, Clone, Default)]
pub struct MpqaLexicon {
    entries: HashMap<String, Vec<MpqaEntry>>,
    pub enforce_pos: bool,
    len: usize,
}

static SHIPPED_MPQA: &str = include_str!("../data/mpqa_sample.tff");
static SHIPPED_MPQA_LEXICON: LazyLock<MpqaLexicon> = LazyLock::new(|| {
    MpqaLexicon::parse(SHIPPED_MPQA)
        .expect("shipped MPQA sample is valid")
        .0
});

impl MpqaLexicon {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let (lexicon, skipped) = MpqaLexicon::parse(&text).map_err(|e| match e {
            Error::InvalidArgument(m) => Error::Parse {
                path: path.into(),
                line: 0,
                message: m,
            },
            other => other,
        })?;
        if skipped > 0 {
            log::warn!("{}: skipped {skipped} malformed MPQA lines", path.display());
        }
        Ok(lexicon)
    }

    /// Parse clues text; returns the lexicon and the number of malformed
    /// lines skipped. A text with no valid entries is an error.
    pub fn parse(text: &str) -> Result<(Self, usize)> {
        let mut lexicon = MpqaLexicon::default();
        let mut skipped = 0;
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match parse_clue(line) {
                Some(entry) => lexicon.insert(entry),
                None => {
                    log::warn!("MPQA line {}: malformed clue, skipped", i + 1);
                    skipped += 1;
                }
            }
        }
        if lexicon.len == 0 {
            return Err(Error::invalid("MPQA lexicon is empty"));
        }
        Ok((lexicon, skipped))
    }

    pub fn shipped() -> &'static MpqaLexicon {
        &SHIPPED_MPQA_LEXICON
    }

    fn insert(&mut self, entry: MpqaEntry) {
        let list = self.entries.entry(entry.word.clone()).or_default();
        if list.iter().any(|e| e.pos_constraint == entry.pos_constraint) {
            return;
        }
        list.push(entry);
        self.len += 1;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Entries for `word` in file order.
    pub fn entries(&self, word: &str) -> &[MpqaEntry] {
        self.entries.get(word).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The clue that applies to `word` with optional tag `tag`.
    pub fn lookup(&self, word: &str, tag: Option<PosTag>) -> Option<&MpqaEntry> {
        let entries = self.entries.get(word)?;
        if !self.enforce_pos {
            return entries.first();
        }
        entries.iter().find(|e| match (e.pos_constraint, tag) {
            (None, _) | (_, None) => true,
            (Some(class), Some(tag)) => class.admits(tag),
        })
    }

    /// Sum of clue weights over lowercased words.
    pub fn score<S: AsRef<str>>(&self, words: &[S]) -> f64 {
        words
            .iter()
            .filter_map(|w| self.lookup(w.as_ref(), None))
            .map(MpqaEntry::weight)
            .sum()
    }

    /// Per-word matches honoring POS constraints when enabled.
    pub fn matches<'a>(
        &'a self,
        words: &'a [String],
        tags: &'a [PosTag],
    ) -> impl Iterator<Item = &'a MpqaEntry> + 'a {
        words
            .iter()
            .zip(tags.iter().map(Some).chain(std::iter::repeat(None)))
            .filter_map(|(w, t)| self.lookup(w, t.copied()))
    }
}

fn parse_clue(line: &str) -> Option<MpqaEntry> {
    let mut kind = None;
    let mut word = None;
    let mut polarity = None;
    let mut pos = None;
    let mut stemmed = false;
    for field in line.split_whitespace() {
        let (key, value) = field.split_once('=')?;
        match key {
            "type" => {
                kind = Some(match value {
                    "strongsubj" => Strength::Strong,
                    "weaksubj" => Strength::Weak,
                    _ => return None,
                })
            }
            "word1" => word = Some(value.to_lowercase()),
            "priorpolarity" => {
                polarity = Some(match value {
                    "positive" => Polarity::Positive,
                    "negative" => Polarity::Negative,
                    "neutral" => Polarity::Neutral,
                    "both" => Polarity::Both,
                    _ => return None,
                })
            }
            "pos1" => pos = PosClass::parse(value),
            "stemmed1" => stemmed = value == "y",
            _ => {}
        }
    }
    let word = word.filter(|w| !w.is_empty())?;
    Some(MpqaEntry {
        word,
        strength: kind?,
        polarity: polarity?,
        pos_constraint: pos,
        stemmed,
    })
}

/// Sum of MPQA weights over lowercased word tokens.
pub fn mpqa_score(tokens: &[Token], lexicon: &MpqaLexicon) -> f64 {
    let words: Vec<String> = tokens
        .iter()
        .filter(|t| t.kind == TokenKind::Word)
        .map(|t| t.surface.to_lowercase())
        .collect();
    lexicon.score(&words)
}

#[derive(Debug, Clone)]
pub struct EmoticonLexicon {
    pub positive: BTreeSet<String>,
    pub negative: BTreeSet<String>,
}

static SHIPPED_EMOTICONS: LazyLock<EmoticonLexicon> = LazyLock::new(|| {
    EmoticonLexicon::new(
        include_str!("../data/emoticons_positive.txt").lines(),
        include_str!("../data/emoticons_negative.txt").lines(),
    )
    .expect("shipped emoticon lists are valid")
});

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmoticonPolarity {
    Positive,
    Negative,
}

impl EmoticonLexicon {
    pub fn new<P, N, S>(positive: P, negative: N) -> Result<Self>
    where
        P: IntoIterator<Item = S>,
        N: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let clean = |it: &mut dyn Iterator<Item = S>| -> BTreeSet<String> {
            it.map(|s| s.as_ref().trim().to_string())
                .filter(|s| !s.is_empty())
                .collect()
        };
        let positive = clean(&mut positive.into_iter());
        let negative = clean(&mut negative.into_iter());
        if positive.is_empty() || negative.is_empty() {
            return Err(Error::invalid("emoticon lists must be non-empty"));
        }
        if let Some(both) = positive.intersection(&negative).next() {
            return Err(Error::invalid(format!(
                "emoticon {both:?} is both positive and negative"
            )));
        }
        Ok(EmoticonLexicon { positive, negative })
    }

    /// Two plain-text files, one emoticon per line.
    pub fn load(positive: impl AsRef<Path>, negative: impl AsRef<Path>) -> Result<Self> {
        let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| Error::io(p, e));
        let pos = read(positive.as_ref())?;
        let neg = read(negative.as_ref())?;
        EmoticonLexicon::new(pos.lines(), neg.lines())
    }

    pub fn shipped() -> &'static EmoticonLexicon {
        &SHIPPED_EMOTICONS
    }

    pub fn all(&self) -> impl Iterator<Item = &str> {
        self.positive
            .iter()
            .chain(self.negative.iter())
            .map(String::as_str)
    }

    pub fn polarity(&self, emoticon: &str) -> Option<EmoticonPolarity> {
        if self.positive.contains(emoticon) {
            Some(EmoticonPolarity::Positive)
        } else if self.negative.contains(emoticon) {
            Some(EmoticonPolarity::Negative)
        } else {
            None
        }
    }

    /// (positive, negative) counts over the given tokens' surfaces.
    pub fn counts<S: AsRef<str>>(&self, tokens: &[S]) -> (u32, u32) {
        tokens.iter().fold((0, 0), |(p, n), t| match self.polarity(t.as_ref()) {
            Some(EmoticonPolarity::Positive) => (p + 1, n),
            Some(EmoticonPolarity::Negative) => (p, n + 1),
            None => (p, n),
        })
    }
}

/// +1 per positive emoticon, −1 per negative.
pub fn emoticon_score<S: AsRef<str>>(tokens: &[S], lexicon: &EmoticonLexicon) -> i64 {
    let (p, n) = lexicon.counts(tokens);
    p as i64 - n as i64
}

/// Common-English word list; membership is tested on the word itself and on
/// its Porter stem against the stemmed list.
#[derive(Debug, Clone, Default)]
pub struct EnglishWords {
    words: HashSet<String>,
    stems: HashSet<String>,
}

static SHIPPED_ENGLISH: LazyLock<EnglishWords> =
    LazyLock::new(|| EnglishWords::new(include_str!("../data/english_2000.txt").lines()));

impl EnglishWords {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let words: HashSet<String> = words
            .into_iter()
            .map(|w| w.as_ref().trim().to_lowercase())
            .filter(|w| !w.is_empty())
            .collect();
        let stems = words.iter().map(|w| porter_stem(w)).collect();
        EnglishWords { words, stems }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(EnglishWords::new(text.lines()))
    }

    pub fn shipped() -> &'static EnglishWords {
        &SHIPPED_ENGLISH
    }

    pub fn contains(&self, word: &str) -> bool {
        let lower = word.to_lowercase();
        self.words.contains(&lower) || self.stems.contains(&porter_stem(&lower))
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const REAL_LINES: &str = "\
type=weaksubj len=1 word1=abandoned pos1=adj stemmed1=n priorpolarity=negative
type=weaksubj len=1 word1=abandonment pos1=noun stemmed1=n priorpolarity=negative
type=weaksubj len=1 word1=abandon pos1=verb stemmed1=y priorpolarity=negative
type=strongsubj len=1 word1=abase pos1=verb stemmed1=y priorpolarity=negative
type=strongsubj len=1 word1=abasement pos1=anypos stemmed1=y priorpolarity=negative
type=weaksubj len=1 word1=ability pos1=noun stemmed1=n priorpolarity=positive
type=strongsubj len=1 word1=abhor pos1=anypos stemmed1=y priorpolarity=negative
type=strongsubj len=1 word1=able pos1=adj stemmed1=n priorpolarity=positive
type=weaksubj len=1 word1=absolute pos1=adj stemmed1=n priorpolarity=neutral
type=weaksubj len=1 word1=absolutely pos1=adj stemmed1=n priorpolarity=both
";

    #[test]
    fn parses_clue_lines() {
        let (lex, skipped) = MpqaLexicon::parse(
            "type=strongsubj len=1 word1=abandoned pos1=adj stemmed1=n priorpolarity=negative",
        )
        .unwrap();
        assert_eq!(skipped, 0);
        let e = lex.lookup("abandoned", None).unwrap();
        assert_eq!(e.strength, Strength::Strong);
        assert_eq!(e.polarity, Polarity::Negative);
        assert_eq!(e.pos_constraint, Some(PosClass::Adj));
        assert!(!e.stemmed);

        let (lex, skipped) = MpqaLexicon::parse(REAL_LINES).unwrap();
        assert_eq!((lex.len(), skipped), (10, 0));
        let expect = [
            ("abandoned", Strength::Weak, Polarity::Negative),
            ("abandon", Strength::Weak, Polarity::Negative),
            ("abase", Strength::Strong, Polarity::Negative),
            ("ability", Strength::Weak, Polarity::Positive),
            ("able", Strength::Strong, Polarity::Positive),
            ("absolute", Strength::Weak, Polarity::Neutral),
            ("absolutely", Strength::Weak, Polarity::Both),
        ];
        for (w, s, p) in expect {
            let e = lex.lookup(w, None).unwrap();
            assert_eq!((e.strength, e.polarity), (s, p), "{w}");
        }
        assert_eq!(
            lex.lookup("abasement", None).unwrap().pos_constraint,
            Some(PosClass::AnyPos)
        );
    }

    #[test]
    fn empty_and_duplicate_handling() {
        assert!(MpqaLexicon::parse("").is_err());
        assert!(MpqaLexicon::parse("garbage line\n").is_err());
        let (lex, skipped) = MpqaLexicon::parse(
            "type=strongsubj word1=x pos1=adj priorpolarity=positive\n\
             type=weaksubj word1=x pos1=adj priorpolarity=negative\n\
             not a clue\n",
        )
        .unwrap();
        assert_eq!(skipped, 1);
        assert_eq!(lex.len(), 1);
        assert_eq!(lex.lookup("x", None).unwrap().polarity, Polarity::Positive);
    }

    #[test]
    fn score_table() {
        let (lex, _) = MpqaLexicon::parse(
            "type=strongsubj word1=great priorpolarity=positive\n\
             type=weaksubj word1=ok priorpolarity=positive\n\
             type=strongsubj word1=awful priorpolarity=negative\n\
             type=weaksubj word1=meh priorpolarity=negative\n\
             type=weaksubj word1=think priorpolarity=neutral\n\
             type=strongsubj word1=odd priorpolarity=both\n",
        )
        .unwrap();
        assert_eq!(lex.score(&["great"]), 1.0);
        assert_eq!(lex.score(&["meh"]), -0.5);
        assert_eq!(lex.score(&["ok"]), 0.5);
        assert_eq!(lex.score(&["awful"]), -1.0);
        assert_eq!(lex.score(&["think", "odd", "table"]), 0.0);
        assert_eq!(lex.score::<&str>(&[]), 0.0);
    }

    #[test]
    fn pos_constraint_gates_only_when_enforced() {
        let (mut lex, _) = MpqaLexicon::parse(
            "type=weaksubj word1=like pos1=verb priorpolarity=positive\n",
        )
        .unwrap();
        assert!(lex.lookup("like", Some(PosTag::IN)).is_some());
        lex.enforce_pos = true;
        assert!(lex.lookup("like", Some(PosTag::IN)).is_none());
        assert!(lex.lookup("like", Some(PosTag::VBP)).is_some());
    }

    #[test]
    fn emoticon_scores() {
        let lex = EmoticonLexicon::shipped();
        assert_eq!(emoticon_score(&[":)", ":("], lex), 0);
        assert_eq!(emoticon_score(&[":D", ":)"], lex), 2);
        assert_eq!(emoticon_score::<&str>(&[], lex), 0);
        assert!(lex.positive.len() >= 25 && lex.negative.len() >= 25);
    }

    #[test]
    fn emoticon_lists_must_be_disjoint_and_non_empty() {
        assert!(EmoticonLexicon::new([":)"], [":)"]).is_err());
        assert!(EmoticonLexicon::new(Vec::<&str>::new(), vec![":("]).is_err());
    }

    #[test]
    fn english_words_match_via_stems() {
        let en = EnglishWords::shipped();
        assert_eq!(en.len(), 2000);
        assert!(en.contains("the"));
        assert!(en.contains("The"));
        assert!(!en.contains("zxqv"));
        let small = EnglishWords::new(["play"]);
        assert!(small.contains("playing"));
    }
}
