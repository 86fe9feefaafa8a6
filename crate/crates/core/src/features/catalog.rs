use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{AnalyzedTweet, Analyzer, UnigramModel};
use crate::error::Error;
use crate::lexicons::Polarity;
use crate::text::{PosTag, TokenKind};

/// How a feature's values are distributed; drives the stage-1 likelihood
/// model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureKind {
    Probability,
    Flag,
    Count,
    Continuous,
}

macro_rules! features {
    ($($variant:ident => $name:literal, $kind:ident;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Feature {
            $($variant,)*
        }

        impl Feature {
            pub const ALL: &'static [Feature] = &[$(Feature::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Feature::$variant => $name,)*
                }
            }

            pub fn kind(self) -> FeatureKind {
                match self {
                    $(Feature::$variant => FeatureKind::$kind,)*
                }
            }
        }

        impl FromStr for Feature {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self, Error> {
                match s {
                    $($name => Ok(Feature::$variant),)*
                    other => Err(Error::invalid(format!("unknown feature {other:?}"))),
                }
            }
        }
    };
}

features! {
    ExclamationCount => "exclamation_count", Count;
    QuestionCount => "question_count", Count;
    ExclamationPresence => "exclamation_presence", Flag;
    QuestionPresence => "question_presence", Flag;
    UrlPresence => "url_presence", Flag;
    EmoticonPresence => "emoticon_presence", Flag;
    UnigramPosterior => "unigram_posterior", Probability;
    MpqaPriorPolarity => "mpqa_prior_polarity", Continuous;
    DigitCount => "digit_count", Count;
    CapitalizedWords => "capitalized_words", Count;
    CapitalizedChars => "capitalized_chars", Count;
    SymbolCount => "symbol_count", Count;
    NonDictionaryRatio => "non_dictionary_ratio", Continuous;
    Length => "length", Continuous;
    Adjectives => "adjectives", Count;
    ComparativeAdjectives => "comparative_adjectives", Count;
    SuperlativeAdjectives => "superlative_adjectives", Count;
    BaseVerbs => "base_verbs", Count;
    PastVerbs => "past_verbs", Count;
    PresentParticiples => "present_participles", Count;
    PastParticiples => "past_participles", Count;
    ThirdPersonVerbs => "third_person_verbs", Count;
    NonThirdPersonVerbs => "non_third_person_verbs", Count;
    Adverbs => "adverbs", Count;
    PersonalPronouns => "personal_pronouns", Count;
    PossessivePronouns => "possessive_pronouns", Count;
    ProperNouns => "proper_nouns", Count;
    PluralProperNouns => "plural_proper_nouns", Count;
    CardinalNumbers => "cardinal_numbers", Count;
    PossessiveEndings => "possessive_endings", Count;
    WhPronouns => "wh_pronouns", Count;
    AllAdjectives => "all_adjectives", Count;
    AllVerbs => "all_verbs", Count;
    AllNouns => "all_nouns", Count;
    AllPronouns => "all_pronouns", Count;
    EmoticonScore => "emoticon_score", Continuous;
    MpqaScore => "mpqa_score", Continuous;
    EmoticonCount => "emoticon_count", Count;
    PositiveEmoticons => "positive_emoticons", Count;
    NegativeEmoticons => "negative_emoticons", Count;
    MpqaPositiveWords => "mpqa_positive_words", Count;
    MpqaNegativeWords => "mpqa_negative_words", Count;
    PluralNouns => "plural_nouns", Count;
    PrepositionsConjunctions => "prepositions_conjunctions", Count;
    WhAdverbs => "wh_adverbs", Count;
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Feature {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Feature {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The two feature lists: objective vs subjective, positive vs negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Catalog {
    Objectivity,
    Polarity,
}

use Feature::*;

const OBJECTIVITY: &[Feature] = &[
    ExclamationCount,
    QuestionCount,
    ExclamationPresence,
    QuestionPresence,
    UrlPresence,
    EmoticonPresence,
    UnigramPosterior,
    MpqaPriorPolarity,
    DigitCount,
    CapitalizedWords,
    CapitalizedChars,
    SymbolCount,
    NonDictionaryRatio,
    Length,
    Adjectives,
    ComparativeAdjectives,
    SuperlativeAdjectives,
    BaseVerbs,
    PastVerbs,
    PresentParticiples,
    PastParticiples,
    ThirdPersonVerbs,
    NonThirdPersonVerbs,
    Adverbs,
    PersonalPronouns,
    PossessivePronouns,
    ProperNouns,
    PluralProperNouns,
    CardinalNumbers,
    PossessiveEndings,
    WhPronouns,
    AllAdjectives,
    AllVerbs,
    AllNouns,
    AllPronouns,
];

const POLARITY: &[Feature] = &[
    EmoticonScore,
    MpqaScore,
    UnigramPosterior,
    EmoticonCount,
    PositiveEmoticons,
    NegativeEmoticons,
    MpqaPositiveWords,
    MpqaNegativeWords,
    BaseVerbs,
    PastVerbs,
    PresentParticiples,
    PastParticiples,
    ThirdPersonVerbs,
    NonThirdPersonVerbs,
    PluralNouns,
    ProperNouns,
    CardinalNumbers,
    PrepositionsConjunctions,
    Adverbs,
    WhAdverbs,
    AllVerbs,
];

impl Catalog {
    /// Features in list order. Ties in gain ranking fall back to this order.
    pub fn features(self) -> &'static [Feature] {
        match self {
            Catalog::Objectivity => OBJECTIVITY,
            Catalog::Polarity => POLARITY,
        }
    }

    pub fn position(self, feature: Feature) -> Option<usize> {
        self.features().iter().position(|f| *f == feature)
    }
}

/// Ordered feature name → value pairs. Serializes as a JSON object in
/// catalog order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureVector {
    values: Vec<(Feature, f64)>,
}

impl FeatureVector {
    pub fn new(values: Vec<(Feature, f64)>) -> Self {
        FeatureVector { values }
    }

    pub fn get(&self, feature: Feature) -> Option<f64> {
        self.values.iter().find(|(f, _)| *f == feature).map(|(_, v)| *v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Feature, f64)> + '_ {
        self.values.iter().copied()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.values.iter().map(|(f, _)| f.name())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl Serialize for FeatureVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.values.len()))?;
        for (f, v) in &self.values {
            map.serialize_entry(f.name(), v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for FeatureVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        // serde_json's Map keeps keys sorted, so go through an ordered list
        struct Visitor;
        impl<'de> serde::de::Visitor<'de> for Visitor {
            type Value = FeatureVector;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map of feature names to numbers")
            }
            fn visit_map<A: serde::de::MapAccess<'de>>(self, mut map: A) -> Result<FeatureVector, A::Error> {
                let mut values = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, f64>()? {
                    values.push((k.parse().map_err(serde::de::Error::custom)?, v));
                }
                Ok(FeatureVector { values })
            }
        }
        d.deserialize_map(Visitor)
    }
}

/// Raw per-tweet measurements from which both catalogs are read.
#[derive(Debug, Default)]
struct Measurements {
    exclamations: u32,
    questions: u32,
    urls: u32,
    emoticons: u32,
    positive_emoticons: u32,
    negative_emoticons: u32,
    digits: u32,
    capitalized_words: u32,
    capitalized_chars: u32,
    symbols: u32,
    words: u32,
    non_dictionary: u32,
    length: u32,
    mpqa_score: f64,
    mpqa_abs: f64,
    mpqa_positive: u32,
    mpqa_negative: u32,
}

fn is_clitic(surface: &str) -> bool {
    surface.starts_with('\'') || surface.eq_ignore_ascii_case("n't")
}

fn measure(tweet: &AnalyzedTweet, analyzer: &Analyzer) -> Measurements {
    let mut m = Measurements {
        length: tweet.text.chars().count() as u32,
        ..Default::default()
    };
    let mut words = Vec::new();
    let mut word_tags = Vec::new();
    for (i, tok) in tweet.tokens.iter().enumerate() {
        let s = tok.surface.as_str();
        if !matches!(tok.kind, TokenKind::Url | TokenKind::Mention) {
            m.digits += s.chars().filter(char::is_ascii_digit).count() as u32;
            if tok.kind != TokenKind::Emoticon {
                m.capitalized_chars += s.chars().filter(|c| c.is_uppercase()).count() as u32;
            }
        }
        match tok.kind {
            TokenKind::Punct => {
                m.symbols += s.chars().count() as u32;
                m.exclamations += s.matches('!').count() as u32;
                m.questions += s.matches('?').count() as u32;
            }
            TokenKind::Url => m.urls += 1,
            TokenKind::Emoticon => {
                m.emoticons += 1;
                let (p, n) = analyzer.emoticons.counts(&[s]);
                m.positive_emoticons += p;
                m.negative_emoticons += n;
            }
            TokenKind::Word => {
                let mut chars = s.chars();
                if chars.next().is_some_and(char::is_uppercase) && chars.next().is_some() {
                    m.capitalized_words += 1;
                }
                if !is_clitic(s) {
                    m.words += 1;
                    if !analyzer.english.contains(&s.to_lowercase()) {
                        m.non_dictionary += 1;
                    }
                }
                words.push(s.to_lowercase());
                word_tags.push(tweet.tags.get(i).copied().unwrap_or(PosTag::NonWord));
            }
            _ => {}
        }
    }
    for entry in analyzer.mpqa.matches(&words, &word_tags) {
        let w = entry.weight();
        m.mpqa_score += w;
        m.mpqa_abs += w.abs();
        match entry.polarity {
            Polarity::Positive => m.mpqa_positive += 1,
            Polarity::Negative => m.mpqa_negative += 1,
            _ => {}
        }
    }
    m
}

fn tag_count(tags: &[PosTag], pred: impl Fn(PosTag) -> bool) -> f64 {
    tags.iter().filter(|t| pred(**t)).count() as f64
}

fn value(feature: Feature, m: &Measurements, tags: &[PosTag], posterior: f64) -> f64 {
    let flag = |n: u32| if n > 0 { 1.0 } else { 0.0 };
    let is = |t: PosTag| move |x: PosTag| x == t;
    match feature {
        ExclamationCount => m.exclamations as f64,
        QuestionCount => m.questions as f64,
        ExclamationPresence => flag(m.exclamations),
        QuestionPresence => flag(m.questions),
        UrlPresence => flag(m.urls),
        EmoticonPresence => flag(m.emoticons),
        UnigramPosterior => posterior,
        MpqaPriorPolarity => m.mpqa_abs,
        DigitCount => m.digits as f64,
        CapitalizedWords => m.capitalized_words as f64,
        CapitalizedChars => m.capitalized_chars as f64,
        SymbolCount => m.symbols as f64,
        NonDictionaryRatio => {
            if m.words == 0 {
                0.0
            } else {
                m.non_dictionary as f64 / m.words as f64
            }
        }
        Length => m.length as f64,
        Adjectives => tag_count(tags, is(PosTag::JJ)),
        ComparativeAdjectives => tag_count(tags, is(PosTag::JJR)),
        SuperlativeAdjectives => tag_count(tags, is(PosTag::JJS)),
        BaseVerbs => tag_count(tags, is(PosTag::VB)),
        PastVerbs => tag_count(tags, is(PosTag::VBD)),
        PresentParticiples => tag_count(tags, is(PosTag::VBG)),
        PastParticiples => tag_count(tags, is(PosTag::VBN)),
        ThirdPersonVerbs => tag_count(tags, is(PosTag::VBZ)),
        NonThirdPersonVerbs => tag_count(tags, is(PosTag::VBP)),
        Adverbs => tag_count(tags, is(PosTag::RB)),
        PersonalPronouns => tag_count(tags, is(PosTag::PRP)),
        PossessivePronouns => tag_count(tags, is(PosTag::PRPS)),
        ProperNouns => tag_count(tags, is(PosTag::NNP)),
        PluralProperNouns => tag_count(tags, is(PosTag::NNPS)),
        CardinalNumbers => tag_count(tags, is(PosTag::CD)),
        PossessiveEndings => tag_count(tags, is(PosTag::POS)),
        WhPronouns => tag_count(tags, is(PosTag::WP)),
        AllAdjectives => tag_count(tags, PosTag::is_adjective),
        AllVerbs => tag_count(tags, PosTag::is_verb),
        AllNouns => tag_count(tags, PosTag::is_noun),
        AllPronouns => tag_count(tags, PosTag::is_pronoun),
        EmoticonScore => m.positive_emoticons as f64 - m.negative_emoticons as f64,
        MpqaScore => m.mpqa_score,
        EmoticonCount => m.emoticons as f64,
        PositiveEmoticons => m.positive_emoticons as f64,
        NegativeEmoticons => m.negative_emoticons as f64,
        MpqaPositiveWords => m.mpqa_positive as f64,
        MpqaNegativeWords => m.mpqa_negative as f64,
        PluralNouns => tag_count(tags, is(PosTag::NNS)),
        PrepositionsConjunctions => tag_count(tags, |t| t == PosTag::IN || t == PosTag::CC),
        WhAdverbs => tag_count(tags, is(PosTag::WRB)),
    }
}

/// All features of `catalog` for one tweet. The unigram posterior is
/// `P(class_a | tweet)` under `model`.
pub fn extract(
    catalog: Catalog,
    tweet: &AnalyzedTweet,
    analyzer: &Analyzer,
    model: &UnigramModel,
) -> FeatureVector {
    let m = measure(tweet, analyzer);
    let posterior = model.posterior(&tweet.terms(model.include_hashtags));
    FeatureVector::new(
        catalog
            .features()
            .iter()
            .map(|&f| (f, value(f, &m, &tweet.tags, posterior)))
            .collect(),
    )
}

pub fn extract_objsubj(tweet: &AnalyzedTweet, analyzer: &Analyzer, model: &UnigramModel) -> FeatureVector {
    extract(Catalog::Objectivity, tweet, analyzer, model)
}

pub fn extract_polarity(tweet: &AnalyzedTweet, analyzer: &Analyzer, model: &UnigramModel) -> FeatureVector {
    extract(Catalog::Polarity, tweet, analyzer, model)
}
