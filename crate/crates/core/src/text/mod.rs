//! Tokenization and normalization primitives.

mod porter;
mod pos;

use std::collections::{BTreeSet, HashSet};
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::lexicons::EmoticonLexicon;

pub use porter::porter_stem;
pub use pos::{pos_tag, PosTag, Tagger};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenKind {
    Word,
    Url,
    Mention,
    Hashtag,
    Emoticon,
    Punct,
    Number,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub kind: TokenKind,
}

impl Token {
    pub fn new(surface: impl Into<String>, kind: TokenKind) -> Self {
        Token {
            surface: surface.into(),
            kind,
        }
    }

    pub fn word(surface: impl Into<String>) -> Self {
        Token::new(surface, TokenKind::Word)
    }

    /// Text of a hashtag without the leading `#`; `None` for other kinds.
    pub fn hashtag_word(&self) -> Option<&str> {
        match self.kind {
            TokenKind::Hashtag => self.surface.strip_prefix('#'),
            _ => None,
        }
    }
}

const CLITICS: [&str; 7] = ["n't", "'s", "'re", "'ll", "'ve", "'d", "'m"];

/// Rule-based micro-blog tokenizer.
///
/// At every position the tokenizer tries, in order: URL (`http://` or
/// `https://` prefix), mention, hashtag, emoticon (longest match), number,
/// word, and finally a run of punctuation/symbol characters. Whitespace is
/// discarded and every other character lands in exactly one token.
/// Words are split PTB-style on the clitics `n't 's 're 'll 've 'd 'm`.
#[derive(Debug, Clone)]
pub struct Tokenizer {
    // longest first
    emoticons: Vec<String>,
}

static DEFAULT_TOKENIZER: LazyLock<Tokenizer> =
    LazyLock::new(|| Tokenizer::from_lexicon(EmoticonLexicon::shipped()));

impl Default for Tokenizer {
    fn default() -> Self {
        DEFAULT_TOKENIZER.clone()
    }
}

impl Tokenizer {
    pub fn new<I, S>(emoticons: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = emoticons
            .into_iter()
            .map(Into::into)
            .filter(|e| !e.is_empty())
            .collect();
        let mut emoticons: Vec<String> = set.into_iter().collect();
        emoticons.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        Tokenizer { emoticons }
    }

    pub fn from_lexicon(lexicon: &EmoticonLexicon) -> Self {
        Tokenizer::new(lexicon.all())
    }

    pub fn tokenize(&self, text: &str) -> Vec<Token> {
        let mut out = Vec::new();
        let mut pos = 0;
        while pos < text.len() {
            let rest = &text[pos..];
            let c = rest.chars().next().expect("non-empty rest");
            if c.is_whitespace() {
                pos += c.len_utf8();
                continue;
            }
            let prev = text[..pos].chars().next_back();
            if let Some((len, kind)) = self.match_special(rest, prev) {
                out.push(Token::new(&rest[..len], kind));
                pos += len;
                continue;
            }
            let len = if c.is_ascii_digit() {
                let len = number_len(rest);
                out.push(Token::new(&rest[..len], TokenKind::Number));
                len
            } else if c.is_alphanumeric() {
                let len = word_len(rest);
                push_word(&mut out, &rest[..len]);
                len
            } else {
                let len = self.punct_len(text, pos);
                out.push(Token::new(&rest[..len], TokenKind::Punct));
                len
            };
            pos += len;
        }
        out
    }

    fn match_special(&self, rest: &str, prev: Option<char>) -> Option<(usize, TokenKind)> {
        let lower_prefix: String = rest.chars().take(8).collect::<String>().to_ascii_lowercase();
        if lower_prefix.starts_with("http://") || lower_prefix.starts_with("https://") {
            let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
            return Some((len, TokenKind::Url));
        }
        let first = rest.chars().next()?;
        if first == '@' || first == '#' {
            let name_len: usize = rest[1..]
                .chars()
                .take_while(|c| c.is_alphanumeric() || *c == '_')
                .map(char::len_utf8)
                .sum();
            if name_len > 0 {
                let kind = if first == '@' {
                    TokenKind::Mention
                } else {
                    TokenKind::Hashtag
                };
                return Some((1 + name_len, kind));
            }
        }
        self.match_emoticon(rest, prev)
            .map(|len| (len, TokenKind::Emoticon))
    }

    fn match_emoticon(&self, rest: &str, prev: Option<char>) -> Option<usize> {
        let prev_alnum = prev.is_some_and(char::is_alphanumeric);
        self.emoticons.iter().find_map(|e| {
            if !rest.starts_with(e.as_str()) {
                return None;
            }
            let starts_alnum = e.chars().next().is_some_and(char::is_alphanumeric);
            if starts_alnum && prev_alnum {
                return None;
            }
            let next = rest[e.len()..].chars().next();
            if next.is_some_and(char::is_alphanumeric) {
                return None;
            }
            Some(e.len())
        })
    }

    fn punct_len(&self, text: &str, start: usize) -> usize {
        let mut len = 0;
        for (i, c) in text[start..].char_indices() {
            if c.is_whitespace() || c.is_alphanumeric() {
                break;
            }
            if i > 0 {
                let pos = start + i;
                let prev = text[..pos].chars().next_back();
                if self.match_special(&text[pos..], prev).is_some() {
                    break;
                }
            }
            len = i + c.len_utf8();
        }
        len
    }
}

fn number_len(rest: &str) -> usize {
    let bytes = rest.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_digit() {
            i += 1;
        } else if matches!(bytes[i], b'.' | b',' | b':')
            && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)
        {
            i += 1;
        } else {
            break;
        }
    }
    i
}

fn word_len(rest: &str) -> usize {
    let mut len = 0;
    let mut chars = rest.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_alphanumeric() {
            len = i + c.len_utf8();
        } else if c == '\'' || c == '\u{2019}' {
            match chars.peek() {
                Some((_, n)) if n.is_alphabetic() => len = i + c.len_utf8(),
                _ => break,
            }
        } else {
            break;
        }
    }
    len
}

fn push_word(out: &mut Vec<Token>, word: &str) {
    let normalized = word.replace('\u{2019}', "'").to_lowercase();
    for clitic in CLITICS {
        if normalized.len() > clitic.len() && normalized.ends_with(clitic) {
            // byte length of the clitic in the original surface
            let clitic_chars = clitic.chars().count();
            let split = word
                .char_indices()
                .rev()
                .nth(clitic_chars - 1)
                .map(|(i, _)| i)
                .unwrap_or(0);
            if split > 0 {
                out.push(Token::word(&word[..split]));
                out.push(Token::word(&word[split..]));
                return;
            }
        }
    }
    out.push(Token::word(word));
}

/// Tokenize with the shipped emoticon lexicon.
pub fn tokenize(text: &str) -> Vec<Token> {
    DEFAULT_TOKENIZER.tokenize(text)
}

/// Drop every token whose kind is in `drop`.
pub fn strip_noise(tokens: &[Token], drop: &[TokenKind]) -> Vec<Token> {
    tokens
        .iter()
        .filter(|t| !drop.contains(&t.kind))
        .cloned()
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct StopList {
    words: HashSet<String>,
}

static SHIPPED_STOPWORDS: &str = include_str!("../../data/stopwords.txt");

impl StopList {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        StopList {
            words: words
                .into_iter()
                .map(|w| w.as_ref().trim().to_lowercase())
                .filter(|w| !w.is_empty())
                .collect(),
        }
    }

    /// Plain-text list, one word per line.
    pub fn parse(text: &str) -> Self {
        StopList::new(text.lines())
    }

    pub fn shipped() -> Self {
        StopList::parse(SHIPPED_STOPWORDS)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

pub fn remove_stopwords(tokens: &[Token], stoplist: &StopList) -> Vec<Token> {
    tokens
        .iter()
        .filter(|t| t.kind != TokenKind::Word || !stoplist.contains(&t.surface))
        .cloned()
        .collect()
}

/// Lowercased alphanumeric terms of a raw string, in order.
pub fn alnum_terms(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|s| !s.is_empty())
        .map(str::to_lowercase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use TokenKind::*;

    fn kinds(tokens: &[Token]) -> Vec<(&str, TokenKind)> {
        tokens.iter().map(|t| (t.surface.as_str(), t.kind)).collect()
    }

    #[test]
    fn tokenizes_words_punct_and_url() {
        let toks = tokenize("I love it! http://t.co/x");
        assert_eq!(
            kinds(&toks),
            vec![
                ("I", Word),
                ("love", Word),
                ("it", Word),
                ("!", Punct),
                ("http://t.co/x", Url)
            ]
        );
    }

    #[test]
    fn mention_and_emoticon() {
        assert_eq!(
            kinds(&tokenize("@bob :)")),
            vec![("@bob", Mention), (":)", Emoticon)]
        );
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn emoticons_stay_atomic_after_punct_and_words() {
        assert_eq!(
            kinds(&tokenize("great!:) so:(")),
            vec![
                ("great", Word),
                ("!", Punct),
                (":)", Emoticon),
                ("so", Word),
                (":(", Emoticon)
            ]
        );
        // longest match wins
        assert_eq!(kinds(&tokenize(":-))")), vec![(":-)", Emoticon), (")", Punct)]);
        // letter-initial emoticons need a boundary
        assert_eq!(kinds(&tokenize("xD")), vec![("xD", Emoticon)]);
        assert_eq!(kinds(&tokenize("maxD")), vec![("maxD", Word)]);
    }

    #[test]
    fn hashtags_numbers_and_clitics() {
        assert_eq!(
            kinds(&tokenize("#win 1,000 at 10:30 don't")),
            vec![
                ("#win", Hashtag),
                ("1,000", Number),
                ("at", Word),
                ("10:30", Number),
                ("do", Word),
                ("n't", Word)
            ]
        );
        assert_eq!(
            kinds(&tokenize("He's here")),
            vec![("He", Word), ("'s", Word), ("here", Word)]
        );
        assert_eq!(tokenize("#tag")[0].hashtag_word(), Some("tag"));
    }

    #[test]
    fn lone_sigils_are_punct() {
        assert_eq!(kinds(&tokenize("@ #")), vec![("@", Punct), ("#", Punct)]);
    }

    #[test]
    fn strip_noise_cases() {
        let toks = tokenize("I love it! http://t.co/x @bob");
        let words = strip_noise(&toks, &[Url, Mention]);
        assert!(words.iter().all(|t| t.kind == Word || t.kind == Punct));
        assert_eq!(words.len(), 4);
        assert_eq!(strip_noise(&toks, &[]), toks);
        let no_punct = strip_noise(&toks, &[Punct]);
        assert!(no_punct.iter().all(|t| t.surface != "!"));
    }

    #[test]
    fn stopword_removal() {
        let list = StopList::shipped();
        let out = remove_stopwords(&[Token::word("the"), Token::word("cat")], &list);
        assert_eq!(out, vec![Token::word("cat")]);
        assert!(remove_stopwords(&[Token::word("The")], &list).is_empty());
        let toks = vec![Token::word("the")];
        assert_eq!(remove_stopwords(&toks, &StopList::default()), toks);
    }
}
