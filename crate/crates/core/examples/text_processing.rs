//! Tokenize, tag, stem and strip stop words from a tweet.

use moodpipe::lexicons::{emoticon_score, mpqa_score, EmoticonLexicon, MpqaLexicon};
use moodpipe::text::{porter_stem, remove_stopwords, tokenize, StopList, Tagger, TokenKind};

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "@maria I absolutely LOVED the new #iPhone camera :) http://t.co/x1 !!!".into());
    let tokens = tokenize(&text);
    let tags = Tagger::shipped().tag(&tokens);
    println!("{:<22} {:<10} {:<6} stem", "token", "kind", "tag");
    for (t, tag) in tokens.iter().zip(&tags) {
        let stem = if t.kind == TokenKind::Word { porter_stem(&t.surface.to_lowercase()) } else { String::new() };
        println!("{:<22} {:<10} {:<6} {stem}", t.surface, format!("{:?}", t.kind), tag.to_string());
    }

    let content = remove_stopwords(&tokens, &StopList::shipped());
    let kept: Vec<&str> = content.iter().map(|t| t.surface.as_str()).collect();
    println!("\nwithout stop words: {}", kept.join(" "));

    let surfaces: Vec<&str> = tokens.iter().map(|t| t.surface.as_str()).collect();
    println!("emoticon score: {}", emoticon_score(&surfaces, EmoticonLexicon::shipped()));
    println!("MPQA score:     {}", mpqa_score(&tokens, MpqaLexicon::shipped()));
}
