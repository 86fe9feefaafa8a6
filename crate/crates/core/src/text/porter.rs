// Porter stemmer, following the structure of the ANSI C reference
// implementation (including its `bli`/`logi` step-2 rules and the
// rule that words of one or two letters are left alone).

/// Stem an ASCII-lowercased word. Input containing anything other than
/// `a-z` is returned unchanged.
pub fn porter_stem(word: &str) -> String {
    if word.len() <= 2 || !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return word.to_string();
    }
    let mut s = Stemmer {
        b: word.as_bytes().to_vec(),
        j: 0,
    };
    s.step1ab();
    if s.b.len() > 1 {
        s.step1c();
        s.step2();
        s.step3();
        s.step4();
        s.step5();
    }
    String::from_utf8(s.b).expect("ascii")
}

struct Stemmer {
    /// current word; its last byte is the reference implementation's `k`
    b: Vec<u8>,
    /// index of the last stem letter before a matched suffix, -1 when the
    /// suffix is the whole word
    j: isize,
}

impl Stemmer {
    fn last(&self) -> usize {
        self.b.len() - 1
    }

    fn cons(&self, i: usize) -> bool {
        match self.b[i] {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => i == 0 || !self.cons(i - 1),
            _ => true,
        }
    }

    /// Number of VC sequences in `b[0..=j]`.
    fn m(&self) -> usize {
        let mut n = 0;
        let mut prev_vowel = false;
        for i in 0..=self.j.max(-1) {
            let i = i as usize;
            let c = self.cons(i);
            if c && prev_vowel {
                n += 1;
            }
            prev_vowel = !c;
        }
        n
    }

    fn vowel_in_stem(&self) -> bool {
        (0..=self.j).any(|i| !self.cons(i as usize))
    }

    fn double_cons(&self, i: usize) -> bool {
        i >= 1 && self.b[i] == self.b[i - 1] && self.cons(i)
    }

    /// consonant-vowel-consonant ending at i, last consonant not w, x or y
    fn cvc(&self, i: usize) -> bool {
        if i < 2 || !self.cons(i) || self.cons(i - 1) || !self.cons(i - 2) {
            return false;
        }
        !matches!(self.b[i], b'w' | b'x' | b'y')
    }

    fn ends(&mut self, s: &str) -> bool {
        if !self.b.ends_with(s.as_bytes()) {
            return false;
        }
        self.j = (self.b.len() - s.len()) as isize - 1;
        true
    }

    fn set_to(&mut self, s: &str) {
        self.b.truncate((self.j + 1) as usize);
        self.b.extend_from_slice(s.as_bytes());
    }

    fn r(&mut self, s: &str) {
        if self.m() > 0 {
            self.set_to(s);
        }
    }

    fn step1ab(&mut self) {
        if self.b[self.last()] == b's' {
            if self.ends("sses") {
                self.b.truncate(self.b.len() - 2);
            } else if self.ends("ies") {
                self.set_to("i");
            } else if self.b[self.last() - 1] != b's' {
                self.b.pop();
            }
        }
        if self.ends("eed") {
            if self.m() > 0 {
                self.b.pop();
            }
        } else if (self.ends("ed") || self.ends("ing")) && self.vowel_in_stem() {
            self.b.truncate((self.j + 1) as usize);
            if self.ends("at") {
                self.set_to("ate");
            } else if self.ends("bl") {
                self.set_to("ble");
            } else if self.ends("iz") {
                self.set_to("ize");
            } else if self.double_cons(self.last()) {
                if !matches!(self.b[self.last()], b'l' | b's' | b'z') {
                    self.b.pop();
                }
            } else {
                self.j = self.last() as isize;
                if self.m() == 1 && self.cvc(self.last()) {
                    self.b.push(b'e');
                }
            }
        }
    }

    fn step1c(&mut self) {
        if self.ends("y") && self.vowel_in_stem() {
            let k = self.last();
            self.b[k] = b'i';
        }
    }

    fn step2(&mut self) {
        const RULES: &[(u8, &[(&str, &str)])] = &[
            (b'a', &[("ational", "ate"), ("tional", "tion")]),
            (b'c', &[("enci", "ence"), ("anci", "ance")]),
            (b'e', &[("izer", "ize")]),
            (
                b'l',
                &[
                    ("bli", "ble"),
                    ("alli", "al"),
                    ("entli", "ent"),
                    ("eli", "e"),
                    ("ousli", "ous"),
                ],
            ),
            (b'o', &[("ization", "ize"), ("ation", "ate"), ("ator", "ate")]),
            (
                b's',
                &[
                    ("alism", "al"),
                    ("iveness", "ive"),
                    ("fulness", "ful"),
                    ("ousness", "ous"),
                ],
            ),
            (b't', &[("aliti", "al"), ("iviti", "ive"), ("biliti", "ble")]),
            (b'g', &[("logi", "log")]),
        ];
        let key = self.b[self.last() - 1];
        self.apply_rules(key, RULES);
    }

    fn step3(&mut self) {
        const RULES: &[(u8, &[(&str, &str)])] = &[
            (b'e', &[("icate", "ic"), ("ative", ""), ("alize", "al")]),
            (b'i', &[("iciti", "ic")]),
            (b'l', &[("ical", "ic"), ("ful", "")]),
            (b's', &[("ness", "")]),
        ];
        let key = self.b[self.last()];
        self.apply_rules(key, RULES);
    }

    // first suffix that matches decides, whether or not its condition holds
    fn apply_rules(&mut self, key: u8, rules: &[(u8, &[(&str, &str)])]) {
        let Some((_, list)) = rules.iter().find(|(c, _)| *c == key) else {
            return;
        };
        for (suffix, replacement) in list.iter() {
            if self.ends(suffix) {
                self.r(replacement);
                return;
            }
        }
    }

    fn step4(&mut self) {
        if self.b.len() < 2 {
            return;
        }
        let matched = match self.b[self.last() - 1] {
            b'a' => self.ends("al"),
            b'c' => self.ends("ance") || self.ends("ence"),
            b'e' => self.ends("er"),
            b'i' => self.ends("ic"),
            b'l' => self.ends("able") || self.ends("ible"),
            b'n' => {
                self.ends("ant") || self.ends("ement") || self.ends("ment") || self.ends("ent")
            }
            b'o' => {
                (self.ends("ion") && self.j >= 0 && matches!(self.b[self.j as usize], b's' | b't'))
                    || self.ends("ou")
            }
            b's' => self.ends("ism"),
            b't' => self.ends("ate") || self.ends("iti"),
            b'u' => self.ends("ous"),
            b'v' => self.ends("ive"),
            b'z' => self.ends("ize"),
            _ => false,
        };
        if matched && self.m() > 1 {
            self.b.truncate((self.j + 1) as usize);
        }
    }

    fn step5(&mut self) {
        self.j = self.last() as isize;
        // measured once over the word as it stood on entry
        let m = self.m();
        if self.b[self.last()] == b'e' && (m > 1 || (m == 1 && !self.cvc(self.last() - 1))) {
            self.b.pop();
        }
        if self.b[self.last()] == b'l' && self.double_cons(self.last()) && m > 1 {
            self.b.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::porter_stem;

    #[test]
    fn stems_the_classic_examples() {
        for (w, s) in [
            ("stemming", "stem"),
            ("stemmed", "stem"),
            ("caresses", "caress"),
            ("ponies", "poni"),
            ("ties", "ti"),
            ("agreed", "agre"),
            ("hopping", "hop"),
            ("filing", "file"),
            ("happy", "happi"),
            ("relational", "relat"),
            ("generalizations", "gener"),
            ("oscillators", "oscil"),
            ("controll", "control"),
        ] {
            assert_eq!(porter_stem(w), s, "{w}");
        }
    }

    #[test]
    fn short_and_non_ascii_words_untouched() {
        assert_eq!(porter_stem("a"), "a");
        assert_eq!(porter_stem("is"), "is");
        assert_eq!(porter_stem("café"), "café");
        assert_eq!(porter_stem(""), "");
    }
}
