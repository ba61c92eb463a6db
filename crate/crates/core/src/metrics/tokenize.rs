use std::collections::HashSet;
use std::path::Path;

use unicode_general_category::{get_general_category, GeneralCategory as G};

use super::MetricError;

/// Longest-match-first greedy segmentation over a fixed vocabulary.
/// Characters no vocabulary entry covers become single-character tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VocabTokenizer {
    vocab: HashSet<String>,
    max_chars: usize,
}

impl VocabTokenizer {
    pub fn new<I: IntoIterator<Item = String>>(tokens: I) -> Self {
        let vocab: HashSet<String> = tokens.into_iter().filter(|t| !t.is_empty()).collect();
        let max_chars = vocab.iter().map(|t| t.chars().count()).max().unwrap_or(1);
        Self { vocab, max_chars }
    }

    /// One token per line; trailing `\r` is dropped, blank lines ignored.
    pub fn from_file(path: &Path) -> Result<Self, MetricError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| MetricError::Vocab(format!("{}: {e}", path.display())))?;
        Ok(Self::new(
            text.lines()
                .map(|l| l.strip_suffix('\r').unwrap_or(l).to_owned()),
        ))
    }

    fn segment(&self, word: &str, out: &mut Vec<String>) {
        let chars: Vec<char> = word.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let longest = (1..=self.max_chars.min(chars.len() - i))
                .rev()
                .find(|&len| {
                    let piece: String = chars[i..i + len].iter().collect();
                    self.vocab.contains(&piece)
                })
                .unwrap_or(1);
            out.push(chars[i..i + longest].iter().collect());
            i += longest;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Tokenizer {
    /// Whitespace-separated words.
    Whitespace,
    /// Whitespace split with every punctuation or symbol character as its own token.
    #[default]
    Punct,
    /// Every non-whitespace character.
    Character,
    /// Every UTF-8 byte of non-whitespace characters.
    Byte,
    Vocab(VocabTokenizer),
}

fn is_punct(c: char) -> bool {
    matches!(
        get_general_category(c),
        G::ConnectorPunctuation
            | G::DashPunctuation
            | G::OpenPunctuation
            | G::ClosePunctuation
            | G::InitialPunctuation
            | G::FinalPunctuation
            | G::OtherPunctuation
            | G::MathSymbol
            | G::CurrencySymbol
            | G::ModifierSymbol
            | G::OtherSymbol
    )
}

impl Tokenizer {
    /// `whitespace`, `punct` (alias `default`), `char`, `byte`, or `vocab:<path>`.
    pub fn from_name(name: &str) -> Result<Self, MetricError> {
        match name {
            "whitespace" | "ws" => Ok(Tokenizer::Whitespace),
            "punct" | "default" => Ok(Tokenizer::Punct),
            "char" | "character" => Ok(Tokenizer::Character),
            "byte" => Ok(Tokenizer::Byte),
            other => match other.strip_prefix("vocab:") {
                Some(path) => Ok(Tokenizer::Vocab(VocabTokenizer::from_file(Path::new(path))?)),
                None => Err(MetricError::UnknownTokenizer(other.to_owned())),
            },
        }
    }

    pub fn tokenize(&self, text: &str) -> Vec<String> {
        match self {
            Tokenizer::Whitespace => text.split_whitespace().map(str::to_owned).collect(),
            Tokenizer::Punct => {
                let mut out = Vec::new();
                for word in text.split_whitespace() {
                    let mut current = String::new();
                    for c in word.chars() {
                        if is_punct(c) {
                            if !current.is_empty() {
                                out.push(std::mem::take(&mut current));
                            }
                            out.push(c.to_string());
                        } else {
                            current.push(c);
                        }
                    }
                    if !current.is_empty() {
                        out.push(current);
                    }
                }
                out
            }
            Tokenizer::Character => text
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| c.to_string())
                .collect(),
            Tokenizer::Byte => text
                .chars()
                .filter(|c| !c.is_whitespace())
                .flat_map(|c| {
                    let mut buf = [0u8; 4];
                    c.encode_utf8(&mut buf)
                        .bytes()
                        .map(|b| format!("<0x{b:02X}>"))
                        .collect::<Vec<_>>()
                })
                .collect(),
            Tokenizer::Vocab(v) => {
                let mut out = Vec::new();
                for word in text.split_whitespace() {
                    v.segment(word, &mut out);
                }
                out
            }
        }
    }

    pub fn count(&self, text: &str) -> usize {
        self.tokenize(text).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn punct_isolation() {
        let t = Tokenizer::Punct;
        assert_eq!(t.tokenize("Hello, world!"), vec!["Hello", ",", "world", "!"]);
        assert_eq!(t.tokenize("“quoted”"), vec!["“", "quoted", "”"]);
        assert_eq!(t.tokenize("  "), Vec::<String>::new());
    }

    #[test]
    fn char_and_byte() {
        assert_eq!(Tokenizer::Character.count("ab c"), 3);
        assert_eq!(Tokenizer::Byte.count("aक"), 4);
        assert_eq!(Tokenizer::Byte.tokenize("a"), vec!["<0x61>"]);
    }

    #[test]
    fn vocab_longest_match() {
        let v = VocabTokenizer::new(["un", "unbreak", "able", "a"].map(String::from));
        let t = Tokenizer::Vocab(v);
        assert_eq!(t.tokenize("unbreakable"), vec!["unbreak", "able"]);
        assert_eq!(t.tokenize("unx"), vec!["un", "x"]);
    }

    #[test]
    fn vocab_file_and_names() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.txt");
        std::fs::write(&path, "ab\r\n\ncd\n").unwrap();
        let t = Tokenizer::from_name(&format!("vocab:{}", path.display())).unwrap();
        assert_eq!(t.tokenize("abcd"), vec!["ab", "cd"]);
        assert_eq!(Tokenizer::from_name("ws").unwrap(), Tokenizer::Whitespace);
        assert!(matches!(Tokenizer::from_name("nope"), Err(MetricError::UnknownTokenizer(_))));
    }
}
