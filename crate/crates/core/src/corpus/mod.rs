//! Unlabeled monolingual corpora: ingestion, cleaning, sampling and
//! temperature-balanced mixing.

mod filter;
mod io;
mod mixture;
mod sample;

use serde::{Deserialize, Serialize};

pub use filter::{filter_corpus, filter_line, FilterReport, FilterRules, RejectReason, Verdict};
pub use io::{read_corpus, write_corpus, CorpusFormat};
pub use mixture::{draw_mixture, mixture_weights, MixtureEntry, MixtureWeights};
pub use sample::sample_lines;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("requested {requested} lines but only {available} are available")]
    NotEnoughLines { requested: usize, available: usize },
    #[error("invalid corpus sizes: {0}")]
    InvalidSizes(String),
    #[error("temperature must be positive and finite")]
    InvalidTemperature,
    #[error("no corpus (or an empty one) for weighted language `{0}`")]
    MissingCorpus(String),
    #[error("line {line_no} contains a line break")]
    LineBreak { line_no: usize },
    #[error(transparent)]
    Data(#[from] crate::jsonl::DataFileError),
}

/// One sentence of an unlabeled corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusLine {
    pub text: String,
    pub lang: String,
    #[serde(default)]
    pub source_id: String,
    #[serde(default)]
    pub line_no: usize,
}

pub fn has_line_break(text: &str) -> bool {
    text.chars()
        .any(|c| matches!(c, '\n' | '\r' | '\u{0B}' | '\u{0C}' | '\u{85}' | '\u{2028}' | '\u{2029}'))
}

impl CorpusLine {
    pub fn new(
        text: impl Into<String>,
        lang: impl Into<String>,
        source_id: impl Into<String>,
        line_no: usize,
    ) -> Result<Self, CorpusError> {
        let text = text.into();
        if has_line_break(&text) {
            return Err(CorpusError::LineBreak { line_no });
        }
        Ok(Self {
            text,
            lang: lang.into(),
            source_id: source_id.into(),
            line_no,
        })
    }
}
