//! Reference-based evaluation and output-language analysis.

mod bleu;
mod chrf;
mod confusion;
mod fragmentation;
mod lid;
mod rouge;
mod tokenize;

use serde::{Deserialize, Serialize};

pub use bleu::{bleu, bleu_stats, sentence_bleu, BleuStats};
pub use chrf::{chrf_pp, chrf_stats, sentence_chrf_pp, NGramStats, OrderCounts};
pub use confusion::{confusion_matrix, ConfusionMatrix};
pub use fragmentation::fragmentation_ratio;
pub use lid::{lid_classify, lid_train, LidConfig, LidModel, DEFAULT_FLOOR, MIN_SEED_LINES, OTHER};
pub use rouge::{rouge_l, rouge_l_corpus, RougeL};
pub use tokenize::{Tokenizer, VocabTokenizer};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MetricError {
    #[error("{hypotheses} hypotheses but {references} references")]
    Misaligned { hypotheses: usize, references: usize },
    #[error("no segments to score")]
    NoSegments,
    #[error("pair {0} has zero English tokens")]
    ZeroDenominator(usize),
    #[error("language `{lang}` has {have} seed lines, need at least {need}")]
    NeedSeedData { lang: String, have: usize, need: usize },
    #[error("cannot classify empty text")]
    EmptyText,
    #[error("unknown language `{0}`")]
    UnknownLanguage(String),
    #[error("unknown tokenizer `{0}`")]
    UnknownTokenizer(String),
    #[error("vocabulary file: {0}")]
    Vocab(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// 0 to 100.
    Percent,
    /// 0 to 1.
    Unit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricScore<F> {
    pub name: String,
    pub value: F,
    pub scale: Scale,
    pub segment_count: usize,
}

pub(crate) fn check_aligned<S>(hyps: &[S], refs: &[S]) -> Result<(), MetricError> {
    if hyps.len() != refs.len() {
        return Err(MetricError::Misaligned {
            hypotheses: hyps.len(),
            references: refs.len(),
        });
    }
    if hyps.is_empty() {
        return Err(MetricError::NoSegments);
    }
    Ok(())
}
