//! Prompt layouts for every translation and summarization setup, and the
//! parsers that turn raw completions back into structured outputs.
//!
//! Labels are rendered as `"{name}: "`. Pair exemplars are separated by a
//! single newline; triplet and summarization blocks by a blank line.

mod parse;
mod render;
mod summary;
mod types;

pub use parse::{parse_marked, parse_pivot_completion, parse_rating, parse_translation, Parsed};
pub use render::{
    build_e2x_prompt, build_pair_prompt, build_pivot_prompt, build_x2e_prompt, label,
    render_pair, render_triplet, Side,
};
pub use summary::{
    build_basic_sum_prompt, build_judge_prompt, build_sum_prompt, build_xlt_sum_prompt,
    DEFAULT_XLT_TEMPLATE, XLT_MARKER,
};
pub use types::{default_ldp_exemplars, DocSumExemplar, Exemplar, PivotTriplet, PromptText, Provenance, TagStyle};

use crate::lang::LangError;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PromptError {
    #[error("unknown language code `{0}`")]
    UnknownLanguage(String),
    #[error("exemplar targets `{found}` but the prompt targets `{expected}`")]
    MixedTargetLanguage { expected: String, found: String },
    #[error("invalid exemplar: {0}")]
    InvalidExemplar(String),
    #[error("pivot prompts need at least one triplet")]
    NeedTriplets,
    #[error("triplet languages ({found}) do not match the prompt ({expected})")]
    TripletMismatch { expected: String, found: String },
    #[error("test input must be a single line")]
    MultilineInput,
    #[error("completion has no `{0}` segment")]
    NoTargetSegment(String),
    #[error("template is missing the `{0}` placeholder")]
    BadTemplate(&'static str),
    #[error("no rating between 1 and 5 in completion")]
    UnparsableRating,
}

impl From<LangError> for PromptError {
    fn from(e: LangError) -> Self {
        match e {
            LangError::UnknownLanguage(code) => PromptError::UnknownLanguage(code),
            other => PromptError::InvalidExemplar(other.to_string()),
        }
    }
}
