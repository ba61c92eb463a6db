//! Data construction: back-translated pairs, intra-lingual exemplars,
//! pivot triplets, summarization exemplars and fine-tune export.

mod finetune;
mod pairs;
mod summary;
mod triplets;

use serde::{Deserialize, Serialize};

use crate::backend::BackendError;
use crate::corpus::CorpusError;
use crate::jsonl::DataFileError;
use crate::prompt::PromptError;

pub use finetune::{export_finetune, FinetuneRecord};
pub use pairs::{build_intra_exemplars, synthesize_x2e, SyntheticPair};
pub use summary::synthesize_sum_exemplars;
pub use triplets::{synthesize_triplets, TripletOptions, TripletRun, DEFAULT_M_BT};

/// Intra-lingual exemplar count for long-context backends.
pub const DEFAULT_INTRA_SHOTS: usize = 8;
/// Intra-lingual exemplar count for shorter-context backends.
pub const SHORT_CONTEXT_INTRA_SHOTS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    X2e,
    E2x,
}

impl std::str::FromStr for Direction {
    type Err = SynthesisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x2e" => Ok(Direction::X2e),
            "e2x" => Ok(Direction::E2x),
            other => Err(SynthesisError::BadDirection(other.to_owned())),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SynthesisError {
    #[error("need {needed} usable pairs, only {usable} available")]
    NotEnoughPairs { needed: usize, usable: usize },
    #[error("unknown direction `{0}` (expected x2e or e2x)")]
    BadDirection(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Prompt(#[from] PromptError),
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error(transparent)]
    Data(#[from] DataFileError),
}
