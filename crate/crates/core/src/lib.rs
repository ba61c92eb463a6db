//! Linguistically diverse prompting for low-resource translation and
//! summarization: prompt assembly, back-translation synthesis, corpus
//! filtering and balancing, pluggable generation backends, and evaluation.

pub mod backend;
pub mod corpus;
pub mod harness;
pub mod jsonl;
pub mod lang;
pub mod metrics;
pub mod num;
pub mod prompt;
pub mod rng;
pub mod synthesis;

pub use num::Scalar;

pub type MetricScore = metrics::MetricScore<f64>;
pub type MixtureWeights = corpus::MixtureWeights<f64>;
pub type MixtureEntry = corpus::MixtureEntry<f64>;
pub type RougeL = metrics::RougeL<f64>;
