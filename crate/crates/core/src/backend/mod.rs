//! Text-generation backends behind one request/response contract.
//!
//! A [`Client`] owns a [`Generator`] (live HTTP adapter, rule-based mock, or
//! any user implementation) and adds stop-sequence truncation, zero-temperature
//! caching, retries with exponential backoff and bounded-parallel batches.

mod cache;
mod client;
mod live;
mod mock;
mod request;

pub use cache::{Cache, CacheEntry, CacheKey};
pub use client::{BackendConfig, BackendKind, Backends, Client, RetryPolicy};
pub use live::{AdapterFields, LiveAdapter, LiveConfig};
pub use mock::{mock_rules, FnGenerator, MockBackend, MockConfig, WordTable};
pub use request::{
    Completion, FinishReason, GenerationRequest, GenerationResult, DEFAULT_MAX_TOKENS_SUMMARY,
    DEFAULT_MAX_TOKENS_TRANSLATION, MAX_STOP_SEQUENCES,
};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum BackendError {
    #[error("transport error: {0}")]
    TransportError(String),
    #[error("authentication error: {0}")]
    AuthError(String),
    #[error("rate limited: {0}")]
    RateLimited(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("no backend registered as `{0}`")]
    UnknownBackend(String),
    #[error("bad translation table: {0}")]
    BadTable(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("backend configuration: {0}")]
    Config(String),
}

impl BackendError {
    /// Whether a retry might succeed.
    pub fn is_transient(&self) -> bool {
        matches!(self, BackendError::TransportError(_) | BackendError::RateLimited(_))
    }
}

/// Anything that can turn a request into raw completion text.
pub trait Generator: Send + Sync {
    fn complete(&self, req: &GenerationRequest) -> Result<Completion, BackendError>;
}
