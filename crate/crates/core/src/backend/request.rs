use serde::{Deserialize, Serialize};

use super::BackendError;
use crate::prompt::PromptText;

pub const MAX_STOP_SEQUENCES: usize = 4;
pub const DEFAULT_MAX_TOKENS_TRANSLATION: u32 = 256;
pub const DEFAULT_MAX_TOKENS_SUMMARY: u32 = 400;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRequest {
    pub prompt: String,
    pub max_tokens: u32,
    #[serde(default)]
    pub temperature: f64,
    #[serde(default)]
    pub stop: Vec<String>,
    pub model_id: String,
    pub backend_id: String,
    /// Language the completion should be in. Live adapters do not send it;
    /// rule-based generators may use it when the prompt carries no tags.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lang_hint: Option<String>,
}

impl GenerationRequest {
    pub fn from_prompt(prompt: &PromptText, max_tokens: u32, backend_id: &str, model_id: &str) -> Self {
        Self {
            prompt: prompt.text.clone(),
            max_tokens,
            temperature: 0.0,
            stop: prompt.stop.clone(),
            model_id: model_id.to_owned(),
            backend_id: backend_id.to_owned(),
            lang_hint: Some(prompt.expected_lang.clone()),
        }
    }

    pub fn validate(&self) -> Result<(), BackendError> {
        if self.prompt.is_empty() {
            return Err(BackendError::InvalidRequest("empty prompt".into()));
        }
        if self.stop.len() > MAX_STOP_SEQUENCES {
            return Err(BackendError::InvalidRequest(format!(
                "{} stop sequences (max {MAX_STOP_SEQUENCES})",
                self.stop.len()
            )));
        }
        if self.max_tokens == 0 {
            return Err(BackendError::InvalidRequest("max_tokens must be positive".into()));
        }
        if !self.temperature.is_finite() || self.temperature < 0.0 {
            return Err(BackendError::InvalidRequest("temperature must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FinishReason {
    Stop,
    Length,
    Error,
}

/// What a generator hands back before client-side post-processing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub text: String,
    pub finish_reason: FinishReason,
}

impl Completion {
    pub fn stop(text: impl Into<String>) -> Self {
        Self {
            text: text.into(),
            finish_reason: FinishReason::Stop,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationResult {
    pub text: String,
    pub finish_reason: FinishReason,
    pub cached: bool,
    pub latency_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl GenerationResult {
    pub fn failed(err: &BackendError) -> Self {
        Self {
            text: String::new(),
            finish_reason: FinishReason::Error,
            cached: false,
            latency_ms: 0,
            error: Some(err.to_string()),
        }
    }

    pub fn is_error(&self) -> bool {
        self.finish_reason == FinishReason::Error
    }
}
