use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::{BackendError, Completion, FinishReason, GenerationRequest, Generator};

/// Payload and response field names for one completion-style HTTP API.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AdapterFields {
    pub model_field: String,
    pub prompt_field: String,
    pub max_tokens_field: String,
    pub temperature_field: String,
    pub stop_field: String,
    /// JSON pointer to the completion text in the response.
    pub text_pointer: String,
    /// JSON pointer to a finish reason; `"length"` maps to a length stop.
    pub finish_pointer: Option<String>,
    pub auth_header: String,
    pub auth_scheme: String,
    pub timeout_secs: u64,
    /// Extra constant fields merged into every payload.
    pub extra: Map<String, Value>,
}

impl Default for AdapterFields {
    fn default() -> Self {
        Self {
            model_field: "model".into(),
            prompt_field: "prompt".into(),
            max_tokens_field: "max_tokens".into(),
            temperature_field: "temperature".into(),
            stop_field: "stop".into(),
            text_pointer: "/choices/0/text".into(),
            finish_pointer: Some("/choices/0/finish_reason".into()),
            auth_header: "Authorization".into(),
            auth_scheme: "Bearer".into(),
            timeout_secs: 120,
            extra: Map::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LiveConfig {
    pub base_url: String,
    /// Name of the environment variable holding the credential.
    pub credential_env: Option<String>,
    pub model_id: String,
    pub fields: AdapterFields,
}

/// Blocking HTTP adapter: one JSON POST per request.
pub struct LiveAdapter {
    config: LiveConfig,
    agent: ureq::Agent,
}

impl LiveAdapter {
    pub fn new(config: LiveConfig) -> Self {
        let agent = ureq::Agent::config_builder()
            .http_status_as_error(false)
            .timeout_global(Some(Duration::from_secs(config.fields.timeout_secs)))
            .build()
            .into();
        Self { config, agent }
    }

    fn credential(&self) -> Result<Option<String>, BackendError> {
        let Some(var) = &self.config.credential_env else {
            return Ok(None);
        };
        match std::env::var(var) {
            Ok(v) if !v.trim().is_empty() => Ok(Some(v)),
            _ => Err(BackendError::AuthError(format!("environment variable `{var}` is not set"))),
        }
    }

    pub fn payload(&self, req: &GenerationRequest) -> Value {
        let f = &self.config.fields;
        let mut body = f.extra.clone();
        let model = if req.model_id.is_empty() { &self.config.model_id } else { &req.model_id };
        body.insert(f.model_field.clone(), Value::from(model.as_str()));
        body.insert(f.prompt_field.clone(), Value::from(req.prompt.as_str()));
        body.insert(f.max_tokens_field.clone(), Value::from(req.max_tokens));
        body.insert(f.temperature_field.clone(), Value::from(req.temperature));
        if !req.stop.is_empty() {
            body.insert(f.stop_field.clone(), Value::from(req.stop.clone()));
        }
        Value::Object(body)
    }

    fn parse_response(&self, body: &str) -> Result<Completion, BackendError> {
        let json: Value = serde_json::from_str(body)
            .map_err(|e| BackendError::TransportError(format!("malformed response body: {e}")))?;
        let text = json
            .pointer(&self.config.fields.text_pointer)
            .and_then(Value::as_str)
            .ok_or_else(|| {
                BackendError::TransportError(format!(
                    "response has no string at `{}`",
                    self.config.fields.text_pointer
                ))
            })?;
        let finish_reason = match self
            .config
            .fields
            .finish_pointer
            .as_deref()
            .and_then(|p| json.pointer(p))
            .and_then(Value::as_str)
        {
            Some("length") => FinishReason::Length,
            _ => FinishReason::Stop,
        };
        Ok(Completion {
            text: text.to_owned(),
            finish_reason,
        })
    }
}

impl Generator for LiveAdapter {
    fn complete(&self, req: &GenerationRequest) -> Result<Completion, BackendError> {
        let credential = self.credential()?;
        let body = serde_json::to_string(&self.payload(req)).expect("payload serializes");
        let mut call = self
            .agent
            .post(&self.config.base_url)
            .header("Content-Type", "application/json");
        if let Some(key) = credential {
            let f = &self.config.fields;
            let value = if f.auth_scheme.is_empty() { key } else { format!("{} {key}", f.auth_scheme) };
            call = call.header(f.auth_header.as_str(), value.as_str());
        }
        let mut resp = call
            .send(body.as_str())
            .map_err(|e| BackendError::TransportError(e.to_string()))?;
        let status = resp.status().as_u16();
        let text = resp
            .body_mut()
            .read_to_string()
            .map_err(|e| BackendError::TransportError(e.to_string()))?;
        match status {
            200..=299 => self.parse_response(&text),
            401 | 403 => Err(BackendError::AuthError(format!("HTTP {status}"))),
            429 => Err(BackendError::RateLimited(format!("HTTP {status}"))),
            408 | 500..=599 => Err(BackendError::TransportError(format!("HTTP {status}"))),
            _ => Err(BackendError::InvalidRequest(format!("HTTP {status}: {text}"))),
        }
    }
}
