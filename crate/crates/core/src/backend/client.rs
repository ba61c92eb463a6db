use std::collections::BTreeMap;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::live::{AdapterFields, LiveAdapter, LiveConfig};
use super::mock::{mock_rules, MockConfig};
use super::{
    BackendError, Cache, CacheEntry, CacheKey, FinishReason, GenerationRequest, GenerationResult,
    Generator,
};
use crate::lang::Registry;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RetryPolicy {
    pub max_retries: u32,
    pub base_delay: Duration,
    pub max_delay: Duration,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        Self {
            max_retries: 3,
            base_delay: Duration::from_millis(500),
            max_delay: Duration::from_secs(30),
        }
    }
}

impl RetryPolicy {
    pub fn delay(&self, attempt: u32) -> Duration {
        let factor = 1u32.checked_shl(attempt).unwrap_or(u32::MAX);
        self.base_delay.saturating_mul(factor).min(self.max_delay)
    }
}

/// A generator plus caching, retry and truncation policy.
pub struct Client {
    backend_id: String,
    model_id: String,
    generator: Arc<dyn Generator>,
    cache: Option<Arc<Cache>>,
    retry: RetryPolicy,
    parallelism: usize,
}

impl std::fmt::Debug for Client {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Client")
            .field("backend_id", &self.backend_id)
            .field("model_id", &self.model_id)
            .field("retry", &self.retry)
            .field("parallelism", &self.parallelism)
            .finish_non_exhaustive()
    }
}

fn truncate_at_stop(text: &str, stop: &[String]) -> Option<usize> {
    stop.iter()
        .filter(|s| !s.is_empty())
        .filter_map(|s| text.find(s.as_str()))
        .min()
}

impl Client {
    pub fn new(backend_id: &str, model_id: &str, generator: Arc<dyn Generator>) -> Self {
        Self {
            backend_id: backend_id.to_owned(),
            model_id: model_id.to_owned(),
            generator,
            cache: None,
            retry: RetryPolicy::default(),
            parallelism: 1,
        }
    }

    pub fn with_cache(mut self, cache: Arc<Cache>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn with_retry(mut self, retry: RetryPolicy) -> Self {
        self.retry = retry;
        self
    }

    pub fn with_parallelism(mut self, parallelism: usize) -> Self {
        self.parallelism = parallelism.max(1);
        self
    }

    pub fn backend_id(&self) -> &str {
        &self.backend_id
    }

    pub fn model_id(&self) -> &str {
        &self.model_id
    }

    pub fn parallelism(&self) -> usize {
        self.parallelism
    }

    pub fn cache(&self) -> Option<&Cache> {
        self.cache.as_deref()
    }

    pub fn request(&self, prompt: &crate::prompt::PromptText, max_tokens: u32) -> GenerationRequest {
        GenerationRequest::from_prompt(prompt, max_tokens, &self.backend_id, &self.model_id)
    }

    fn call_with_retries(&self, req: &GenerationRequest) -> Result<super::Completion, BackendError> {
        let mut attempt = 0;
        loop {
            match self.generator.complete(req) {
                Ok(c) => return Ok(c),
                Err(e) if e.is_transient() && attempt < self.retry.max_retries => {
                    log::warn!("attempt {} failed ({e}); retrying", attempt + 1);
                    std::thread::sleep(self.retry.delay(attempt));
                    attempt += 1;
                }
                Err(e) => return Err(e),
            }
        }
    }

    /// Generates one completion, cut at the first stop sequence.
    /// Zero-temperature requests are served from and written to the cache.
    pub fn generate(&self, req: &GenerationRequest) -> Result<GenerationResult, BackendError> {
        req.validate()?;
        let started = Instant::now();
        let cacheable = req.temperature == 0.0;
        let key = CacheKey::of(req);
        if cacheable {
            if let Some(cache) = &self.cache {
                if let Some(hit) = cache.get(&key)? {
                    return Ok(GenerationResult {
                        text: hit.text,
                        finish_reason: hit.finish_reason,
                        cached: true,
                        latency_ms: started.elapsed().as_millis() as u64,
                        error: None,
                    });
                }
            }
        }

        let raw = self.call_with_retries(req)?;
        let (text, finish_reason) = match truncate_at_stop(&raw.text, &req.stop) {
            Some(cut) => (raw.text[..cut].to_owned(), FinishReason::Stop),
            None => (raw.text, raw.finish_reason),
        };
        if cacheable && finish_reason != FinishReason::Error {
            if let Some(cache) = &self.cache {
                cache.put(
                    &key,
                    &CacheEntry {
                        request: req.clone(),
                        text: text.clone(),
                        finish_reason,
                        created_at: chrono::Utc::now()
                            .to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
                    },
                )?;
            }
        }
        Ok(GenerationResult {
            text,
            finish_reason,
            cached: false,
            latency_ms: started.elapsed().as_millis() as u64,
            error: None,
        })
    }

    /// Runs requests with at most `parallelism` in flight. Results line up
    /// with `reqs`; a failed item becomes an `Error` result in its slot.
    pub fn generate_batch(&self, reqs: &[GenerationRequest], parallelism: usize) -> Vec<GenerationResult> {
        let workers = parallelism.max(1).min(reqs.len());
        if workers <= 1 {
            return reqs
                .iter()
                .map(|r| self.generate(r).unwrap_or_else(|e| GenerationResult::failed(&e)))
                .collect();
        }
        let next = AtomicUsize::new(0);
        let slots: Vec<Mutex<Option<GenerationResult>>> = reqs.iter().map(|_| Mutex::new(None)).collect();
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    let Some(req) = reqs.get(i) else { break };
                    let res = self.generate(req).unwrap_or_else(|e| GenerationResult::failed(&e));
                    *slots[i].lock().unwrap() = Some(res);
                });
            }
        });
        slots
            .into_iter()
            .map(|s| s.into_inner().unwrap().expect("every slot filled"))
            .collect()
    }

    pub fn from_config(
        cfg: &BackendConfig,
        registry: &Registry,
        cache: Option<Arc<Cache>>,
    ) -> Result<Self, BackendError> {
        let generator: Arc<dyn Generator> = match cfg.kind {
            BackendKind::Mock => {
                let mock = cfg.mock.clone().ok_or_else(|| {
                    BackendError::Config(format!("mock backend `{}` has no [mock] section", cfg.backend_id))
                })?;
                Arc::new(mock_rules(mock.resolve()?, registry)?)
            }
            BackendKind::Live => {
                let base_url = cfg.base_url.clone().ok_or_else(|| {
                    BackendError::Config(format!("live backend `{}` needs base_url", cfg.backend_id))
                })?;
                Arc::new(LiveAdapter::new(LiveConfig {
                    base_url,
                    credential_env: cfg.credential_env.clone(),
                    model_id: cfg.model_id.clone(),
                    fields: cfg.adapter.clone(),
                }))
            }
        };
        let mut client = Client::new(&cfg.backend_id, &cfg.model_id, generator)
            .with_retry(RetryPolicy {
                max_retries: cfg.max_retries,
                base_delay: Duration::from_millis(cfg.retry_base_ms),
                ..RetryPolicy::default()
            })
            .with_parallelism(cfg.parallelism);
        if let Some(cache) = cache {
            client = client.with_cache(cache);
        }
        Ok(client)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Live,
    Mock,
}

fn default_retries() -> u32 {
    3
}
fn default_parallelism() -> usize {
    4
}
fn default_retry_ms() -> u64 {
    500
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackendConfig {
    pub backend_id: String,
    pub kind: BackendKind,
    #[serde(default)]
    pub base_url: Option<String>,
    #[serde(default)]
    pub credential_env: Option<String>,
    #[serde(default)]
    pub model_id: String,
    #[serde(default = "default_retries")]
    pub max_retries: u32,
    #[serde(default = "default_parallelism")]
    pub parallelism: usize,
    #[serde(default = "default_retry_ms")]
    pub retry_base_ms: u64,
    #[serde(default)]
    pub adapter: AdapterFields,
    #[serde(default)]
    pub mock: Option<MockConfig>,
}

/// Clients keyed by backend id.
#[derive(Debug, Default)]
pub struct Backends {
    clients: BTreeMap<String, Client>,
}

impl Backends {
    pub fn from_configs(
        configs: &[BackendConfig],
        registry: &Registry,
        cache_dir: Option<&Path>,
    ) -> Result<Self, BackendError> {
        let cache = Arc::new(match cache_dir {
            Some(dir) => Cache::on_disk(dir),
            None => Cache::in_memory(),
        });
        let mut clients = BTreeMap::new();
        for cfg in configs {
            let client = Client::from_config(cfg, registry, Some(cache.clone()))?;
            if clients.insert(cfg.backend_id.clone(), client).is_some() {
                return Err(BackendError::Config(format!("duplicate backend id `{}`", cfg.backend_id)));
            }
        }
        Ok(Self { clients })
    }

    pub fn insert(&mut self, client: Client) {
        self.clients.insert(client.backend_id().to_owned(), client);
    }

    pub fn get(&self, backend_id: &str) -> Result<&Client, BackendError> {
        self.clients
            .get(backend_id)
            .ok_or_else(|| BackendError::UnknownBackend(backend_id.to_owned()))
    }
}
