use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{BackendError, FinishReason, GenerationRequest};

/// SHA-256 over the canonical JSON of the request fields that determine the
/// completion, as lowercase hex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CacheKey(String);

#[derive(Serialize)]
struct Canonical<'a> {
    backend_id: &'a str,
    model_id: &'a str,
    prompt: &'a str,
    max_tokens: u32,
    temperature: f64,
    stop: &'a [String],
    lang_hint: Option<&'a str>,
}

impl CacheKey {
    pub fn of(req: &GenerationRequest) -> Self {
        let canonical = Canonical {
            backend_id: &req.backend_id,
            model_id: &req.model_id,
            prompt: &req.prompt,
            max_tokens: req.max_tokens,
            temperature: req.temperature,
            stop: &req.stop,
            lang_hint: req.lang_hint.as_deref(),
        };
        let bytes = serde_json::to_vec(&canonical).expect("canonical request serializes");
        CacheKey(hex::encode(Sha256::digest(&bytes)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CacheKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub request: GenerationRequest,
    pub text: String,
    pub finish_reason: FinishReason,
    pub created_at: String,
}

const STRIPES: usize = 64;

#[derive(Debug)]
enum Store {
    Disk {
        root: PathBuf,
        // writes to the same key are serialized through its stripe
        stripes: Vec<Mutex<()>>,
    },
    Memory(Mutex<HashMap<CacheKey, CacheEntry>>),
}

/// Content-addressed response cache: `<root>/<first 2 hex>/<digest>.json`.
#[derive(Debug)]
pub struct Cache {
    store: Store,
}

impl Cache {
    pub fn on_disk(root: impl Into<PathBuf>) -> Self {
        Self {
            store: Store::Disk {
                root: root.into(),
                stripes: (0..STRIPES).map(|_| Mutex::new(())).collect(),
            },
        }
    }

    pub fn in_memory() -> Self {
        Self {
            store: Store::Memory(Mutex::new(HashMap::new())),
        }
    }

    pub fn path_for(root: &Path, key: &CacheKey) -> PathBuf {
        root.join(&key.0[..2]).join(format!("{}.json", key.0))
    }

    pub fn get(&self, key: &CacheKey) -> Result<Option<CacheEntry>, BackendError> {
        match &self.store {
            Store::Memory(map) => Ok(map.lock().unwrap().get(key).cloned()),
            Store::Disk { root, .. } => {
                let path = Self::path_for(root, key);
                match std::fs::read_to_string(&path) {
                    Ok(text) => serde_json::from_str(&text)
                        .map(Some)
                        .map_err(|e| BackendError::Cache(format!("{}: {e}", path.display()))),
                    Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
                    Err(e) => Err(BackendError::Cache(format!("{}: {e}", path.display()))),
                }
            }
        }
    }

    pub fn put(&self, key: &CacheKey, entry: &CacheEntry) -> Result<(), BackendError> {
        match &self.store {
            Store::Memory(map) => {
                map.lock().unwrap().insert(key.clone(), entry.clone());
                Ok(())
            }
            Store::Disk { root, stripes } => {
                let stripe = usize::from_str_radix(&key.0[..2], 16).unwrap_or(0) % STRIPES;
                let _guard = stripes[stripe].lock().unwrap();
                let path = Self::path_for(root, key);
                let dir = path.parent().expect("cache path has a parent");
                let io = |e: std::io::Error| BackendError::Cache(format!("{}: {e}", path.display()));
                std::fs::create_dir_all(dir).map_err(io)?;
                // write-then-rename keeps concurrent readers from seeing partial files
                let tmp = dir.join(format!(".{}.tmp", key.0));
                let mut file = std::fs::File::create(&tmp).map_err(io)?;
                let body = serde_json::to_vec_pretty(entry).expect("cache entry serializes");
                file.write_all(&body).map_err(io)?;
                file.sync_all().map_err(io)?;
                std::fs::rename(&tmp, &path).map_err(io)
            }
        }
    }
}
