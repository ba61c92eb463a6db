use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::HarnessError;
use crate::backend::{BackendConfig, MockConfig};
use crate::lang::{Registry, DEFAULT_LDP_SET, PIVOT};
use crate::prompt::TagStyle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    X2e,
    E2x,
    X2y,
    Summarize,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::X2e => "x2e",
            Task::E2x => "e2x",
            Task::X2y => "x2y",
            Task::Summarize => "summarize",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Supervised,
    Ldp,
    LdpBt,
    ZeroShot,
    Basic,
    Xlt,
    LdpSum,
    LdpSumUnlabeled,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Supervised => "supervised",
            Method::Ldp => "ldp",
            Method::LdpBt => "ldp_bt",
            Method::ZeroShot => "zero_shot",
            Method::Basic => "basic",
            Method::Xlt => "xlt",
            Method::LdpSum => "ldp_sum",
            Method::LdpSumUnlabeled => "ldp_sum_unlabeled",
        }
    }
}

/// A test set: one JSONL file of `{source, reference}` records, or two
/// line-aligned plain-text files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TestSetSource {
    Jsonl(PathBuf),
    Paired { source: PathBuf, reference: PathBuf },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Paths {
    /// Keyed by the language being evaluated (the non-English side; the
    /// source language for x2y).
    #[serde(default)]
    pub test_sets: BTreeMap<String, TestSetSource>,
    /// Labeled X/English pairs, `{source: x, reference: en}`.
    #[serde(default)]
    pub exemplar_pools: BTreeMap<String, PathBuf>,
    /// Unlabeled lines (translation) or documents (summarization).
    #[serde(default)]
    pub unlabeled: BTreeMap<String, PathBuf>,
    /// Replaces the built-in LDP seed exemplars (JSONL of exemplars).
    #[serde(default)]
    pub ldp_exemplars: Option<PathBuf>,
    /// Cross-lingual document/summary exemplars (JSONL `{doc, summary, lang}`).
    #[serde(default)]
    pub cross_exemplars: Option<PathBuf>,
    /// Seed lines for the language identifier.
    #[serde(default)]
    pub lid_seeds: BTreeMap<String, PathBuf>,
}

fn default_pivot() -> String {
    PIVOT.to_owned()
}
fn default_ldp_set() -> Vec<String> {
    DEFAULT_LDP_SET.iter().map(|s| s.to_string()).collect()
}
fn default_tokenizer() -> String {
    "punct".to_owned()
}
fn default_triplets() -> usize {
    3
}
fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub task: Task,
    pub languages: Vec<String>,
    #[serde(default = "default_pivot")]
    pub pivot: String,
    /// Target language for x2y.
    #[serde(default)]
    pub target: Option<String>,
    pub method: Method,
    /// Defaults to English tags for supervised runs and no tags otherwise.
    #[serde(default)]
    pub tag_style: Option<TagStyle>,
    #[serde(default = "default_ldp_set")]
    pub ldp_set: Vec<String>,
    /// Defaults to 8 for translation and 1 for summarization.
    #[serde(default)]
    pub shots: Option<usize>,
    /// Defaults to 200 for translation and 100 for summarization.
    #[serde(default)]
    pub sample_size: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    pub backend_id: String,
    /// Defaults to chrf++ and bleu for translation, rouge-l for summarization.
    #[serde(default)]
    pub metrics: Vec<String>,
    #[serde(default = "default_tokenizer")]
    pub bleu_tokenizer: String,
    /// Unlabeled lines back-translated per language; defaults to twice `shots`.
    #[serde(default)]
    pub bt_pool: Option<usize>,
    /// Pivot triplets per x2y prompt.
    #[serde(default = "default_triplets")]
    pub triplets: usize,
    #[serde(default = "yes")]
    pub filter_unlabeled: bool,
    #[serde(default)]
    pub judge_prompts: bool,
    /// Named language groups for averaged report rows.
    #[serde(default)]
    pub groups: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub lid_floor: Option<f64>,
    #[serde(default)]
    pub paths: Paths,
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    /// Extra registry entries (JSONL).
    #[serde(default)]
    pub registry: Option<PathBuf>,
    #[serde(default)]
    pub backends: Vec<BackendConfig>,
}

pub const MAX_SUMMARY_DOC_CHARS: usize = 1500;

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    /// Reads a TOML config; relative paths are taken from the file's directory.
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::from_toml(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.resolve_paths(base);
        Ok(cfg)
    }

    pub fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        for src in self.paths.test_sets.values_mut() {
            match src {
                TestSetSource::Jsonl(p) => fix(p),
                TestSetSource::Paired { source, reference } => {
                    fix(source);
                    fix(reference);
                }
            }
        }
        let p = &mut self.paths;
        p.exemplar_pools.values_mut().for_each(fix);
        p.unlabeled.values_mut().for_each(fix);
        p.lid_seeds.values_mut().for_each(fix);
        p.ldp_exemplars.iter_mut().for_each(fix);
        p.cross_exemplars.iter_mut().for_each(fix);
        self.cache_dir.iter_mut().for_each(fix);
        self.out_dir.iter_mut().for_each(fix);
        self.registry.iter_mut().for_each(fix);
        for b in &mut self.backends {
            if let Some(MockConfig::File { path }) = &mut b.mock {
                fix(path);
            }
        }
    }

    pub fn is_translation(&self) -> bool {
        self.task != Task::Summarize
    }

    pub fn tag_style(&self) -> TagStyle {
        self.tag_style.unwrap_or(if self.method == Method::Supervised {
            TagStyle::EnglishTag
        } else {
            TagStyle::NoTag
        })
    }

    pub fn shots(&self) -> usize {
        self.shots.unwrap_or(if self.is_translation() { 8 } else { 1 })
    }

    pub fn sample_size(&self) -> usize {
        self.sample_size.unwrap_or(if self.is_translation() { 200 } else { 100 })
    }

    pub fn bt_pool(&self) -> usize {
        self.bt_pool.unwrap_or(2 * self.shots()).max(self.shots())
    }

    pub fn metrics(&self) -> Vec<String> {
        if !self.metrics.is_empty() {
            return self.metrics.clone();
        }
        if self.is_translation() {
            vec!["chrf++".into(), "bleu".into()]
        } else {
            vec!["rouge-l".into()]
        }
    }

    /// Hex SHA-256 of the config as JSON, with output and cache locations left out.
    pub fn digest(&self) -> String {
        let mut c = self.clone();
        c.out_dir = None;
        c.cache_dir = None;
        let json = serde_json::to_string(&c).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    /// Method and path requirements, checked before anything runs.
    pub fn validate(&self, registry: &Registry) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.languages.is_empty() {
            return bad("`languages` is empty".into());
        }
        if self.pivot != PIVOT {
            return bad(format!("only `{PIVOT}` is supported as pivot"));
        }
        for lang in self.languages.iter().chain(&self.ldp_set).chain(&self.target) {
            registry.get(lang)?;
        }
        for m in self.metrics() {
            if !["chrf++", "bleu", "rouge-l"].contains(&m.as_str()) {
                return bad(format!("unknown metric `{m}`"));
            }
        }
        crate::metrics::Tokenizer::from_name(&self.bleu_tokenizer)?;
        let method = self.method;
        let allowed: &[Method] = match self.task {
            Task::X2e | Task::E2x => &[Method::Supervised, Method::Ldp, Method::LdpBt, Method::ZeroShot],
            Task::X2y => &[Method::LdpBt],
            Task::Summarize => &[Method::Basic, Method::Xlt, Method::LdpSum, Method::LdpSumUnlabeled],
        };
        if !allowed.contains(&method) {
            return bad(format!("method `{}` does not apply to task {:?}", method.name(), self.task));
        }
        if self.task == Task::X2y {
            match &self.target {
                None => return bad("x2y needs `target`".into()),
                Some(t) if self.languages.contains(t) => return bad("`target` is also a source language".into()),
                _ => {}
            }
            if self.triplets == 0 {
                return bad("`triplets` must be at least 1".into());
            }
        }
        if self.shots() == 0 && matches!(method, Method::Supervised | Method::LdpBt | Method::LdpSum | Method::LdpSumUnlabeled) {
            return bad(format!("method `{}` needs shots >= 1", method.name()));
        }
        for lang in &self.languages {
            if !self.paths.test_sets.contains_key(lang) {
                return bad(format!("no test set for `{lang}`"));
            }
            match method {
                Method::Supervised if !self.paths.exemplar_pools.contains_key(lang) => {
                    return bad(format!("supervised needs an exemplar pool for `{lang}`"));
                }
                Method::LdpBt | Method::LdpSumUnlabeled if !self.paths.unlabeled.contains_key(lang) => {
                    return bad(format!("{} needs an unlabeled corpus for `{lang}`", method.name()));
                }
                _ => {}
            }
        }
        if let (Task::X2y, Some(t)) = (self.task, &self.target) {
            if !self.paths.unlabeled.contains_key(t) {
                return bad(format!("ldp_bt needs an unlabeled corpus for `{t}`"));
            }
        }
        if method == Method::LdpSum && self.paths.cross_exemplars.is_none() {
            return bad("ldp_sum needs `paths.cross_exemplars`".into());
        }
        if !self.backends.is_empty() && !self.backends.iter().any(|b| b.backend_id == self.backend_id) {
            return bad(format!("backend `{}` is not configured", self.backend_id));
        }
        Ok(())
    }
}

/// The backend part of a config file. Other keys are ignored, so a full
/// experiment config works as well as a file listing only backends.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
pub struct BackendSettings {
    #[serde(default)]
    pub backend_id: Option<String>,
    #[serde(default)]
    pub backends: Vec<BackendConfig>,
    #[serde(default)]
    pub registry: Option<PathBuf>,
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
}

impl BackendSettings {
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        let mut s: Self = toml::from_str(&text).map_err(|e| HarnessError::Config(e.to_string()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        s.registry.iter_mut().for_each(fix);
        s.cache_dir.iter_mut().for_each(fix);
        for b in &mut s.backends {
            if let Some(MockConfig::File { path }) = &mut b.mock {
                fix(path);
            }
        }
        Ok(s)
    }

    /// `requested`, else the file's `backend_id`, else the only configured backend.
    pub fn pick(&self, requested: Option<&str>) -> Result<String, HarnessError> {
        if let Some(id) = requested.or(self.backend_id.as_deref()) {
            return Ok(id.to_owned());
        }
        match self.backends.as_slice() {
            [one] => Ok(one.backend_id.clone()),
            [] => Err(HarnessError::Config("no backends configured".into())),
            _ => Err(HarnessError::Config("several backends configured; pass --backend".into())),
        }
    }
}
