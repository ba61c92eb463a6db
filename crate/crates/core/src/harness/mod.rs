//! Experiment configuration, evaluation runs and reports.

mod config;
mod data;
mod report;
mod run;

use std::path::{Path, PathBuf};

pub use config::{BackendSettings, ExperimentConfig, Method, Paths, Task, TestSetSource, MAX_SUMMARY_DOC_CHARS};
pub use data::{load_test_set, Prediction, TestItem};
pub use report::{report, GroupRow, LanguageRow, Report};
pub use run::{
    corpus_scores, language_confusion_analysis, run_summarization_eval, score_records, run_translation_eval, train_lid, EvalRecord,
    JudgePrompt, LanguageScores, RunOptions, RunOutput, RunScores,
};

use crate::backend::{BackendError, Backends};
use crate::corpus::CorpusError;
use crate::jsonl::{write_jsonl, write_text, DataFileError};
use crate::lang::{LangError, Registry};
use crate::metrics::MetricError;
use crate::prompt::PromptError;
use crate::synthesis::SynthesisError;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Prompt(#[from] PromptError),
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error(transparent)]
    Synthesis(#[from] SynthesisError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Data(#[from] DataFileError),
}

/// Files written by [`run_experiment`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunFiles {
    pub records: PathBuf,
    pub report_json: PathBuf,
    pub report_text: PathBuf,
}

/// The registry for a config: built-in entries plus the configured extras.
pub fn registry_for(cfg: &ExperimentConfig) -> Result<Registry, HarnessError> {
    let mut reg = Registry::builtin();
    if let Some(path) = &cfg.registry {
        reg.extend_from_file(path)?;
    }
    Ok(reg)
}

/// Runs the configured evaluation end to end and writes `records.jsonl`,
/// `report.json` and `report.txt` (plus `prompts.jsonl` on a dry run and
/// `judge_prompts.jsonl` when requested) into `out_dir`. When LID seeds are
/// configured the confusion matrix is added to the report.
pub fn run_experiment(
    cfg: &ExperimentConfig,
    backends: &Backends,
    registry: &Registry,
    out_dir: &Path,
    opts: RunOptions,
) -> Result<RunFiles, HarnessError> {
    cfg.validate(registry)?;
    let client = backends.get(&cfg.backend_id)?;
    let mut out = if cfg.is_translation() {
        run_translation_eval(cfg, client, registry, opts)?
    } else {
        run_summarization_eval(cfg, client, registry, opts)?
    };
    let files = RunFiles {
        records: out_dir.join("records.jsonl"),
        report_json: out_dir.join("report.json"),
        report_text: out_dir.join("report.txt"),
    };
    if opts.dry_run {
        write_jsonl(&out_dir.join("prompts.jsonl"), &out.records)?;
    }
    let confusion = if !opts.dry_run && !cfg.paths.lid_seeds.is_empty() {
        let model = train_lid(cfg)?;
        Some(language_confusion_analysis(&mut out.records, &model)?)
    } else {
        None
    };
    let mut rep = report(&out.records, &out.scores, cfg);
    rep.confusion = confusion;
    if opts.dry_run {
        rep.flags.push("dry run: prompts rendered, nothing generated or scored".to_owned());
    }
    write_jsonl(&files.records, &out.records)?;
    write_text(&files.report_json, &rep.to_json())?;
    write_text(&files.report_text, &rep.to_text())?;
    if !out.judge_prompts.is_empty() {
        write_jsonl(&out_dir.join("judge_prompts.jsonl"), &out.judge_prompts)?;
    }
    Ok(files)
}

/// Loads a config, builds its backends (cache under `cache_dir` when set)
/// and runs it.
pub fn run_config_file(path: &Path, out_dir: Option<&Path>, opts: RunOptions) -> Result<RunFiles, HarnessError> {
    let cfg = ExperimentConfig::load(path)?;
    let registry = registry_for(&cfg)?;
    let backends = Backends::from_configs(&cfg.backends, &registry, cfg.cache_dir.as_deref())?;
    let out_dir = out_dir
        .map(Path::to_path_buf)
        .or_else(|| cfg.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    run_experiment(&cfg, &backends, &registry, &out_dir, opts)
}
