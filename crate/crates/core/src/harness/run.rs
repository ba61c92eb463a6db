use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Method, Task, MAX_SUMMARY_DOC_CHARS};
use super::data::{load_test_set, TestItem};
use super::HarnessError;
use crate::backend::{
    CacheKey, Client, GenerationRequest, GenerationResult, DEFAULT_MAX_TOKENS_SUMMARY,
    DEFAULT_MAX_TOKENS_TRANSLATION,
};
use crate::corpus::{filter_corpus, read_corpus, sample_lines, CorpusLine, FilterRules};
use crate::jsonl::read_jsonl;
use crate::lang::{Registry, PIVOT};
use crate::metrics::{
    bleu, chrf_pp, confusion_matrix, lid_train, rouge_l, rouge_l_corpus, sentence_bleu,
    sentence_chrf_pp, ConfusionMatrix, LidConfig, LidModel, MetricError, Tokenizer, DEFAULT_FLOOR, OTHER,
};
use crate::prompt::{
    build_basic_sum_prompt, build_e2x_prompt, build_judge_prompt, build_pair_prompt, build_pivot_prompt,
    build_sum_prompt, build_x2e_prompt, build_xlt_sum_prompt, default_ldp_exemplars, parse_marked,
    parse_pivot_completion, parse_translation, DocSumExemplar, Exemplar, PromptText, Provenance,
    DEFAULT_XLT_TEMPLATE, XLT_MARKER,
};
use crate::synthesis::{
    build_intra_exemplars, synthesize_sum_exemplars, synthesize_triplets, synthesize_x2e, Direction,
    SynthesisError, TripletOptions,
};

/// One evaluated test item.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    /// Position within the language's sampled subset.
    pub id: usize,
    /// The language the test set belongs to.
    pub lang: String,
    pub source: String,
    pub reference: String,
    pub hypothesis: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intermediate_en: Option<String>,
    pub intended_lang: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_lang: Option<String>,
    #[serde(default)]
    pub metrics: BTreeMap<String, f64>,
    pub prompt_digest: String,
    /// Set when generation or parsing failed; the hypothesis is then empty.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Rendered prompt, kept in dry runs only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prompt: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LanguageScores {
    pub segments: usize,
    pub failures: usize,
    pub scores: BTreeMap<String, f64>,
}

/// Corpus-level scores keyed by language.
pub type RunScores = BTreeMap<String, LanguageScores>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JudgePrompt {
    pub lang: String,
    pub id: usize,
    pub prompt: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOutput {
    pub records: Vec<EvalRecord>,
    pub scores: RunScores,
    pub judge_prompts: Vec<JudgePrompt>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Render prompts without generating test-item completions. Exemplar
    /// synthesis still runs because the prompts depend on it.
    pub dry_run: bool,
}

fn sample<T: Clone>(items: &[T], n: usize, seed: u64) -> Result<Vec<T>, HarnessError> {
    Ok(sample_lines(items, n.min(items.len()), seed)?)
}

fn ldp_seeds(cfg: &ExperimentConfig) -> Result<Vec<Exemplar>, HarnessError> {
    let all = match &cfg.paths.ldp_exemplars {
        Some(path) => read_jsonl::<Exemplar>(path)?,
        None => default_ldp_exemplars(),
    };
    Ok(all
        .into_iter()
        .filter(|e| e.tgt_lang == PIVOT && cfg.ldp_set.contains(&e.src_lang))
        .take(cfg.shots())
        .collect())
}

fn unlabeled(cfg: &ExperimentConfig, lang: &str, registry: &Registry) -> Result<Vec<CorpusLine>, HarnessError> {
    let path = cfg
        .paths
        .unlabeled
        .get(lang)
        .ok_or_else(|| crate::corpus::CorpusError::MissingCorpus(lang.to_owned()))?;
    let lines = read_corpus(path, lang, &path.display().to_string())?;
    if !cfg.filter_unlabeled {
        return Ok(lines);
    }
    let (kept, report) = filter_corpus(&lines, registry.get(lang)?, &FilterRules::default());
    log::info!("{lang}: kept {} of {} unlabeled lines", report.accepted, report.total);
    Ok(kept)
}

fn bt_pairs_exemplars(
    cfg: &ExperimentConfig,
    lang: &str,
    direction: Direction,
    client: &Client,
    registry: &Registry,
) -> Result<Vec<Exemplar>, HarnessError> {
    let corpus = unlabeled(cfg, lang, registry)?;
    let pool = sample(&corpus, cfg.bt_pool(), cfg.seed)?;
    let pairs = synthesize_x2e(&pool, &ldp_seeds(cfg)?, client, cfg.tag_style(), registry)?;
    Ok(build_intra_exemplars(&pairs, direction, cfg.shots(), cfg.seed)?)
}

fn supervised_exemplars(cfg: &ExperimentConfig, lang: &str) -> Result<Vec<Exemplar>, HarnessError> {
    let path = &cfg.paths.exemplar_pools[lang];
    let pool: Vec<Exemplar> = read_jsonl::<TestItem>(path)?
        .into_iter()
        .map(|p| Exemplar::new(lang, &p.source, PIVOT, &p.reference, Provenance::Supervised))
        .collect();
    Ok(sample_lines(&pool, cfg.shots(), cfg.seed)?)
}

struct Plan {
    prompts: Vec<PromptText>,
    intended: String,
    max_tokens: u32,
    parse: Parse,
}

enum Parse {
    Line,
    Pivot(String),
    Marked(&'static str),
}

fn translation_plan(
    cfg: &ExperimentConfig,
    lang: &str,
    items: &[TestItem],
    client: &Client,
    registry: &Registry,
) -> Result<Plan, HarnessError> {
    let style = cfg.tag_style();
    let mut prompts = Vec::with_capacity(items.len());
    let intended;
    let mut parse = Parse::Line;
    match cfg.task {
        Task::X2e => {
            intended = PIVOT.to_owned();
            let ex = match cfg.method {
                Method::Supervised => supervised_exemplars(cfg, lang)?,
                Method::Ldp => ldp_seeds(cfg)?,
                Method::LdpBt => bt_pairs_exemplars(cfg, lang, Direction::X2e, client, registry)?,
                _ => Vec::new(),
            };
            for it in items {
                prompts.push(build_x2e_prompt(&ex, &it.source, lang, style, registry)?);
            }
        }
        Task::E2x => {
            intended = lang.to_owned();
            let mixed = cfg.method == Method::Ldp;
            let ex: Vec<Exemplar> = match cfg.method {
                Method::Supervised => supervised_exemplars(cfg, lang)?.iter().map(Exemplar::reversed).collect(),
                Method::Ldp => ldp_seeds(cfg)?.iter().map(Exemplar::reversed).collect(),
                Method::LdpBt => bt_pairs_exemplars(cfg, lang, Direction::E2x, client, registry)?,
                _ => Vec::new(),
            };
            for it in items {
                prompts.push(if mixed {
                    // Reversed LDP exemplars have a different target language each.
                    build_pair_prompt(&ex, &it.source, PIVOT, lang, style, registry)?
                } else {
                    build_e2x_prompt(&ex, &it.source, lang, style, registry)?
                });
            }
        }
        Task::X2y => {
            let target = cfg.target.clone().expect("validated");
            let corpus_x = unlabeled(cfg, lang, registry)?;
            let corpus_y = unlabeled(cfg, &target, registry)?;
            let opts = TripletOptions {
                m_bt: cfg.shots(),
                count: cfg.triplets,
                pool_lines: cfg.bt_pool(),
                style,
                seed: cfg.seed,
            };
            let run = synthesize_triplets(&corpus_x, Some(&corpus_y), &ldp_seeds(cfg)?, client, &target, &opts, registry)?;
            if run.triplets.len() < cfg.triplets {
                log::warn!("{lang}->{target}: {} of {} triplets built", run.triplets.len(), cfg.triplets);
            }
            for it in items {
                prompts.push(build_pivot_prompt(&run.triplets, &it.source, lang, &target, registry)?);
            }
            parse = Parse::Pivot(target.clone());
            intended = target;
        }
        Task::Summarize => unreachable!("summarization has its own plan"),
    }
    Ok(Plan {
        prompts,
        intended,
        max_tokens: DEFAULT_MAX_TOKENS_TRANSLATION,
        parse,
    })
}

fn summary_plan(
    cfg: &ExperimentConfig,
    lang: &str,
    items: &[TestItem],
    client: &Client,
    registry: &Registry,
) -> Result<Plan, HarnessError> {
    let cross = || -> Result<Vec<DocSumExemplar>, HarnessError> {
        match &cfg.paths.cross_exemplars {
            Some(p) => Ok(read_jsonl(p)?),
            None => Ok(Vec::new()),
        }
    };
    let mut parse = Parse::Marked("Summary:");
    let prompts = match cfg.method {
        Method::Basic => items
            .iter()
            .map(|it| build_basic_sum_prompt(&it.source, lang, registry))
            .collect::<Result<Vec<_>, _>>()?,
        Method::Xlt => {
            parse = Parse::Marked(XLT_MARKER);
            items
                .iter()
                .map(|it| build_xlt_sum_prompt(&it.source, lang, DEFAULT_XLT_TEMPLATE, registry))
                .collect::<Result<Vec<_>, _>>()?
        }
        Method::LdpSum => {
            let ex = sample_lines(&cross()?, cfg.shots(), cfg.seed)?;
            items
                .iter()
                .map(|it| build_sum_prompt(&ex, &it.source, lang, registry))
                .collect::<Result<Vec<_>, _>>()?
        }
        Method::LdpSumUnlabeled => {
            let docs: Vec<String> = unlabeled_docs(cfg, lang)?;
            let docs = sample(&docs, cfg.shots(), cfg.seed)?;
            let ex = synthesize_sum_exemplars(&docs, lang, &cross()?, client, cfg.shots(), registry)?;
            if ex.len() < cfg.shots() {
                return Err(SynthesisError::NotEnoughPairs { needed: cfg.shots(), usable: ex.len() }.into());
            }
            items
                .iter()
                .map(|it| build_sum_prompt(&ex, &it.source, lang, registry))
                .collect::<Result<Vec<_>, _>>()?
        }
        other => return Err(HarnessError::Config(format!("`{}` is not a summarization method", other.name()))),
    };
    Ok(Plan {
        prompts,
        intended: lang.to_owned(),
        max_tokens: DEFAULT_MAX_TOKENS_SUMMARY,
        parse,
    })
}

fn unlabeled_docs(cfg: &ExperimentConfig, lang: &str) -> Result<Vec<String>, HarnessError> {
    let path = cfg
        .paths
        .unlabeled
        .get(lang)
        .ok_or_else(|| crate::corpus::CorpusError::MissingCorpus(lang.to_owned()))?;
    Ok(read_corpus(path, lang, "")?
        .into_iter()
        .map(|l| l.text)
        .filter(|d| short_doc(d))
        .collect())
}

fn short_doc(doc: &str) -> bool {
    doc.chars().count() < MAX_SUMMARY_DOC_CHARS
}

fn parse_hypothesis(
    parse: &Parse,
    res: &GenerationResult,
    req: &GenerationRequest,
    registry: &Registry,
) -> (String, Option<String>, Option<String>) {
    if let Some(err) = &res.error {
        return (String::new(), None, Some(err.clone()));
    }
    match parse {
        Parse::Line => (parse_translation(&res.text, &req.stop).text, None, None),
        Parse::Marked(marker) => (parse_marked(&res.text, marker, &req.stop).text, None, None),
        Parse::Pivot(tgt) => match parse_pivot_completion(&res.text, tgt, registry) {
            Ok((en, y)) => (y, Some(en), None),
            Err(e) => (String::new(), None, Some(e.to_string())),
        },
    }
}

fn segment_metrics(metrics: &[String], hyp: &str, reference: &str, tok: &Tokenizer) -> BTreeMap<String, f64> {
    metrics
        .iter()
        .map(|m| {
            let v = match m.as_str() {
                "chrf++" => sentence_chrf_pp(hyp, reference),
                "bleu" => sentence_bleu(hyp, reference, tok),
                _ => rouge_l::<f64>(hyp, reference, tok).f,
            };
            (m.clone(), v)
        })
        .collect()
}

/// Corpus-level scores for one system output under the named metrics.
pub fn corpus_scores<S: AsRef<str>>(
    metrics: &[String],
    hyps: &[S],
    refs: &[S],
    tok: &Tokenizer,
) -> Result<BTreeMap<String, f64>, HarnessError> {
    let mut out = BTreeMap::new();
    for m in metrics {
        let v = match m.as_str() {
            "chrf++" => chrf_pp::<f64, _>(hyps, refs)?.value,
            "bleu" => bleu::<f64, _>(hyps, refs, tok)?.value,
            "rouge-l" => rouge_l_corpus::<f64, _>(hyps, refs, tok)?.value,
            other => return Err(HarnessError::Config(format!("unknown metric `{other}`"))),
        };
        out.insert(m.clone(), v);
    }
    Ok(out)
}

fn language_scores(metrics: &[String], mine: &[&EvalRecord], tok: &Tokenizer) -> Result<LanguageScores, HarnessError> {
    let hyps: Vec<&str> = mine.iter().map(|r| r.hypothesis.as_str()).collect();
    let refs: Vec<&str> = mine.iter().map(|r| r.reference.as_str()).collect();
    Ok(LanguageScores {
        segments: mine.len(),
        failures: mine.iter().filter(|r| r.error.is_some()).count(),
        scores: if mine.is_empty() {
            BTreeMap::new()
        } else {
            corpus_scores(metrics, &hyps, &refs, tok)?
        },
    })
}

/// Re-scores saved records per configured language.
pub fn score_records(records: &[EvalRecord], cfg: &ExperimentConfig) -> Result<RunScores, HarnessError> {
    let tok = Tokenizer::from_name(&cfg.bleu_tokenizer)?;
    let metrics = cfg.metrics();
    let mut out = RunScores::new();
    for lang in &cfg.languages {
        let mine: Vec<&EvalRecord> = records.iter().filter(|r| &r.lang == lang).collect();
        out.insert(lang.clone(), language_scores(&metrics, &mine, &tok)?);
    }
    Ok(out)
}

fn run_eval(
    cfg: &ExperimentConfig,
    client: &Client,
    registry: &Registry,
    opts: RunOptions,
) -> Result<RunOutput, HarnessError> {
    cfg.validate(registry)?;
    let tok = Tokenizer::from_name(&cfg.bleu_tokenizer)?;
    let metrics = cfg.metrics();
    let mut out = RunOutput::default();
    for lang in &cfg.languages {
        let mut items = load_test_set(&cfg.paths.test_sets[lang])?;
        if !cfg.is_translation() {
            items.retain(|it| short_doc(&it.source));
        }
        let items = sample(&items, cfg.sample_size(), cfg.seed)?;
        let plan = if cfg.is_translation() {
            translation_plan(cfg, lang, &items, client, registry)?
        } else {
            summary_plan(cfg, lang, &items, client, registry)?
        };
        let reqs: Vec<GenerationRequest> = plan.prompts.iter().map(|p| client.request(p, plan.max_tokens)).collect();
        let results = if opts.dry_run {
            None
        } else {
            Some(client.generate_batch(&reqs, client.parallelism()))
        };
        let start = out.records.len();
        for (id, (item, req)) in items.iter().zip(&reqs).enumerate() {
            let mut rec = EvalRecord {
                id,
                lang: lang.clone(),
                source: item.source.clone(),
                reference: item.reference.clone(),
                hypothesis: String::new(),
                intermediate_en: None,
                intended_lang: plan.intended.clone(),
                predicted_lang: None,
                metrics: BTreeMap::new(),
                prompt_digest: CacheKey::of(req).to_string(),
                error: None,
                prompt: None,
            };
            match &results {
                None => rec.prompt = Some(req.prompt.clone()),
                Some(results) => {
                    let (hyp, en, err) = parse_hypothesis(&plan.parse, &results[id], req, registry);
                    if let Some(e) = &err {
                        log::warn!("{lang} item {id}: {e}");
                    }
                    rec.metrics = segment_metrics(&metrics, &hyp, &item.reference, &tok);
                    rec.hypothesis = hyp;
                    rec.intermediate_en = en;
                    rec.error = err;
                }
            }
            out.records.push(rec);
        }
        if opts.dry_run {
            continue;
        }
        let mine: Vec<&EvalRecord> = out.records[start..].iter().collect();
        out.scores.insert(lang.clone(), language_scores(&metrics, &mine, &tok)?);
        if cfg.judge_prompts && !cfg.is_translation() {
            for r in &mine {
                out.judge_prompts.push(JudgePrompt {
                    lang: lang.clone(),
                    id: r.id,
                    prompt: build_judge_prompt(&r.source, &r.hypothesis, lang, registry)?.text,
                });
            }
        }
    }
    Ok(out)
}

/// Translation evaluation (x2e, e2x or x2y). Failed items stay in the
/// output as empty hypotheses so that method comparisons remain paired.
pub fn run_translation_eval(
    cfg: &ExperimentConfig,
    client: &Client,
    registry: &Registry,
    opts: RunOptions,
) -> Result<RunOutput, HarnessError> {
    if !cfg.is_translation() {
        return Err(HarnessError::Config("task is summarize; use the summarization run".into()));
    }
    run_eval(cfg, client, registry, opts)
}

/// Summarization evaluation. Test documents of 1500 characters or more are
/// dropped before sampling.
pub fn run_summarization_eval(
    cfg: &ExperimentConfig,
    client: &Client,
    registry: &Registry,
    opts: RunOptions,
) -> Result<RunOutput, HarnessError> {
    if cfg.is_translation() {
        return Err(HarnessError::Config("task is a translation task".into()));
    }
    run_eval(cfg, client, registry, opts)
}

/// Trains the language identifier on the configured seed files.
pub fn train_lid(cfg: &ExperimentConfig) -> Result<LidModel, HarnessError> {
    let mut seeds = BTreeMap::new();
    for (lang, path) in &cfg.paths.lid_seeds {
        let lines: Vec<String> = read_corpus(path, lang, "")?.into_iter().map(|l| l.text).collect();
        seeds.insert(lang.clone(), lines);
    }
    let config = LidConfig {
        floor: Some(cfg.lid_floor.unwrap_or(DEFAULT_FLOOR)),
        ..LidConfig::default()
    };
    Ok(lid_train(&seeds, &config)?)
}

/// Labels every hypothesis with its identified language and tallies intended
/// against predicted. Empty hypotheses count as "##".
pub fn language_confusion_analysis(
    records: &mut [EvalRecord],
    model: &LidModel,
) -> Result<ConfusionMatrix, MetricError> {
    let candidates: Vec<String> = model.candidates().into_iter().map(str::to_owned).collect();
    let mut pairs = Vec::with_capacity(records.len());
    for r in records.iter_mut() {
        if !candidates.contains(&r.intended_lang) {
            return Err(MetricError::UnknownLanguage(r.intended_lang.clone()));
        }
        let predicted = if r.hypothesis.trim().is_empty() {
            OTHER.to_owned()
        } else {
            model.classify(&r.hypothesis)?
        };
        r.predicted_lang = Some(predicted.clone());
        pairs.push((r.intended_lang.clone(), predicted));
    }
    confusion_matrix(&pairs, &candidates)
}
