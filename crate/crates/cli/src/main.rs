use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use ldp_core::backend::Backends;
use ldp_core::corpus::{
    draw_mixture, filter_corpus, mixture_weights, read_corpus, sample_lines, write_corpus, CorpusFormat,
    FilterRules,
};
use ldp_core::harness::{
    corpus_scores, language_confusion_analysis, report, run_experiment, score_records, train_lid, BackendSettings,
    EvalRecord, ExperimentConfig, Prediction, RunOptions, Task,
};
use ldp_core::jsonl::{read_jsonl, read_text, write_jsonl, write_text};
use ldp_core::lang::Registry;
use ldp_core::metrics::{fragmentation_ratio, lid_train, LidConfig, Tokenizer, DEFAULT_FLOOR};
use ldp_core::prompt::{default_ldp_exemplars, DocSumExemplar, Exemplar, TagStyle};
use ldp_core::synthesis::{
    export_finetune, synthesize_sum_exemplars, synthesize_triplets, synthesize_x2e, Direction, SyntheticPair,
    TripletOptions,
};

#[derive(Parser)]
#[command(name = "ldp", version, about = "Prompting, synthesis and evaluation for low-resource translation")]
struct Cli {
    /// Experiment config (TOML). Synthesis commands read only its backends.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Backend id, overriding the config.
    #[arg(long, global = true)]
    backend: Option<String>,
    /// Seed, overriding the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Render prompts without generating.
    #[arg(long, global = true)]
    dry_run: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Clean an unlabeled corpus.
    Filter {
        #[arg(long)]
        lang: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
    /// Temperature-smoothed sampling weights; optionally draw a mixture.
    Weights {
        #[arg(long, default_value_t = 25.0)]
        temperature: f64,
        /// Lines of `<lang> <size>`.
        #[arg(long)]
        sizes: PathBuf,
        /// Draw this many lines from the corpora given with --corpus.
        #[arg(long, requires = "out")]
        draw: Option<usize>,
        /// `<lang>=<path>`, repeatable.
        #[arg(long = "corpus", value_parser = parse_kv)]
        corpora: Vec<(String, PathBuf)>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Back-translate unlabeled X lines into English.
    SynthX2e(SynthX2eArgs),
    /// Build X/En/Y pivot triplets from unlabeled X text.
    SynthPivot(SynthPivotArgs),
    /// Synthesize intra-lingual summarization exemplars.
    SynthSum(SynthSumArgs),
    /// Render synthetic pairs as fine-tuning records.
    ExportFinetune(ExportArgs),
    /// Run a translation experiment.
    Translate(RunArgs),
    /// Run a summarization experiment.
    Summarize(RunArgs),
    /// Score a predictions file of {hypothesis, reference, lang}.
    Evaluate {
        #[arg(long)]
        predictions: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "chrf++,bleu")]
        metrics: Vec<String>,
        #[arg(long, default_value = "punct")]
        tokenizer: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild the report from a records file.
    Report {
        #[arg(long)]
        records: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Language identification and confusion matrix for a records file.
    LidReport {
        #[arg(long)]
        records: PathBuf,
        /// `<lang>=<path>`, repeatable; defaults to the config's lid_seeds.
        #[arg(long = "seeds", value_parser = parse_kv)]
        seeds: Vec<(String, PathBuf)>,
        #[arg(long)]
        floor: Option<f64>,
        /// Write the labeled records here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Token fragmentation ratio of X text against its English side.
    FragReport {
        /// JSONL with x_text/en_text (or source/reference) per line.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "punct")]
        tokenizer_x: String,
        #[arg(long, default_value = "punct")]
        tokenizer_en: String,
    },
}

#[derive(Args)]
struct SynthX2eArgs {
    #[arg(long)]
    lang: String,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Lines to back-translate, sampled with the seed; all lines when absent.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value_t = Style::None)]
    tag_style: Style,
    /// LDP exemplars (JSONL); the built-in set when absent.
    #[arg(long)]
    exemplars: Option<PathBuf>,
}

#[derive(Args)]
struct SynthPivotArgs {
    #[arg(long)]
    lang: String,
    #[arg(long)]
    target: String,
    #[arg(long = "in")]
    input: PathBuf,
    /// Unlabeled target-language text for the En->Y exemplar pool.
    #[arg(long)]
    target_in: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Back-translated exemplars per hop prompt.
    #[arg(long, default_value_t = 8)]
    m: usize,
    #[arg(long, default_value_t = 8)]
    count: usize,
    #[arg(long)]
    exemplars: Option<PathBuf>,
}

#[derive(Args)]
struct SynthSumArgs {
    #[arg(long)]
    lang: String,
    /// Unlabeled documents, one per line.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Cross-lingual document/summary exemplars (JSONL); the English-pivoting
    /// instruction is used when absent.
    #[arg(long)]
    cross: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Keep only pairs of this language.
    #[arg(long)]
    lang: Option<String>,
    /// Keep at most this many pairs, sampled with the seed.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "x2e,e2x")]
    directions: Vec<Direction>,
}

#[derive(Args)]
struct RunArgs {
    /// Output directory; defaults to the config's out_dir.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Style {
    English,
    Native,
    None,
}

impl From<Style> for TagStyle {
    fn from(s: Style) -> Self {
        match s {
            Style::English => TagStyle::EnglishTag,
            Style::Native => TagStyle::NativeTag,
            Style::None => TagStyle::NoTag,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_kv(s: &str) -> Result<(String, PathBuf), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected <lang>=<path>, got `{s}`"))?;
    Ok((k.to_owned(), PathBuf::from(v)))
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Filter { lang, input, out, report } => filter(&cli, lang, input, out, report),
        Command::Weights { temperature, sizes, draw, corpora, out } => {
            weights(&cli, *temperature, sizes, *draw, corpora, out.as_deref())
        }
        Command::SynthX2e(a) => synth_x2e(&cli, a),
        Command::SynthPivot(a) => synth_pivot(&cli, a),
        Command::SynthSum(a) => synth_sum(&cli, a),
        Command::ExportFinetune(a) => export(&cli, a),
        Command::Translate(a) => experiment(&cli, a, true),
        Command::Summarize(a) => experiment(&cli, a, false),
        Command::Evaluate { predictions, metrics, tokenizer, out } => evaluate(predictions, metrics, tokenizer, out.as_deref()),
        Command::Report { records, format } => rebuild_report(&cli, records, *format),
        Command::LidReport { records, seeds, floor, out, format } => {
            lid_report(&cli, records, seeds, *floor, out.as_deref(), *format)
        }
        Command::FragReport { input, tokenizer_x, tokenizer_en } => frag_report(input, tokenizer_x, tokenizer_en),
    }
}

fn registry(settings: Option<&BackendSettings>) -> Result<Registry> {
    let mut reg = Registry::builtin();
    if let Some(path) = settings.and_then(|s| s.registry.as_ref()) {
        reg.extend_from_file(path)?;
    }
    Ok(reg)
}

fn settings(cli: &Cli) -> Result<Option<BackendSettings>> {
    cli.config.as_deref().map(BackendSettings::load).transpose().map_err(Into::into)
}

fn experiment_config(cli: &Cli) -> Result<ExperimentConfig> {
    let path = cli.config.as_deref().context("--config is required")?;
    let mut cfg = ExperimentConfig::load(path)?;
    if let Some(b) = &cli.backend {
        cfg.backend_id = b.clone();
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn filter(cli: &Cli, lang: &str, input: &Path, out: &Path, report_path: &Path) -> Result<()> {
    let reg = registry(settings(cli)?.as_ref())?;
    let spec = reg.get(lang)?;
    let lines = read_corpus(input, lang, &input.display().to_string())?;
    let (kept, rep) = filter_corpus(&lines, spec, &FilterRules::default());
    write_corpus(out, &kept, CorpusFormat::from_path(out))?;
    write_text(report_path, &(serde_json::to_string_pretty(&rep)? + "\n"))?;
    eprintln!("{lang}: kept {} of {} lines", rep.accepted, rep.total);
    Ok(())
}

fn read_sizes(path: &Path) -> Result<Vec<(String, u64)>> {
    let mut sizes = Vec::new();
    for (i, line) in read_text(path)?.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(lang), Some(n), None) = (parts.next(), parts.next(), parts.next()) else {
            bail!("{}:{}: expected `<lang> <size>`", path.display(), i + 1);
        };
        let n = n.parse().with_context(|| format!("{}:{}: bad size", path.display(), i + 1))?;
        sizes.push((lang.to_owned(), n));
    }
    Ok(sizes)
}

fn weights(
    cli: &Cli,
    temperature: f64,
    sizes: &Path,
    draw: Option<usize>,
    corpora: &[(String, PathBuf)],
    out: Option<&Path>,
) -> Result<()> {
    let w = mixture_weights::<f64>(&read_sizes(sizes)?, temperature)?;
    print_json(&w)?;
    if let (Some(n), Some(out)) = (draw, out) {
        let mut lines = BTreeMap::new();
        for (lang, path) in corpora {
            lines.insert(lang.clone(), read_corpus(path, lang, &path.display().to_string())?);
        }
        let drawn = draw_mixture(&w, &lines, n, cli.seed.unwrap_or(0))?;
        write_corpus(out, &drawn, CorpusFormat::from_path(out))?;
    }
    Ok(())
}

struct Synth {
    backends: Backends,
    backend_id: String,
    registry: Registry,
}

fn synth_setup(cli: &Cli) -> Result<Synth> {
    let settings = settings(cli)?.context("--config with a backends table is required")?;
    let registry = registry(Some(&settings))?;
    let backends = Backends::from_configs(&settings.backends, &registry, settings.cache_dir.as_deref())?;
    let backend_id = settings.pick(cli.backend.as_deref())?;
    Ok(Synth { backends, backend_id, registry })
}

fn seed_exemplars(path: Option<&Path>) -> Result<Vec<Exemplar>> {
    Ok(match path {
        Some(p) => read_jsonl(p)?,
        None => default_ldp_exemplars(),
    })
}

fn synth_x2e(cli: &Cli, a: &SynthX2eArgs) -> Result<()> {
    let s = synth_setup(cli)?;
    let mut corpus = read_corpus(&a.input, &a.lang, &a.input.display().to_string())?;
    if let Some(m) = a.m {
        corpus = sample_lines(&corpus, m.min(corpus.len()), cli.seed.unwrap_or(0))?;
    }
    let client = s.backends.get(&s.backend_id)?;
    let pairs = synthesize_x2e(&corpus, &seed_exemplars(a.exemplars.as_deref())?, client, a.tag_style.into(), &s.registry)?;
    let flagged = pairs.iter().filter(|p| !p.is_usable()).count();
    write_jsonl(&a.out, &pairs)?;
    eprintln!("{}: {} pairs, {flagged} flagged", a.lang, pairs.len());
    Ok(())
}

fn synth_pivot(cli: &Cli, a: &SynthPivotArgs) -> Result<()> {
    let s = synth_setup(cli)?;
    let corpus_x = read_corpus(&a.input, &a.lang, &a.input.display().to_string())?;
    let corpus_y = match &a.target_in {
        Some(p) => Some(read_corpus(p, &a.target, &p.display().to_string())?),
        None => None,
    };
    let opts = TripletOptions {
        m_bt: a.m,
        count: a.count,
        seed: cli.seed.unwrap_or(0),
        ..TripletOptions::default()
    };
    let client = s.backends.get(&s.backend_id)?;
    let run = synthesize_triplets(
        &corpus_x,
        corpus_y.as_deref(),
        &seed_exemplars(a.exemplars.as_deref())?,
        client,
        &a.target,
        &opts,
        &s.registry,
    )?;
    write_jsonl(&a.out, &run.triplets)?;
    eprintln!("{}->{}: {} triplets, {} dropped", a.lang, a.target, run.triplets.len(), run.dropped.len());
    Ok(())
}

fn synth_sum(cli: &Cli, a: &SynthSumArgs) -> Result<()> {
    let s = synth_setup(cli)?;
    let docs: Vec<String> = read_corpus(&a.input, &a.lang, "")?.into_iter().map(|l| l.text).collect();
    let docs = sample_lines(&docs, a.m.min(docs.len()), cli.seed.unwrap_or(0))?;
    let cross: Vec<DocSumExemplar> = match &a.cross {
        Some(p) => read_jsonl(p)?,
        None => Vec::new(),
    };
    let client = s.backends.get(&s.backend_id)?;
    let ex = synthesize_sum_exemplars(&docs, &a.lang, &cross, client, a.m, &s.registry)?;
    write_jsonl(&a.out, &ex)?;
    eprintln!("{}: {} of {} exemplars", a.lang, ex.len(), a.m);
    Ok(())
}

fn export(cli: &Cli, a: &ExportArgs) -> Result<()> {
    let reg = registry(settings(cli)?.as_ref())?;
    let mut pairs: Vec<SyntheticPair> = read_jsonl(&a.input)?;
    if let Some(lang) = &a.lang {
        pairs.retain(|p| &p.x_lang == lang);
    }
    if let Some(m) = a.m {
        pairs = sample_lines(&pairs, m.min(pairs.len()), cli.seed.unwrap_or(0))?;
    }
    let records = export_finetune(&pairs, &a.directions, &reg)?;
    write_jsonl(&a.out, &records)?;
    eprintln!("{} records from {} pairs", records.len(), pairs.len());
    Ok(())
}

fn experiment(cli: &Cli, a: &RunArgs, translation: bool) -> Result<()> {
    let cfg = experiment_config(cli)?;
    if cfg.is_translation() != translation {
        bail!(
            "config task is {}; use `{}`",
            cfg.task.name(),
            if cfg.task == Task::Summarize { "summarize" } else { "translate" }
        );
    }
    let reg = ldp_core::harness::registry_for(&cfg)?;
    let backends = Backends::from_configs(&cfg.backends, &reg, cfg.cache_dir.as_deref())?;
    let out = a
        .out
        .clone()
        .or_else(|| cfg.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    let files = run_experiment(&cfg, &backends, &reg, &out, RunOptions { dry_run: cli.dry_run })?;
    print!("{}", read_text(&files.report_text)?);
    Ok(())
}

#[derive(Serialize)]
struct EvalRow {
    lang: String,
    segments: usize,
    scores: BTreeMap<String, f64>,
}

fn evaluate(predictions: &Path, metrics: &[String], tokenizer: &str, out: Option<&Path>) -> Result<()> {
    let preds: Vec<Prediction> = read_jsonl(predictions)?;
    let tok = Tokenizer::from_name(tokenizer)?;
    let mut by_lang: BTreeMap<&str, (Vec<&str>, Vec<&str>)> = BTreeMap::new();
    for p in &preds {
        let e = by_lang.entry(&p.lang).or_default();
        e.0.push(&p.hypothesis);
        e.1.push(&p.reference);
    }
    let mut rows = Vec::new();
    for (lang, (hyps, refs)) in by_lang {
        rows.push(EvalRow {
            lang: lang.to_owned(),
            segments: hyps.len(),
            scores: corpus_scores(metrics, &hyps, &refs, &tok)?,
        });
    }
    let json = serde_json::to_string_pretty(&rows)? + "\n";
    match out {
        Some(p) => write_text(p, &json)?,
        None => print!("{json}"),
    }
    Ok(())
}

fn rebuild_report(cli: &Cli, records: &Path, format: Format) -> Result<()> {
    let cfg = experiment_config(cli)?;
    let recs: Vec<EvalRecord> = read_jsonl(records)?;
    let scores = score_records(&recs, &cfg)?;
    let rep = report(&recs, &scores, &cfg);
    match format {
        Format::Json => print!("{}", rep.to_json()),
        Format::Text => print!("{}", rep.to_text()),
    }
    Ok(())
}

fn lid_report(
    cli: &Cli,
    records: &Path,
    seeds: &[(String, PathBuf)],
    floor: Option<f64>,
    out: Option<&Path>,
    format: Format,
) -> Result<()> {
    let model = if seeds.is_empty() {
        let mut cfg = experiment_config(cli)?;
        if floor.is_some() {
            cfg.lid_floor = floor;
        }
        train_lid(&cfg)?
    } else {
        let mut lines = BTreeMap::new();
        for (lang, path) in seeds {
            let text: Vec<String> = read_corpus(path, lang, "")?.into_iter().map(|l| l.text).collect();
            lines.insert(lang.clone(), text);
        }
        let config = LidConfig {
            floor: Some(floor.unwrap_or(DEFAULT_FLOOR)),
            ..LidConfig::default()
        };
        lid_train(&lines, &config)?
    };
    let mut recs = read_lid_records(records)?;
    let matrix = language_confusion_analysis(&mut recs, &model)?;
    if let Some(p) = out {
        write_jsonl(p, &recs)?;
    }
    match format {
        Format::Json => print_json(&matrix)?,
        Format::Text => print!("{matrix}"),
    }
    Ok(())
}

/// Either harness records or plain predictions, whose `lang` is the intended language.
#[derive(Deserialize)]
struct LidInput {
    hypothesis: String,
    #[serde(default)]
    reference: String,
    #[serde(default)]
    lang: String,
    #[serde(default)]
    intended_lang: Option<String>,
}

fn read_lid_records(path: &Path) -> Result<Vec<EvalRecord>> {
    let rows: Vec<LidInput> = read_jsonl(path)?;
    Ok(rows
        .into_iter()
        .enumerate()
        .map(|(id, r)| EvalRecord {
            id,
            intended_lang: r.intended_lang.unwrap_or_else(|| r.lang.clone()),
            lang: r.lang,
            source: String::new(),
            reference: r.reference,
            hypothesis: r.hypothesis,
            intermediate_en: None,
            predicted_lang: None,
            metrics: BTreeMap::new(),
            prompt_digest: String::new(),
            error: None,
            prompt: None,
        })
        .collect())
}

#[derive(Deserialize)]
struct FragPair {
    #[serde(alias = "source")]
    x_text: String,
    #[serde(alias = "reference")]
    en_text: String,
    #[serde(default, alias = "lang")]
    x_lang: String,
}

#[derive(Serialize)]
struct FragRow {
    lang: String,
    pairs: usize,
    ratio: f64,
}

fn frag_report(input: &Path, tokenizer_x: &str, tokenizer_en: &str) -> Result<()> {
    let tok_x = Tokenizer::from_name(tokenizer_x)?;
    let tok_en = Tokenizer::from_name(tokenizer_en)?;
    let pairs: Vec<FragPair> = read_jsonl(input)?;
    let mut by_lang: BTreeMap<&str, Vec<(&str, &str)>> = BTreeMap::new();
    for p in &pairs {
        by_lang.entry(&p.x_lang).or_default().push((&p.x_text, &p.en_text));
    }
    let mut rows = Vec::new();
    for (lang, group) in by_lang {
        rows.push(FragRow {
            lang: lang.to_owned(),
            pairs: group.len(),
            ratio: fragmentation_ratio::<f64, _>(&group, &tok_x, &tok_en)?,
        });
    }
    print_json(&rows)
}
