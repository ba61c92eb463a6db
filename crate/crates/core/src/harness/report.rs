use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Task};
use super::run::{EvalRecord, RunScores};
use crate::metrics::ConfusionMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LanguageRow {
    pub lang: String,
    pub segments: usize,
    pub failures: usize,
    pub scores: BTreeMap<String, f64>,
}

/// Unweighted mean of the member languages' corpus scores. Languages with
/// no segments are left out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupRow {
    pub name: String,
    pub languages: Vec<String>,
    pub scores: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub task: Task,
    pub method: String,
    pub backend_id: String,
    pub seed: u64,
    pub config_digest: String,
    pub metrics: Vec<String>,
    pub total_segments: usize,
    pub languages: Vec<LanguageRow>,
    pub groups: Vec<GroupRow>,
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confusion: Option<ConfusionMatrix>,
}

pub fn report(records: &[EvalRecord], scores: &RunScores, cfg: &ExperimentConfig) -> Report {
    let metrics = cfg.metrics();
    let mut flags = Vec::new();
    let languages: Vec<LanguageRow> = cfg
        .languages
        .iter()
        .map(|lang| {
            let s = scores.get(lang).cloned().unwrap_or_default();
            let segments = records.iter().filter(|r| &r.lang == lang).count().max(s.segments);
            if segments == 0 {
                flags.push(format!("zero segments: {lang}"));
            }
            LanguageRow {
                lang: lang.clone(),
                segments,
                failures: s.failures,
                scores: s.scores,
            }
        })
        .collect();
    let total_segments: usize = languages.iter().map(|l| l.segments).sum();
    if total_segments == 0 {
        flags.insert(0, "no segments".to_owned());
    }
    let group_defs: Vec<(String, Vec<String>)> = if cfg.groups.is_empty() {
        vec![("all".to_owned(), cfg.languages.clone())]
    } else {
        cfg.groups.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    };
    let groups = group_defs
        .into_iter()
        .map(|(name, langs)| {
            let members: Vec<&LanguageRow> = languages
                .iter()
                .filter(|l| langs.contains(&l.lang) && l.segments > 0)
                .collect();
            let scores = metrics
                .iter()
                .filter_map(|m| {
                    let vals: Vec<f64> = members.iter().filter_map(|l| l.scores.get(m).copied()).collect();
                    (!vals.is_empty()).then(|| (m.clone(), vals.iter().sum::<f64>() / vals.len() as f64))
                })
                .collect();
            GroupRow {
                name,
                languages: langs,
                scores,
            }
        })
        .collect();
    Report {
        task: cfg.task,
        method: cfg.method.name().to_owned(),
        backend_id: cfg.backend_id.clone(),
        seed: cfg.seed,
        config_digest: cfg.digest(),
        metrics,
        total_segments,
        languages,
        groups,
        flags,
        confusion: None,
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Aligned plain-text table.
    pub fn to_text(&self) -> String {
        let mut header = vec!["lang".to_owned(), "n".to_owned(), "failed".to_owned()];
        header.extend(self.metrics.iter().cloned());
        let fmt = |scores: &BTreeMap<String, f64>, m: &str| scores.get(m).map_or("-".to_owned(), |v| format!("{v:.2}"));
        let mut rows: Vec<Vec<String>> = Vec::new();
        for l in &self.languages {
            let mut row = vec![l.lang.clone(), l.segments.to_string(), l.failures.to_string()];
            row.extend(self.metrics.iter().map(|m| fmt(&l.scores, m)));
            rows.push(row);
        }
        for g in &self.groups {
            let mut row = vec![format!("[{}]", g.name), String::new(), String::new()];
            row.extend(self.metrics.iter().map(|m| fmt(&g.scores, m)));
            rows.push(row);
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                std::iter::once(&header[c])
                    .chain(rows.iter().map(|r| &r[c]))
                    .map(|s| s.chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(i, (c, w))| {
                    let pad = w - c.chars().count();
                    if i == 0 { format!("{c}{}", " ".repeat(pad)) } else { format!("{}{c}", " ".repeat(pad)) }
                })
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = String::new();
        let _ = writeln!(
            out,
            "task {}  method {}  backend {}  seed {}",
            self.task.name(), self.method, self.backend_id, self.seed
        );
        let _ = writeln!(out, "config {}", self.config_digest);
        let _ = writeln!(out, "{}", line(&header));
        for r in &rows {
            let _ = writeln!(out, "{}", line(r));
        }
        for f in &self.flags {
            let _ = writeln!(out, "! {f}");
        }
        if let Some(m) = &self.confusion {
            let _ = writeln!(out, "\nlanguage confusion (rows intended, columns generated)");
            out.push_str(&m.to_string());
        }
        out
    }
}
