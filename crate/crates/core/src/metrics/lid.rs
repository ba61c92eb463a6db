use std::collections::{BTreeMap, HashMap};

use crate::lang::{dominant_script, Dominant, ScriptClass, ScriptHistogram};

use super::MetricError;

/// Reserved prediction for text no candidate explains well.
pub const OTHER: &str = "##";
pub const MAX_ORDER: usize = 3;
pub const MIN_SEED_LINES: usize = 50;
/// See [`LidModel::confidence`]. Calibrated on synthetic seed corpora so that
/// uniform random Latin strings of 40 characters fall below it. Real text
/// scores lower when seed corpora are small; with fewer than about 200 seed
/// lines per language, lines in large-alphabet scripts can drop under it.
pub const DEFAULT_FLOOR: f64 = 0.34;

#[derive(Debug, Clone, PartialEq)]
pub struct LidConfig {
    pub min_lines: usize,
    /// `None` disables the "##" outcome.
    pub floor: Option<f64>,
}

impl Default for LidConfig {
    fn default() -> Self {
        Self {
            min_lines: MIN_SEED_LINES,
            floor: Some(DEFAULT_FLOOR),
        }
    }
}

#[derive(Debug, Clone)]
struct Profile {
    lang: String,
    script: Option<ScriptClass>,
    tables: Vec<HashMap<String, u64>>,
    totals: Vec<u64>,
}

/// Per-order add-one smoothed log probability of one n-gram.
impl Profile {
    fn log_prob(&self, order: usize, gram: &str) -> f64 {
        let count = self.tables[order].get(gram).copied().unwrap_or(0);
        let den = self.totals[order] + self.tables[order].len() as u64 + 1;
        ((count + 1) as f64 / den as f64).ln()
    }

    fn unseen_log_prob(&self, order: usize) -> f64 {
        let den = self.totals[order] + self.tables[order].len() as u64 + 1;
        (1.0 / den as f64).ln()
    }

    /// (sum of log probabilities, the same sum if every n-gram were unseen)
    fn score(&self, grams: &[Vec<String>]) -> (f64, f64) {
        let mut sum = 0.0;
        let mut worst = 0.0;
        for (order, list) in grams.iter().enumerate() {
            for g in list {
                sum += self.log_prob(order, g);
                worst += self.unseen_log_prob(order);
            }
        }
        (sum, worst)
    }
}

fn normalize(text: &str) -> Vec<char> {
    let mut out = vec![' '];
    for word in text.split_whitespace() {
        out.extend(word.chars().flat_map(char::to_lowercase));
        out.push(' ');
    }
    out
}

fn ngrams(text: &str) -> Vec<Vec<String>> {
    let chars = normalize(text);
    (1..=MAX_ORDER)
        .map(|n| {
            if chars.len() < n {
                Vec::new()
            } else {
                chars
                    .windows(n)
                    .filter(|w| !(n == 1 && w[0] == ' '))
                    .map(|w| w.iter().collect())
                    .collect()
            }
        })
        .collect()
}

/// Character n-gram language identifier with a script prefilter.
/// Immutable once trained.
#[derive(Debug, Clone)]
pub struct LidModel {
    profiles: Vec<Profile>,
    floor: Option<f64>,
}

pub fn lid_train<S: AsRef<str>>(
    seed_corpora: &BTreeMap<String, Vec<S>>,
    config: &LidConfig,
) -> Result<LidModel, MetricError> {
    if seed_corpora.is_empty() {
        return Err(MetricError::NeedSeedData {
            lang: String::new(),
            have: 0,
            need: config.min_lines,
        });
    }
    let mut profiles = Vec::new();
    for (lang, lines) in seed_corpora {
        let usable = lines.iter().filter(|l| !l.as_ref().trim().is_empty()).count();
        if usable < config.min_lines.max(1) {
            return Err(MetricError::NeedSeedData {
                lang: lang.clone(),
                have: usable,
                need: config.min_lines,
            });
        }
        let mut tables = vec![HashMap::new(); MAX_ORDER];
        let mut hist = ScriptHistogram::default();
        for line in lines {
            let line = line.as_ref();
            let h = ScriptHistogram::of(line);
            for (s, n) in h.counts {
                *hist.counts.entry(s).or_insert(0) += n;
                hist.total += n;
            }
            for (order, list) in ngrams(line).into_iter().enumerate() {
                for g in list {
                    *tables[order].entry(g).or_insert(0u64) += 1;
                }
            }
        }
        let totals = tables.iter().map(|t| t.values().sum()).collect();
        let script = hist
            .counts
            .iter()
            .max_by_key(|(s, n)| (**n, std::cmp::Reverse(**s)))
            .map(|(s, _)| *s);
        profiles.push(Profile {
            lang: lang.clone(),
            script,
            tables,
            totals,
        });
    }
    Ok(LidModel {
        profiles,
        floor: config.floor,
    })
}

pub fn lid_classify(text: &str, model: &LidModel) -> Result<String, MetricError> {
    model.classify(text)
}

impl LidModel {
    pub fn candidates(&self) -> Vec<&str> {
        self.profiles.iter().map(|p| p.lang.as_str()).collect()
    }

    pub fn script_prior(&self, lang: &str) -> Option<ScriptClass> {
        self.profiles.iter().find(|p| p.lang == lang).and_then(|p| p.script)
    }

    pub fn floor(&self) -> Option<f64> {
        self.floor
    }

    pub fn with_floor(mut self, floor: Option<f64>) -> Self {
        self.floor = floor;
        self
    }

    /// Candidates left after the script prefilter, with their summed log
    /// probability and confidence. Confidence is `1 - sum / sum_if_unseen`:
    /// 0 when every n-gram is unknown, approaching 1 for typical text.
    pub fn scores(&self, text: &str) -> Result<Vec<(String, f64, f64)>, MetricError> {
        if text.trim().is_empty() {
            return Err(MetricError::EmptyText);
        }
        let keep: Vec<&Profile> = match dominant_script(text) {
            Dominant::Script(s) => self.profiles.iter().filter(|p| p.script == Some(s)).collect(),
            Dominant::Ambiguous(_) => self.profiles.iter().collect(),
        };
        let grams = ngrams(text);
        Ok(keep
            .into_iter()
            .map(|p| {
                let (sum, worst) = p.score(&grams);
                let confidence = if worst == 0.0 { 0.0 } else { 1.0 - sum / worst };
                (p.lang.clone(), sum, confidence)
            })
            .collect())
    }

    /// The best candidate's confidence, or `None` when the prefilter leaves nobody.
    pub fn confidence(&self, text: &str) -> Result<Option<f64>, MetricError> {
        Ok(self.best(text)?.map(|(_, _, c)| c))
    }

    fn best(&self, text: &str) -> Result<Option<(String, f64, f64)>, MetricError> {
        let scores = self.scores(text)?;
        // Ties go to the earlier candidate.
        let mut best: Option<(String, f64, f64)> = None;
        for s in scores {
            if best.as_ref().is_none_or(|b| s.1 > b.1) {
                best = Some(s);
            }
        }
        Ok(best)
    }

    pub fn classify(&self, text: &str) -> Result<String, MetricError> {
        match self.best(text)? {
            None => Ok(OTHER.to_owned()),
            Some((lang, _, confidence)) => match self.floor {
                Some(floor) if confidence < floor => Ok(OTHER.to_owned()),
                _ => Ok(lang),
            },
        }
    }
}
