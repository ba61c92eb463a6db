use std::collections::{BTreeMap, BTreeSet};
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use unicode_general_category::{get_general_category, GeneralCategory};

use super::CorpusLine;
use crate::lang::{letter_ratio, LanguageSpec, ScriptClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RejectReason {
    TooShort,
    TooLong,
    Artifact,
    ForeignCharRatio,
}

impl RejectReason {
    pub const ALL: [RejectReason; 4] = [
        RejectReason::TooShort,
        RejectReason::TooLong,
        RejectReason::Artifact,
        RejectReason::ForeignCharRatio,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(RejectReason),
}

/// Thresholds for the cleaning rules. Length bounds are inclusive and
/// counted in Unicode scalar values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterRules {
    pub min_chars: usize,
    pub max_chars: usize,
    /// Lines whose digit share of all characters exceeds this are artifacts.
    pub max_digit_share: f64,
    pub max_foreign_ratio: f64,
}

impl Default for FilterRules {
    fn default() -> Self {
        Self {
            min_chars: 20,
            max_chars: 200,
            max_digit_share: 0.15,
            max_foreign_ratio: 0.20,
        }
    }
}

static URL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)\b[a-z][a-z0-9+.\-]*://|\bwww\.").unwrap());
static BULLET: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^\s*[-*•]").unwrap());

fn is_artifact(text: &str, max_digit_share: f64) -> bool {
    if URL.is_match(text) || BULLET.is_match(text) {
        return true;
    }
    if text.contains(['[', ']', '{', '}']) {
        return true;
    }
    let (mut digits, mut chars) = (0usize, 0usize);
    for c in text.chars() {
        chars += 1;
        if get_general_category(c) == GeneralCategory::DecimalNumber {
            digits += 1;
        }
    }
    chars > 0 && digits as f64 > max_digit_share * chars as f64
}

/// Scripts that count as foreign for a language: Latin for non-Latin-script
/// languages, every non-Latin class for Latin-script ones.
pub fn foreign_scripts(spec: &LanguageSpec) -> BTreeSet<ScriptClass> {
    if spec.script_class == ScriptClass::Latin {
        ScriptClass::non_latin()
    } else {
        [ScriptClass::Latin].into_iter().collect()
    }
}

impl FilterRules {
    /// Checks length, then artifacts, then the foreign-script ratio, and
    /// reports the first violation.
    pub fn check(&self, text: &str, spec: &LanguageSpec) -> Verdict {
        let n = text.chars().count();
        if n < self.min_chars {
            return Verdict::Reject(RejectReason::TooShort);
        }
        if n > self.max_chars {
            return Verdict::Reject(RejectReason::TooLong);
        }
        if is_artifact(text, self.max_digit_share) {
            return Verdict::Reject(RejectReason::Artifact);
        }
        if letter_ratio(text, &foreign_scripts(spec)) > self.max_foreign_ratio {
            return Verdict::Reject(RejectReason::ForeignCharRatio);
        }
        Verdict::Accept
    }
}

/// Applies the default rules. `spec` is trusted to describe `line.lang`.
pub fn filter_line(line: &CorpusLine, spec: &LanguageSpec) -> Verdict {
    FilterRules::default().check(&line.text, spec)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub rejected: BTreeMap<RejectReason, usize>,
    pub accepted: usize,
    pub total: usize,
}

impl Default for FilterReport {
    fn default() -> Self {
        Self {
            rejected: RejectReason::ALL.into_iter().map(|r| (r, 0)).collect(),
            accepted: 0,
            total: 0,
        }
    }
}

impl FilterReport {
    pub fn rejected(&self, reason: RejectReason) -> usize {
        self.rejected.get(&reason).copied().unwrap_or(0)
    }

    pub fn rejected_total(&self) -> usize {
        self.rejected.values().sum()
    }
}

pub fn filter_corpus(
    lines: &[CorpusLine],
    spec: &LanguageSpec,
    rules: &FilterRules,
) -> (Vec<CorpusLine>, FilterReport) {
    let mut report = FilterReport::default();
    let mut kept = Vec::new();
    for line in lines {
        report.total += 1;
        match rules.check(&line.text, spec) {
            Verdict::Accept => {
                report.accepted += 1;
                kept.push(line.clone());
            }
            Verdict::Reject(reason) => *report.rejected.entry(reason).or_insert(0) += 1,
        }
    }
    (kept, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::Registry;

    fn line(text: &str, lang: &str) -> CorpusLine {
        CorpusLine::new(text, lang, "test", 0).unwrap()
    }

    fn verdict(text: &str, lang: &str) -> Verdict {
        let reg = Registry::builtin();
        filter_line(&line(text, lang), reg.get(lang).unwrap())
    }

    #[test]
    fn boundary_lengths() {
        assert_eq!(verdict("Hello", "ig"), Verdict::Reject(RejectReason::TooShort));
        assert_eq!(
            verdict("Soma zaidi hapa http://example.com leo hii ni habari njema", "sw"),
            Verdict::Reject(RejectReason::Artifact)
        );
        let marathi = "आज सकाळी आम्ही बाजारात भाजी घ्यायला गेलो होतो";
        assert!(marathi.chars().count() >= 40);
        assert_eq!(verdict(marathi, "mr"), Verdict::Accept);
    }

    #[test]
    fn length_bounds_are_inclusive() {
        let twenty = "a".repeat(20);
        let two_hundred = "a".repeat(200);
        assert_eq!(verdict(&twenty, "sw"), Verdict::Accept);
        assert_eq!(verdict(&"a".repeat(19), "sw"), Verdict::Reject(RejectReason::TooShort));
        assert_eq!(verdict(&two_hundred, "sw"), Verdict::Accept);
        assert_eq!(verdict(&"a".repeat(201), "sw"), Verdict::Reject(RejectReason::TooLong));
    }

    #[test]
    fn length_counts_scalars_not_bytes() {
        // 20 Devanagari scalars are 60 bytes
        let text = "क".repeat(20);
        assert_eq!(verdict(&text, "hi"), Verdict::Accept);
    }

    #[test]
    fn artifact_patterns() {
        let base = "habari njema sana leo";
        assert_eq!(verdict(&format!("{base} www.example"), "sw"), Verdict::Reject(RejectReason::Artifact));
        assert_eq!(verdict(&format!("{base} [1]"), "sw"), Verdict::Reject(RejectReason::Artifact));
        assert_eq!(verdict(&format!("{base} {{x}}"), "sw"), Verdict::Reject(RejectReason::Artifact));
        assert_eq!(verdict(&format!("- {base}"), "sw"), Verdict::Reject(RejectReason::Artifact));
        assert_eq!(verdict(&format!("  • {base}"), "sw"), Verdict::Reject(RejectReason::Artifact));
        assert_eq!(verdict(&format!("* {base}"), "sw"), Verdict::Reject(RejectReason::Artifact));
        // 4 digits in 25 chars = 16%
        assert_eq!(verdict("habari njema sana le 2024", "sw"), Verdict::Reject(RejectReason::Artifact));
        // 3 digits in 24 chars = 12.5%
        assert_eq!(verdict("habari njema sana le 202", "sw"), Verdict::Accept);
        // hyphen inside the line is not a bullet
        assert_eq!(verdict("habari-njema sana leo hii", "sw"), Verdict::Accept);
    }

    #[test]
    fn foreign_ratio_directions() {
        // Indic: Latin letters are foreign
        let mixed = "मराठी भाषा खूप सुंदर आहे hello world friends";
        assert_eq!(verdict(mixed, "mr"), Verdict::Reject(RejectReason::ForeignCharRatio));
        // African: non-Latin letters are foreign
        let mixed = "habari njema 你好世界你好世界你好世界";
        assert_eq!(verdict(mixed, "sw"), Verdict::Reject(RejectReason::ForeignCharRatio));
        // ratio exactly 0.2 passes: 8 Latin, 2 Han letters
        assert_eq!(verdict("abcd efgh 你好 . . . . . .", "sw"), Verdict::Accept);
    }

    #[test]
    fn first_violation_wins() {
        // short and has a URL: length is checked first
        assert_eq!(verdict("http://x.io", "sw"), Verdict::Reject(RejectReason::TooShort));
    }

    #[test]
    fn empty_corpus_report() {
        let reg = Registry::builtin();
        let (kept, report) = filter_corpus(&[], reg.get("sw").unwrap(), &FilterRules::default());
        assert!(kept.is_empty());
        assert_eq!(report.total, 0);
        assert_eq!(report.rejected_total(), 0);
    }

    #[test]
    fn report_serializes_all_reasons() {
        let json = serde_json::to_value(FilterReport::default()).unwrap();
        for key in ["TooShort", "TooLong", "Artifact", "ForeignCharRatio"] {
            assert_eq!(json["rejected"][key], 0);
        }
    }
}
