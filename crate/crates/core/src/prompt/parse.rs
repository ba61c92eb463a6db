use serde::{Deserialize, Serialize};

use super::PromptError;
use crate::lang::Registry;

/// A parsed completion. An empty `text` is a valid, flagged outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parsed {
    pub text: String,
}

impl Parsed {
    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }
}

fn truncate_at_stop<'a>(raw: &'a str, stop: &[String]) -> &'a str {
    let cut = stop
        .iter()
        .filter(|s| !s.is_empty())
        .filter_map(|s| raw.find(s.as_str()))
        .min()
        .unwrap_or(raw.len());
    &raw[..cut]
}

/// Cuts the completion at the earliest stop sequence and trims it.
pub fn parse_translation(raw: &str, stop: &[String]) -> Parsed {
    Parsed {
        text: truncate_at_stop(raw, stop).trim().to_owned(),
    }
}

/// Takes the text following `marker` (up to the end of that line); falls
/// back to the first line of the stop-truncated completion when the marker
/// is absent.
pub fn parse_marked(raw: &str, marker: &str, stop: &[String]) -> Parsed {
    let tail = match raw.find(marker) {
        Some(at) => &raw[at + marker.len()..],
        None => truncate_at_stop(raw, stop).trim_start(),
    };
    let tail = truncate_at_stop(tail, stop);
    Parsed {
        text: tail.lines().next().unwrap_or("").trim().to_owned(),
    }
}

/// Splits a pivot completion into its English intermediate and the target
/// translation that follows the target-language label.
pub fn parse_pivot_completion(
    raw: &str,
    tgt_lang: &str,
    registry: &Registry,
) -> Result<(String, String), PromptError> {
    let label = format!("{}:", registry.get(tgt_lang)?.english_name);
    let lines: Vec<&str> = raw.split('\n').collect();
    let at = lines
        .iter()
        .position(|l| l.trim_start().starts_with(&label))
        .ok_or_else(|| PromptError::NoTargetSegment(label.clone()))?;
    let en = lines[..at]
        .iter()
        .map(|l| l.trim())
        .find(|l| !l.is_empty())
        .unwrap_or("")
        .to_owned();
    let y = lines[at].trim_start()[label.len()..].trim().to_owned();
    Ok((en, y))
}

/// First integer token of the completion that lies in 1..=5.
pub fn parse_rating(raw: &str) -> Result<u8, PromptError> {
    raw.split(|c: char| !c.is_ascii_digit())
        .filter(|tok| !tok.is_empty())
        .filter_map(|tok| tok.parse::<u64>().ok())
        .find(|v| (1..=5).contains(v))
        .map(|v| v as u8)
        .ok_or(PromptError::UnparsableRating)
}
