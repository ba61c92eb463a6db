use serde::{Deserialize, Serialize};

use super::PromptError;
use crate::corpus::has_line_break;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Supervised,
    SyntheticBt,
    SeedTranslation,
}

/// An in-context demonstration pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exemplar {
    pub src_text: String,
    pub tgt_text: String,
    pub src_lang: String,
    pub tgt_lang: String,
    pub provenance: Provenance,
}

impl Exemplar {
    pub fn new(
        src_lang: &str,
        src_text: &str,
        tgt_lang: &str,
        tgt_text: &str,
        provenance: Provenance,
    ) -> Self {
        Self {
            src_text: src_text.to_owned(),
            tgt_text: tgt_text.to_owned(),
            src_lang: src_lang.to_owned(),
            tgt_lang: tgt_lang.to_owned(),
            provenance,
        }
    }

    pub fn validate(&self) -> Result<(), PromptError> {
        for text in [&self.src_text, &self.tgt_text] {
            if text.trim().is_empty() {
                return Err(PromptError::InvalidExemplar("empty text".into()));
            }
            if has_line_break(text) {
                return Err(PromptError::InvalidExemplar(format!("line break in `{text}`")));
            }
        }
        Ok(())
    }

    pub fn reversed(&self) -> Self {
        Self {
            src_text: self.tgt_text.clone(),
            tgt_text: self.src_text.clone(),
            src_lang: self.tgt_lang.clone(),
            tgt_lang: self.src_lang.clone(),
            provenance: self.provenance,
        }
    }
}

/// An X / English / Y demonstration for English-pivoted translation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PivotTriplet {
    pub x_text: String,
    pub en_text: String,
    pub y_text: String,
    pub x_lang: String,
    pub y_lang: String,
}

impl PivotTriplet {
    pub fn validate(&self) -> Result<(), PromptError> {
        for text in [&self.x_text, &self.en_text, &self.y_text] {
            if text.trim().is_empty() || has_line_break(text) {
                return Err(PromptError::InvalidExemplar(format!("bad triplet text `{text}`")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TagStyle {
    /// English language names, e.g. `Igbo:`.
    EnglishTag,
    /// Native language names, e.g. `中文:`.
    NativeTag,
    /// Generic `Input:` / `Output:` labels.
    #[default]
    NoTag,
}

/// A rendered prompt plus the parsing contract for its completion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptText {
    pub text: String,
    pub stop: Vec<String>,
    pub expected_lang: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocSumExemplar {
    pub doc: String,
    pub summary: String,
    pub lang: String,
}

/// Stock high-resource seed pairs in the default Ar, Zh, Vi, Fr order.
pub fn default_ldp_exemplars() -> Vec<Exemplar> {
    [
        ("ar", "مرحبا بالعالم", "Hello world"),
        ("zh", "早上好", "Good morning"),
        ("vi", "Cảm ơn", "Thank you"),
        ("fr", "Je suis désolé", "I'm sorry"),
    ]
    .into_iter()
    .map(|(lang, src, en)| Exemplar::new(lang, src, "en", en, Provenance::SeedTranslation))
    .collect()
}
