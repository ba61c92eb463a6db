//! Language registry and script classification.

mod registry;
mod script;

pub use registry::{LanguageSpec, Registry, ResourceTier, DEFAULT_LDP_SET, PIVOT};
pub use script::{
    dominant_script, is_letter, is_mark, letter_ratio, script_of, Dominant, ScriptClass,
    ScriptHistogram,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LangError {
    #[error("unknown language code `{0}`")]
    UnknownLanguage(String),
    #[error("duplicate language code `{0}` in registry file")]
    DuplicateCode(String),
    #[error("invalid registry entry: {0}")]
    InvalidEntry(String),
    #[error("registry i/o: {0}")]
    Io(String),
}
