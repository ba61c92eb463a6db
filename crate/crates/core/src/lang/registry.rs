use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::script::ScriptClass;
use super::LangError;

/// Code of the pivot language every LDP exemplar translates into.
pub const PIVOT: &str = "en";

/// Default linguistically-diverse exemplar languages, in prompt order.
pub const DEFAULT_LDP_SET: [&str; 4] = ["ar", "zh", "vi", "fr"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResourceTier {
    High,
    Low,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguageSpec {
    pub code: String,
    pub english_name: String,
    pub native_name: String,
    pub script_class: ScriptClass,
    pub resource_tier: ResourceTier,
}

impl LanguageSpec {
    pub fn new(
        code: &str,
        english_name: &str,
        native_name: &str,
        script_class: ScriptClass,
        resource_tier: ResourceTier,
    ) -> Self {
        Self {
            code: code.to_owned(),
            english_name: english_name.to_owned(),
            native_name: native_name.to_owned(),
            script_class,
            resource_tier,
        }
    }

    fn validate(&self) -> Result<(), LangError> {
        if self.code.trim().is_empty() {
            return Err(LangError::InvalidEntry("empty code".into()));
        }
        if self.english_name.trim().is_empty() {
            return Err(LangError::InvalidEntry(format!(
                "empty english_name for {}",
                self.code
            )));
        }
        if self.native_name.trim().is_empty() {
            return Err(LangError::InvalidEntry(format!(
                "empty native_name for {}",
                self.code
            )));
        }
        Ok(())
    }
}

use ResourceTier::{High, Low};
use ScriptClass::*;

// Native spellings are best-effort; override them with a registry file.
const BUILTIN: &[(&str, &str, &str, ScriptClass, ResourceTier)] = &[
    ("en", "English", "English", Latin, High),
    ("ar", "Arabic", "العربية", Arabic, High),
    ("zh", "Chinese", "中文", Han, High),
    ("vi", "Vietnamese", "Tiếng Việt", Latin, High),
    ("fr", "French", "Français", Latin, High),
    ("es", "Spanish", "Española", Latin, High),
    ("ru", "Russian", "Русский", Cyrillic, High),
    // Indic
    ("as", "Assamese", "অসমীয়া", Bengali, Low),
    ("or", "Oriya", "ଓଡ଼ିଆ", Odia, Low),
    ("gu", "Gujarati", "ગુજરાતી", Gujarati, Low),
    ("mr", "Marathi", "मराठी", Devanagari, Low),
    ("pa", "Panjabi", "ਪੰਜਾਬੀ", Gurmukhi, Low),
    ("kn", "Kannada", "ಕನ್ನಡ", Kannada, Low),
    ("ne", "Nepali", "नेपाली", Devanagari, Low),
    ("te", "Telugu", "తెలుగు", Telugu, Low),
    ("ml", "Malayalam", "മലയാളം", Malayalam, Low),
    ("ur", "Urdu", "اردو", Arabic, Low),
    ("ta", "Tamil", "தமிழ்", Tamil, Low),
    ("bn", "Bengali", "বাংলা", Bengali, Low),
    ("hi", "Hindi", "हिन्दी", Devanagari, Low),
    // African
    ("tum", "Tumbuka", "Chitumbuka", Latin, Low),
    ("ki", "Kikuyu", "Gĩkũyũ", Latin, Low),
    ("bm", "Bambara", "Bamanankan", Latin, Low),
    ("ak", "Akan", "Akan", Latin, Low),
    ("ts", "Tsonga", "Xitsonga", Latin, Low),
    ("st", "Southern Sotho", "Sesotho", Latin, Low),
    ("ny", "Chewa", "Chichewa", Latin, Low),
    ("tn", "Tswana", "Setswana", Latin, Low),
    ("ln", "Lingala", "Lingála", Latin, Low),
    ("nso", "Northern Sotho", "Sesotho sa Leboa", Latin, Low),
    ("fon", "Fon", "Fɔngbè", Latin, Low),
    ("rn", "Rundi", "Ikirundi", Latin, Low),
    ("wo", "Wolof", "Wolof", Latin, Low),
    ("lg", "Luganda", "Luganda", Latin, Low),
    ("sn", "Shona", "chiShona", Latin, Low),
    ("zu", "Zulu", "isiZulu", Latin, Low),
    ("ig", "Igbo", "Igbo", Latin, Low),
    ("xh", "Xhosa", "isiXhosa", Latin, Low),
    ("rw", "Kinyarwanda", "Ikinyarwanda", Latin, Low),
    ("yo", "Yoruba", "Yorùbá", Latin, Low),
    ("sw", "Swahili", "Kiswahili", Latin, Low),
];

/// Ordered language registry keyed by code.
#[derive(Debug, Clone)]
pub struct Registry {
    entries: Vec<LanguageSpec>,
    index: HashMap<String, usize>,
}

impl Default for Registry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        for (code, en, native, script, tier) in BUILTIN {
            reg.upsert(LanguageSpec::new(code, en, native, *script, *tier))
                .expect("builtin registry entries are valid");
        }
        reg
    }

    /// Inserts an entry, replacing any existing entry with the same code.
    pub fn upsert(&mut self, spec: LanguageSpec) -> Result<(), LangError> {
        spec.validate()?;
        match self.index.get(&spec.code) {
            Some(&i) => self.entries[i] = spec,
            None => {
                self.index.insert(spec.code.clone(), self.entries.len());
                self.entries.push(spec);
            }
        }
        Ok(())
    }

    /// Reads line-delimited JSON entries. Codes repeated within one file are
    /// rejected; codes already in the registry are overridden.
    pub fn extend_from_reader<R: BufRead>(&mut self, reader: R) -> Result<(), LangError> {
        let mut seen = std::collections::HashSet::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| LangError::Io(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let spec: LanguageSpec = serde_json::from_str(&line)
                .map_err(|e| LangError::InvalidEntry(format!("line {}: {e}", i + 1)))?;
            if !seen.insert(spec.code.clone()) {
                return Err(LangError::DuplicateCode(spec.code));
            }
            self.upsert(spec)?;
        }
        Ok(())
    }

    pub fn extend_from_file(&mut self, path: &Path) -> Result<(), LangError> {
        let file = std::fs::File::open(path)
            .map_err(|e| LangError::Io(format!("{}: {e}", path.display())))?;
        self.extend_from_reader(std::io::BufReader::new(file))
    }

    pub fn get(&self, code: &str) -> Result<&LanguageSpec, LangError> {
        self.index
            .get(code)
            .map(|&i| &self.entries[i])
            .ok_or_else(|| LangError::UnknownLanguage(code.to_owned()))
    }

    pub fn contains(&self, code: &str) -> bool {
        self.index.contains_key(code)
    }

    /// Resolves an English or native tag name back to a code.
    pub fn by_name(&self, name: &str) -> Option<&LanguageSpec> {
        self.entries
            .iter()
            .find(|s| s.english_name == name)
            .or_else(|| self.entries.iter().find(|s| s.native_name == name))
    }

    pub fn iter(&self) -> impl Iterator<Item = &LanguageSpec> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
