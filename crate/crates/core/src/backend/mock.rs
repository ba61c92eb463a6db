use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::{BackendError, Completion, GenerationRequest, Generator};
use crate::lang::{Registry, PIVOT};

/// A word-for-word dictionary from `src` to `tgt`; must be injective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordTable {
    pub src: String,
    pub tgt: String,
    pub words: BTreeMap<String, String>,
}

impl WordTable {
    pub fn new<'a>(src: &str, tgt: &str, pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        Self {
            src: src.to_owned(),
            tgt: tgt.to_owned(),
            words: pairs.into_iter().map(|(a, b)| (a.to_owned(), b.to_owned())).collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        Self {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            words: self.words.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    fn validate(&self) -> Result<(), BackendError> {
        let mut seen = BTreeSet::new();
        for (from, to) in &self.words {
            for w in [from, to] {
                if w.is_empty() || w.chars().any(char::is_whitespace) {
                    return Err(BackendError::BadTable(format!(
                        "{}->{}: entry `{w}` is not a single word",
                        self.src, self.tgt
                    )));
                }
            }
            if !seen.insert(to) {
                return Err(BackendError::BadTable(format!(
                    "{}->{}: `{to}` is the image of more than one word",
                    self.src, self.tgt
                )));
            }
        }
        Ok(())
    }

    /// Maps each whitespace-separated word; unknown words pass through.
    pub fn apply(&self, text: &str) -> String {
        text.split_whitespace()
            .map(|w| self.words.get(w).map_or(w, String::as_str))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum MockConfig {
    /// Exact prompt to completion.
    Dictionary {
        #[serde(default)]
        entries: BTreeMap<String, String>,
        #[serde(default)]
        default: String,
    },
    /// Word tables applied to the final input line of the prompt.
    Tables {
        #[serde(default)]
        tables: Vec<WordTable>,
        /// When set, prompts whose exemplar target labels disagree with the
        /// requested label are answered in this language instead.
        #[serde(default)]
        confusion_decoy: Option<String>,
        #[serde(default)]
        default: String,
    },
    /// Either of the above, stored as JSON.
    File { path: PathBuf },
}

impl MockConfig {
    pub fn resolve(self) -> Result<MockConfig, BackendError> {
        match self {
            MockConfig::File { path } => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| BackendError::Config(format!("{}: {e}", path.display())))?;
                let inner: MockConfig = serde_json::from_str(&text)
                    .map_err(|e| BackendError::Config(format!("{}: {e}", path.display())))?;
                match inner {
                    MockConfig::File { .. } => Err(BackendError::Config("nested mock file".into())),
                    other => Ok(other),
                }
            }
            other => Ok(other),
        }
    }
}

#[derive(Debug, Clone)]
enum Rules {
    Dictionary {
        entries: BTreeMap<String, String>,
        default: String,
    },
    Tables {
        // (src, tgt) -> table, in configuration order for deterministic inference
        tables: Vec<WordTable>,
        index: HashMap<(String, String), usize>,
        decoy: Option<String>,
        default: String,
    },
}

/// Deterministic rule-based generator for offline runs.
///
/// In table mode the prompt's last two lines are read as `{label}: {input}`
/// and `{label}:`. Labels resolve to languages through the registry; an
/// untagged target falls back to the request's language hint and an untagged
/// source is inferred as the table (into the target) covering most input
/// words. Pivot prompts (blank-line separated three-line blocks) are answered
/// with the English line followed by the target label and translation.
/// Languages without a table pass the input through unchanged.
#[derive(Debug, Clone)]
pub struct MockBackend {
    rules: Rules,
    registry: Registry,
}

pub fn mock_rules(config: MockConfig, registry: &Registry) -> Result<MockBackend, BackendError> {
    let rules = match config.resolve()? {
        MockConfig::Dictionary { entries, default } => Rules::Dictionary { entries, default },
        MockConfig::Tables {
            tables,
            confusion_decoy,
            default,
        } => {
            let mut all = Vec::new();
            let mut index = HashMap::new();
            for t in &tables {
                t.validate()?;
                let key = (t.src.clone(), t.tgt.clone());
                if index.insert(key, all.len()).is_some() {
                    return Err(BackendError::BadTable(format!("duplicate table {}->{}", t.src, t.tgt)));
                }
                all.push(t.clone());
            }
            for t in &tables {
                let rev = t.reversed();
                let key = (rev.src.clone(), rev.tgt.clone());
                if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(key) {
                    slot.insert(all.len());
                    all.push(rev);
                }
            }
            Rules::Tables {
                tables: all,
                index,
                decoy: confusion_decoy,
                default,
            }
        }
        MockConfig::File { .. } => unreachable!("resolved above"),
    };
    Ok(MockBackend {
        rules,
        registry: registry.clone(),
    })
}

fn split_label(line: &str) -> Option<(&str, &str)> {
    let at = line.find(": ")?;
    Some((&line[..at], &line[at + 2..]))
}

fn open_label(line: &str) -> Option<&str> {
    line.strip_suffix(':').filter(|l| !l.is_empty() && !l.contains(": "))
}

impl MockBackend {
    fn resolve(&self, label: &str) -> Option<String> {
        self.registry.by_name(label).map(|s| s.code.clone())
    }

    fn table(&self, src: &str, tgt: &str) -> Option<&WordTable> {
        match &self.rules {
            Rules::Tables { tables, index, .. } => index
                .get(&(src.to_owned(), tgt.to_owned()))
                .map(|&i| &tables[i]),
            Rules::Dictionary { .. } => None,
        }
    }

    fn translate(&self, src: &str, tgt: &str, text: &str) -> String {
        if src == tgt {
            return text.split_whitespace().collect::<Vec<_>>().join(" ");
        }
        match self.table(src, tgt) {
            Some(t) => t.apply(text),
            None => text.split_whitespace().collect::<Vec<_>>().join(" "),
        }
    }

    fn infer_source(&self, tgt: &str, input: &str) -> Option<String> {
        let Rules::Tables { tables, .. } = &self.rules else {
            return None;
        };
        let words: Vec<&str> = input.split_whitespace().collect();
        let mut best: Option<(usize, &WordTable)> = None;
        for t in tables.iter().filter(|t| t.tgt == tgt) {
            let hits = words.iter().filter(|w| t.words.contains_key(**w)).count();
            if hits > 0 && best.is_none_or(|(b, _)| hits > b) {
                best = Some((hits, t));
            }
        }
        best.map(|(_, t)| t.src.clone())
    }

    fn pivot(&self, prev_block: &str, last_block: &str) -> Option<String> {
        let prev: Vec<&str> = prev_block.split('\n').collect();
        let last: Vec<&str> = last_block.split('\n').collect();
        if prev.len() != 3 || last.len() != 2 {
            return None;
        }
        let (tgt_label, _) = split_label(prev[2])?;
        let (src_label, input) = split_label(last[0])?;
        let en_label = open_label(last[1])?;
        if self.resolve(en_label).as_deref() != Some(PIVOT) {
            return None;
        }
        let tgt = self.resolve(tgt_label)?;
        let src = self.resolve(src_label)?;
        let en = self.translate(&src, PIVOT, input);
        let y = self.translate(PIVOT, &tgt, &en);
        Some(format!("{en}\n{tgt_label}: {y}"))
    }

    fn pair(&self, req: &GenerationRequest, lines: &[&str]) -> Option<String> {
        let n = lines.len();
        if n < 2 {
            return None;
        }
        let out_label = open_label(lines[n - 1])?;
        let (in_label, input) = split_label(lines[n - 2])?;
        let mut tgt = self.resolve(out_label).or_else(|| req.lang_hint.clone())?;
        let src = self
            .resolve(in_label)
            .or_else(|| self.infer_source(&tgt, input))
            .unwrap_or_else(|| tgt.clone());

        if let Rules::Tables { decoy: Some(decoy), .. } = &self.rules {
            let exemplar_lines = &lines[..n - 2];
            let mixed = exemplar_lines
                .iter()
                .skip(1)
                .step_by(2)
                .filter_map(|l| split_label(l).map(|(label, _)| label))
                .any(|label| label != out_label);
            if mixed {
                tgt = decoy.clone();
            }
        }
        Some(self.translate(&src, &tgt, input))
    }

    fn tables_completion(&self, req: &GenerationRequest, default: &str) -> String {
        let prompt = req.prompt.as_str();
        if let Some(at) = prompt.rfind("\n\n") {
            let head = &prompt[..at];
            let prev_block = head.rsplit("\n\n").next().unwrap_or(head);
            if let Some(out) = self.pivot(prev_block, &prompt[at + 2..]) {
                return out;
            }
        }
        let lines: Vec<&str> = prompt.split('\n').collect();
        self.pair(req, &lines).unwrap_or_else(|| default.to_owned())
    }
}

impl Generator for MockBackend {
    fn complete(&self, req: &GenerationRequest) -> Result<Completion, BackendError> {
        let text = match &self.rules {
            Rules::Dictionary { entries, default } => {
                entries.get(&req.prompt).unwrap_or(default).clone()
            }
            Rules::Tables { default, .. } => self.tables_completion(req, default),
        };
        Ok(Completion::stop(text))
    }
}

/// Wraps a closure as a generator.
pub struct FnGenerator<F>(F);

impl<F> FnGenerator<F>
where
    F: Fn(&GenerationRequest) -> Result<Completion, BackendError> + Send + Sync,
{
    pub fn new(f: F) -> Self {
        Self(f)
    }
}

impl<F> Generator for FnGenerator<F>
where
    F: Fn(&GenerationRequest) -> Result<Completion, BackendError> + Send + Sync,
{
    fn complete(&self, req: &GenerationRequest) -> Result<Completion, BackendError> {
        (self.0)(req)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{Client, FinishReason};
    use std::sync::Arc;

    fn req(prompt: &str, hint: Option<&str>) -> GenerationRequest {
        GenerationRequest {
            prompt: prompt.into(),
            max_tokens: 32,
            temperature: 0.0,
            stop: vec!["\n".into()],
            model_id: "mock".into(),
            backend_id: "mock".into(),
            lang_hint: hint.map(str::to_owned),
        }
    }

    fn en_ig() -> MockBackend {
        let table = WordTable::new("en", "ig", [("machine", "igwe"), ("learning", "ịmụ")]);
        mock_rules(
            MockConfig::Tables {
                tables: vec![table],
                confusion_decoy: None,
                default: String::new(),
            },
            &Registry::builtin(),
        )
        .unwrap()
    }

    #[test]
    fn dictionary_mode() {
        let mock = mock_rules(
            MockConfig::Dictionary {
                entries: BTreeMap::from([("A\nB:".to_string(), " C".to_string())]),
                default: "?".into(),
            },
            &Registry::builtin(),
        )
        .unwrap();
        let client = Client::new("mock", "mock", Arc::new(mock));
        let res = client.generate(&req("A\nB:", None)).unwrap();
        assert_eq!(res.text, " C");
        assert_eq!(res.finish_reason, FinishReason::Stop);
        assert_eq!(client.generate(&req("other", None)).unwrap().text, "?");
    }

    #[test]
    fn table_mode_word_mapping() {
        let mock = en_ig();
        let out = mock.complete(&req("English: machine learning\nIgbo:", None)).unwrap();
        assert_eq!(out.text, "igwe ịmụ");
        let back = mock.complete(&req("Igbo: igwe ịmụ\nEnglish:", None)).unwrap();
        assert_eq!(back.text, "machine learning");
        let unknown = mock.complete(&req("English: deep learning\nIgbo:", None)).unwrap();
        assert_eq!(unknown.text, "deep ịmụ");
    }

    #[test]
    fn untagged_prompts_use_hint_and_vocabulary() {
        let mock = en_ig();
        let out = mock
            .complete(&req("Input: Hello\nOutput: Ndewo\nInput: igwe ịmụ\nOutput:", Some("en")))
            .unwrap();
        assert_eq!(out.text, "machine learning");
    }

    #[test]
    fn non_bijective_table_rejected() {
        let table = WordTable::new("en", "ig", [("a", "x"), ("b", "x")]);
        let err = mock_rules(
            MockConfig::Tables {
                tables: vec![table],
                confusion_decoy: None,
                default: String::new(),
            },
            &Registry::builtin(),
        )
        .unwrap_err();
        assert!(matches!(err, BackendError::BadTable(_)));
    }

    #[test]
    fn pivot_prompts_answer_with_intermediate() {
        let mock = mock_rules(
            MockConfig::Tables {
                tables: vec![
                    WordTable::new("ta", "en", [("கல்வி", "education")]),
                    WordTable::new("en", "sw", [("education", "elimu")]),
                ],
                confusion_decoy: None,
                default: String::new(),
            },
            &Registry::builtin(),
        )
        .unwrap();
        let prompt = "Tamil: a\nEnglish: b\nSwahili: c\n\nTamil: கல்வி\nEnglish:";
        let out = mock.complete(&req(prompt, Some("sw"))).unwrap();
        assert_eq!(out.text, "education\nSwahili: elimu");
    }

    #[test]
    fn mixed_target_labels_trigger_decoy() {
        let mock = mock_rules(
            MockConfig::Tables {
                tables: vec![
                    WordTable::new("en", "mr", [("water", "पाणी")]),
                    WordTable::new("en", "hi", [("water", "पानी")]),
                ],
                confusion_decoy: Some("hi".into()),
                default: String::new(),
            },
            &Registry::builtin(),
        )
        .unwrap();
        let mixed = "English: Hello\nFrench: Bonjour\nEnglish: water\nMarathi:";
        assert_eq!(mock.complete(&req(mixed, None)).unwrap().text, "पानी");
        let consistent = "English: Hello\nMarathi: नमस्कार\nEnglish: water\nMarathi:";
        assert_eq!(mock.complete(&req(consistent, None)).unwrap().text, "पाणी");
    }

    #[test]
    fn config_round_trips_through_json() {
        let cfg = MockConfig::Tables {
            tables: vec![WordTable::new("en", "ig", [("a", "b")])],
            confusion_decoy: None,
            default: String::new(),
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mock.json");
        std::fs::write(&path, serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(MockConfig::File { path }.resolve().unwrap(), cfg);
    }
}
