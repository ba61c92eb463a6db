use serde::{Deserialize, Serialize};

use super::{Direction, SynthesisError};
use crate::backend::{CacheKey, Client, DEFAULT_MAX_TOKENS_TRANSLATION};
use crate::corpus::{sample_lines, CorpusLine};
use crate::lang::{Registry, PIVOT};
use crate::prompt::{build_x2e_prompt, parse_translation, Exemplar, Provenance, TagStyle};

/// One back-translated line. `x_text` is the corpus line verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyntheticPair {
    pub x_text: String,
    pub en_text: String,
    pub x_lang: String,
    pub direction_of_generation: Direction,
    /// `backend_id/model_id`
    pub generator: String,
    pub prompt_digest: String,
    /// Why the pair is unusable; flagged pairs never enter exemplar pools.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flagged: Option<String>,
}

impl SyntheticPair {
    pub fn is_usable(&self) -> bool {
        self.flagged.is_none()
    }
}

/// Back-translates every corpus line into English with `seeds` as exemplars.
/// Output order follows `corpus`. Generation failures and empty parses are
/// kept as flagged records.
pub fn synthesize_x2e(
    corpus: &[CorpusLine],
    seeds: &[Exemplar],
    client: &Client,
    style: TagStyle,
    registry: &Registry,
) -> Result<Vec<SyntheticPair>, SynthesisError> {
    let prompts = corpus
        .iter()
        .map(|line| build_x2e_prompt(seeds, &line.text, &line.lang, style, registry))
        .collect::<Result<Vec<_>, _>>()?;
    let reqs: Vec<_> = prompts
        .iter()
        .map(|p| client.request(p, DEFAULT_MAX_TOKENS_TRANSLATION))
        .collect();
    let results = client.generate_batch(&reqs, client.parallelism());
    let generator = format!("{}/{}", client.backend_id(), client.model_id());
    let mut out = Vec::with_capacity(corpus.len());
    for ((line, req), res) in corpus.iter().zip(&reqs).zip(results) {
        let (en_text, flagged) = match &res.error {
            Some(err) => (String::new(), Some(format!("generation failed: {err}"))),
            None => {
                let parsed = parse_translation(&res.text, &req.stop);
                if parsed.is_empty() {
                    (parsed.text, Some("empty completion".to_owned()))
                } else {
                    (parsed.text, None)
                }
            }
        };
        if let Some(reason) = &flagged {
            log::warn!("{}:{} flagged: {reason}", line.source_id, line.line_no);
        }
        out.push(SyntheticPair {
            x_text: line.text.clone(),
            en_text,
            x_lang: line.lang.clone(),
            direction_of_generation: Direction::X2e,
            generator: generator.clone(),
            prompt_digest: CacheKey::of(req).to_string(),
            flagged,
        });
    }
    Ok(out)
}

/// Samples `m` usable pairs and orients them as exemplars: `E2x` puts the
/// English side first, `X2e` the source-language side.
pub fn build_intra_exemplars(
    pairs: &[SyntheticPair],
    direction: Direction,
    m: usize,
    seed: u64,
) -> Result<Vec<Exemplar>, SynthesisError> {
    let usable: Vec<&SyntheticPair> = pairs.iter().filter(|p| p.is_usable()).collect();
    if m > usable.len() {
        return Err(SynthesisError::NotEnoughPairs {
            needed: m,
            usable: usable.len(),
        });
    }
    let chosen = sample_lines(&usable, m, seed)?;
    Ok(chosen
        .into_iter()
        .map(|p| match direction {
            Direction::E2x => Exemplar::new(PIVOT, &p.en_text, &p.x_lang, &p.x_text, Provenance::SyntheticBt),
            Direction::X2e => Exemplar::new(&p.x_lang, &p.x_text, PIVOT, &p.en_text, Provenance::SyntheticBt),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{mock_rules, MockConfig, WordTable, FnGenerator, BackendError};
    use crate::prompt::default_ldp_exemplars;
    use std::sync::Arc;

    fn client() -> Client {
        let table = WordTable::new("sw", "en", [("habari", "news"), ("njema", "good"), ("asubuhi", "morning")]);
        let mock = mock_rules(
            MockConfig::Tables { tables: vec![table], confusion_decoy: None, default: String::new() },
            &Registry::builtin(),
        )
        .unwrap();
        Client::new("mock", "tables", Arc::new(mock))
    }

    fn lines(texts: &[&str]) -> Vec<CorpusLine> {
        texts
            .iter()
            .enumerate()
            .map(|(i, t)| CorpusLine::new(*t, "sw", "test", i + 1).unwrap())
            .collect()
    }

    pub(crate) fn pair(i: usize) -> SyntheticPair {
        SyntheticPair {
            x_text: format!("x{i}"),
            en_text: format!("e{i}"),
            x_lang: "sw".into(),
            direction_of_generation: Direction::X2e,
            generator: "mock/m".into(),
            prompt_digest: String::new(),
            flagged: None,
        }
    }

    #[test]
    fn word_mapped_english() {
        let reg = Registry::builtin();
        let corpus = lines(&["habari njema", "njema asubuhi", "asubuhi", "habari", "njema njema"]);
        let out = synthesize_x2e(&corpus, &default_ldp_exemplars(), &client(), TagStyle::EnglishTag, &reg).unwrap();
        let en: Vec<&str> = out.iter().map(|p| p.en_text.as_str()).collect();
        assert_eq!(en, ["news good", "good morning", "morning", "news", "good good"]);
        assert!(out.iter().all(|p| p.is_usable() && p.generator == "mock/tables"));
    }

    #[test]
    fn zero_seeds_still_run() {
        let reg = Registry::builtin();
        let out = synthesize_x2e(&lines(&["habari"]), &[], &client(), TagStyle::NoTag, &reg).unwrap();
        assert_eq!(out[0].en_text, "news");
    }

    #[test]
    fn empty_completion_is_flagged() {
        let reg = Registry::builtin();
        let gen = FnGenerator::new(|req: &crate::backend::GenerationRequest| {
            if req.prompt.ends_with("bad\nEnglish:") {
                Ok(crate::backend::Completion::stop("  "))
            } else if req.prompt.ends_with("boom\nEnglish:") {
                Err(BackendError::InvalidRequest("nope".into()))
            } else {
                Ok(crate::backend::Completion::stop(" ok"))
            }
        });
        let c = Client::new("fn", "m", Arc::new(gen));
        let out = synthesize_x2e(&lines(&["good", "bad", "boom"]), &[], &c, TagStyle::EnglishTag, &reg).unwrap();
        assert!(out[0].is_usable());
        assert_eq!(out[1].flagged.as_deref(), Some("empty completion"));
        assert!(out[2].flagged.as_deref().unwrap().starts_with("generation failed"));
        let ex = build_intra_exemplars(&out, Direction::X2e, 1, 0).unwrap();
        assert_eq!(ex[0].src_text, "good");
        assert!(matches!(
            build_intra_exemplars(&out, Direction::X2e, 2, 0),
            Err(SynthesisError::NotEnoughPairs { needed: 2, usable: 1 })
        ));
    }

    #[test]
    fn orientation_and_determinism() {
        let pairs: Vec<_> = (0..10).map(pair).collect();
        let a = build_intra_exemplars(&pairs, Direction::E2x, 8, 3).unwrap();
        let b = build_intra_exemplars(&pairs, Direction::E2x, 8, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 8);
        assert!(a.iter().all(|e| e.src_lang == "en" && e.tgt_lang == "sw" && e.src_text.starts_with('e')));
        assert!(a.iter().all(|e| e.provenance == Provenance::SyntheticBt));
        let x = build_intra_exemplars(&pairs, Direction::X2e, 8, 3).unwrap();
        assert!(x.iter().all(|e| e.tgt_lang == "en"));
        assert!(matches!(
            build_intra_exemplars(&pairs, Direction::E2x, 11, 3),
            Err(SynthesisError::NotEnoughPairs { needed: 11, usable: 10 })
        ));
    }
}
