use super::{build_intra_exemplars, synthesize_x2e, Direction, SynthesisError};
use crate::backend::{Client, DEFAULT_MAX_TOKENS_TRANSLATION};
use crate::corpus::{CorpusError, CorpusLine};
use crate::lang::Registry;
use crate::prompt::{
    build_e2x_prompt, build_x2e_prompt, parse_translation, Exemplar, PivotTriplet, TagStyle,
};
use crate::rng::SeededRng;

/// Back-translation exemplars behind each inner prompt.
pub const DEFAULT_M_BT: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct TripletOptions {
    pub m_bt: usize,
    /// Upper bound on triplets; fewer come back when the corpus runs out.
    pub count: usize,
    /// Lines per language that are back-translated to form the exemplar pools.
    pub pool_lines: usize,
    pub style: TagStyle,
    pub seed: u64,
}

impl Default for TripletOptions {
    fn default() -> Self {
        Self {
            m_bt: DEFAULT_M_BT,
            count: 8,
            pool_lines: 2 * DEFAULT_M_BT,
            style: TagStyle::NoTag,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TripletRun {
    pub triplets: Vec<PivotTriplet>,
    /// One reason per dropped source line.
    pub dropped: Vec<String>,
}

fn pool_exemplars(
    lines: &[CorpusLine],
    seeds: &[Exemplar],
    client: &Client,
    direction: Direction,
    opts: &TripletOptions,
    registry: &Registry,
) -> Result<Vec<Exemplar>, SynthesisError> {
    let pairs = synthesize_x2e(lines, seeds, client, opts.style, registry)?;
    build_intra_exemplars(&pairs, direction, opts.m_bt, opts.seed)
}

/// Builds (x, en, y) triplets from unlabeled X text. Each source line is
/// translated to English with intra-lingual X-to-English exemplars, then to
/// `tgt_lang` with English-to-Y exemplars back-translated from `corpus_y`.
/// The pool lines and the triplet source lines are disjoint.
pub fn synthesize_triplets(
    corpus_x: &[CorpusLine],
    corpus_y: Option<&[CorpusLine]>,
    seeds: &[Exemplar],
    client: &Client,
    tgt_lang: &str,
    opts: &TripletOptions,
    registry: &Registry,
) -> Result<TripletRun, SynthesisError> {
    registry.get(tgt_lang).map_err(crate::prompt::PromptError::from)?;
    let order = SeededRng::new(opts.seed).permutation(corpus_x.len());
    let pool_n = if opts.m_bt == 0 { 0 } else { opts.pool_lines.max(opts.m_bt).min(corpus_x.len()) };
    let mut source_idx: Vec<usize> = order[pool_n..].iter().copied().take(opts.count).collect();
    source_idx.sort_unstable();

    let (x2e_ex, e2y_ex) = if opts.m_bt == 0 {
        (Vec::new(), Vec::new())
    } else {
        let corpus_y = corpus_y.ok_or_else(|| CorpusError::MissingCorpus(tgt_lang.to_owned()))?;
        let mut pool_x: Vec<usize> = order[..pool_n].to_vec();
        pool_x.sort_unstable();
        let pool_x: Vec<CorpusLine> = pool_x.into_iter().map(|i| corpus_x[i].clone()).collect();
        let mut pool_y = SeededRng::new(opts.seed).permutation(corpus_y.len());
        pool_y.truncate(opts.pool_lines.max(opts.m_bt).min(corpus_y.len()));
        pool_y.sort_unstable();
        let pool_y: Vec<CorpusLine> = pool_y.into_iter().map(|i| corpus_y[i].clone()).collect();
        (
            pool_exemplars(&pool_x, seeds, client, Direction::X2e, opts, registry)?,
            pool_exemplars(&pool_y, seeds, client, Direction::E2x, opts, registry)?,
        )
    };

    let sources: Vec<&CorpusLine> = source_idx.iter().map(|&i| &corpus_x[i]).collect();
    let mut run = TripletRun::default();

    let first = sources
        .iter()
        .map(|l| build_x2e_prompt(&x2e_ex, &l.text, &l.lang, opts.style, registry))
        .collect::<Result<Vec<_>, _>>()?;
    let reqs: Vec<_> = first
        .iter()
        .map(|p| client.request(p, DEFAULT_MAX_TOKENS_TRANSLATION))
        .collect();
    let mut halfway = Vec::new();
    for ((line, req), res) in sources.iter().zip(&reqs).zip(client.generate_batch(&reqs, client.parallelism())) {
        let en = parse_translation(&res.text, &req.stop);
        match (&res.error, en.is_empty()) {
            (Some(err), _) => run.dropped.push(format!("{}:{} to English: {err}", line.source_id, line.line_no)),
            (None, true) => run.dropped.push(format!("{}:{} to English: empty", line.source_id, line.line_no)),
            (None, false) => halfway.push((*line, en.text)),
        }
    }

    let second = halfway
        .iter()
        .map(|(_, en)| build_e2x_prompt(&e2y_ex, en, tgt_lang, opts.style, registry))
        .collect::<Result<Vec<_>, _>>()?;
    let reqs: Vec<_> = second
        .iter()
        .map(|p| client.request(p, DEFAULT_MAX_TOKENS_TRANSLATION))
        .collect();
    for (((line, en), req), res) in halfway.into_iter().zip(&reqs).zip(client.generate_batch(&reqs, client.parallelism())) {
        let y = parse_translation(&res.text, &req.stop);
        match (&res.error, y.is_empty()) {
            (Some(err), _) => run.dropped.push(format!("{}:{} to {tgt_lang}: {err}", line.source_id, line.line_no)),
            (None, true) => run.dropped.push(format!("{}:{} to {tgt_lang}: empty", line.source_id, line.line_no)),
            (None, false) => run.triplets.push(PivotTriplet {
                x_text: line.text.clone(),
                en_text: en,
                y_text: y.text,
                x_lang: line.lang.clone(),
                y_lang: tgt_lang.to_owned(),
            }),
        }
    }
    for reason in &run.dropped {
        log::warn!("triplet dropped: {reason}");
    }
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{mock_rules, MockConfig, WordTable};
    use crate::prompt::default_ldp_exemplars;
    use std::sync::Arc;

    fn tables() -> (WordTable, WordTable) {
        (
            WordTable::new("ta", "en", [("வணக்கம்", "hello"), ("நண்பா", "friend"), ("நன்றி", "thanks")]),
            WordTable::new("en", "sw", [("hello", "jambo"), ("friend", "rafiki"), ("thanks", "asante")]),
        )
    }

    fn client(tables: Vec<WordTable>) -> Client {
        let mock = mock_rules(
            MockConfig::Tables { tables, confusion_decoy: None, default: String::new() },
            &Registry::builtin(),
        )
        .unwrap();
        Client::new("mock", "tables", Arc::new(mock))
    }

    fn corpus(lang: &str, words: &[&str], n: usize) -> Vec<CorpusLine> {
        (0..n)
            .map(|i| {
                let text = format!("{} {}", words[i % words.len()], words[(i / words.len()) % words.len()]);
                CorpusLine::new(text, lang, lang, i + 1).unwrap()
            })
            .collect()
    }

    #[test]
    fn composition_identity() {
        let (ta_en, en_sw) = tables();
        let reg = Registry::builtin();
        let c = client(vec![ta_en.clone(), en_sw.clone()]);
        let x = corpus("ta", &["வணக்கம்", "நண்பா", "நன்றி"], 9);
        let y = corpus("sw", &["jambo", "rafiki", "asante"], 9);
        let opts = TripletOptions { m_bt: 2, count: 5, pool_lines: 3, seed: 4, ..Default::default() };
        let run = synthesize_triplets(&x, Some(&y), &default_ldp_exemplars(), &c, "sw", &opts, &reg).unwrap();
        assert_eq!(run.triplets.len(), 5);
        assert!(run.dropped.is_empty());
        for t in &run.triplets {
            t.validate().unwrap();
            let en = ta_en.apply(&t.x_text);
            assert_eq!(t.en_text, en);
            assert_eq!(t.y_text, en_sw.apply(&en));
        }
    }

    #[test]
    fn zero_shot_inner_prompts() {
        let (ta_en, en_sw) = tables();
        let reg = Registry::builtin();
        let c = client(vec![ta_en, en_sw]);
        let x = corpus("ta", &["வணக்கம்", "நன்றி"], 3);
        let opts = TripletOptions { m_bt: 0, count: 10, ..Default::default() };
        let run = synthesize_triplets(&x, None, &[], &c, "sw", &opts, &reg).unwrap();
        assert_eq!(run.triplets.len(), 3);
        assert!(run.triplets.iter().all(|t| t.validate().is_ok()));
    }

    #[test]
    fn missing_target_corpus() {
        let (ta_en, en_sw) = tables();
        let reg = Registry::builtin();
        let x = corpus("ta", &["வணக்கம்"], 20);
        let err = synthesize_triplets(&x, None, &[], &client(vec![ta_en, en_sw]), "sw", &TripletOptions::default(), &reg)
            .unwrap_err();
        assert!(matches!(err, SynthesisError::Corpus(CorpusError::MissingCorpus(l)) if l == "sw"));
    }

    #[test]
    fn failed_second_hop_is_dropped() {
        use crate::backend::{Completion, FnGenerator, GenerationRequest};
        let reg = Registry::builtin();
        let gen = FnGenerator::new(|req: &GenerationRequest| {
            let blank = req.lang_hint.as_deref() == Some("sw") && req.prompt.contains("Input: two");
            Ok(Completion::stop(if blank { "" } else { "two" }))
        });
        let c = Client::new("fn", "m", Arc::new(gen));
        let x = vec![
            CorpusLine::new("one", "ta", "t", 1).unwrap(),
            CorpusLine::new("two", "ta", "t", 2).unwrap(),
        ];
        let opts = TripletOptions { m_bt: 0, count: 2, ..Default::default() };
        let run = synthesize_triplets(&x, None, &[], &c, "sw", &opts, &reg).unwrap();
        // Every English intermediate is "two", so both second hops come back blank.
        assert_eq!(run.triplets.len(), 0);
        assert_eq!(run.dropped.len(), 2);
        assert!(run.dropped[0].ends_with("to sw: empty"));
    }
}
