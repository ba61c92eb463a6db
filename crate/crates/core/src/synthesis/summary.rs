use crate::backend::{Client, DEFAULT_MAX_TOKENS_SUMMARY};
use crate::lang::Registry;
use crate::prompt::{
    build_sum_prompt, build_xlt_sum_prompt, parse_marked, DocSumExemplar, DEFAULT_XLT_TEMPLATE, XLT_MARKER,
};

use super::SynthesisError;

/// Summarizes the first `m` documents in `lang` to serve as intra-lingual
/// exemplars. With no cross-lingual exemplars the English-pivoting
/// instruction is used instead. Only the first line of each summary is kept;
/// failed or empty summaries are logged and skipped.
pub fn synthesize_sum_exemplars(
    docs: &[String],
    lang: &str,
    cross_exemplars: &[DocSumExemplar],
    client: &Client,
    m: usize,
    registry: &Registry,
) -> Result<Vec<DocSumExemplar>, SynthesisError> {
    let docs = &docs[..m.min(docs.len())];
    let prompts = docs
        .iter()
        .map(|d| {
            if cross_exemplars.is_empty() {
                build_xlt_sum_prompt(d, lang, DEFAULT_XLT_TEMPLATE, registry)
            } else {
                build_sum_prompt(cross_exemplars, d, lang, registry)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let reqs: Vec<_> = prompts
        .iter()
        .map(|p| client.request(p, DEFAULT_MAX_TOKENS_SUMMARY))
        .collect();
    let marker = if cross_exemplars.is_empty() { XLT_MARKER } else { "Summary:" };
    let mut out = Vec::new();
    for (i, (req, res)) in reqs.iter().zip(client.generate_batch(&reqs, client.parallelism())).enumerate() {
        if let Some(err) = &res.error {
            log::warn!("summary exemplar {i} failed: {err}");
            continue;
        }
        let summary = parse_marked(&res.text, marker, &req.stop);
        if summary.is_empty() {
            log::warn!("summary exemplar {i} is empty");
            continue;
        }
        out.push(DocSumExemplar {
            doc: docs[i].clone(),
            summary: summary.text,
            lang: lang.to_owned(),
        });
    }
    Ok(out)
}
