use super::{DocSumExemplar, PromptError, PromptText};
use crate::corpus::has_line_break;
use crate::lang::{Registry, PIVOT};

/// Marker line after which the English-pivoted instruction asks for the
/// final summary.
pub const XLT_MARKER: &str = "Final summary:";

/// English-pivoting instruction. `{language}` and `{document}` are replaced.
pub const DEFAULT_XLT_TEMPLATE: &str = "I want you to act as a multilingual summarization expert.\n\
Understand the {language} document below, summarize it in English in one sentence, then translate that English summary back into {language}.\n\
Write the translated summary on its own line, starting with \"Final summary:\".\n\
\n\
Document: {document}";

fn stop_blank_line() -> Vec<String> {
    vec!["\n\n".to_owned()]
}

/// Document/summary prompt. Serves both cross-lingual exemplars and
/// intra-lingual synthetic ones; only the exemplar source differs.
pub fn build_sum_prompt(
    exemplars: &[DocSumExemplar],
    doc: &str,
    lang: &str,
    registry: &Registry,
) -> Result<PromptText, PromptError> {
    registry.get(lang)?;
    let mut blocks = Vec::with_capacity(exemplars.len() + 1);
    for ex in exemplars {
        if has_line_break(&ex.summary) || ex.summary.trim().is_empty() {
            return Err(PromptError::InvalidExemplar("summary must be one non-empty line".into()));
        }
        blocks.push(format!("Document: {}\nSummary: {}", ex.doc, ex.summary));
    }
    blocks.push(format!("Document: {doc}\nSummary:"));
    Ok(PromptText {
        text: blocks.join("\n\n"),
        stop: stop_blank_line(),
        expected_lang: lang.to_owned(),
    })
}

/// Fills the English-pivoting template for one document.
pub fn build_xlt_sum_prompt(
    doc: &str,
    lang: &str,
    template: &str,
    registry: &Registry,
) -> Result<PromptText, PromptError> {
    for placeholder in ["{language}", "{document}"] {
        if !template.contains(placeholder) {
            return Err(PromptError::BadTemplate(placeholder));
        }
    }
    let name = &registry.get(lang)?.english_name;
    // language first so that braces inside the document survive untouched
    let text = template.replace("{language}", name).replace("{document}", doc);
    Ok(PromptText {
        text,
        stop: stop_blank_line(),
        expected_lang: lang.to_owned(),
    })
}

/// Plain instruction baseline.
pub fn build_basic_sum_prompt(doc: &str, lang: &str, registry: &Registry) -> Result<PromptText, PromptError> {
    let name = &registry.get(lang)?.english_name;
    Ok(PromptText {
        text: format!("Summarize the following {name} document in one sentence in {name}.\n\nDocument: {doc}\nSummary:"),
        stop: stop_blank_line(),
        expected_lang: lang.to_owned(),
    })
}

/// Asks an external judge for a single 1-5 quality rating.
pub fn build_judge_prompt(
    doc: &str,
    summary: &str,
    lang: &str,
    registry: &Registry,
) -> Result<PromptText, PromptError> {
    let name = &registry.get(lang)?.english_name;
    Ok(PromptText {
        text: format!(
            "You will be given a document written in {name} and a one-sentence summary of it.\n\
Rate the quality of the summary (relevance, consistency, fluency in {name}) on a scale from 1 (worst) to 5 (best).\n\
Answer with a single integer.\n\
\n\
Document: {doc}\n\
\n\
Summary: {summary}\n\
\n\
Rating:"
        ),
        stop: vec!["\n".to_owned()],
        expected_lang: PIVOT.to_owned(),
    })
}
