use super::{Exemplar, PivotTriplet, PromptError, PromptText, TagStyle};
use crate::corpus::has_line_break;
use crate::lang::{Registry, PIVOT};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Input,
    Output,
}

/// Line label for `code` on one side of a pair.
pub fn label(code: &str, side: Side, style: TagStyle, registry: &Registry) -> Result<String, PromptError> {
    let spec = registry.get(code)?;
    Ok(match style {
        TagStyle::EnglishTag => spec.english_name.clone(),
        TagStyle::NativeTag => spec.native_name.clone(),
        TagStyle::NoTag => match side {
            Side::Input => "Input".to_owned(),
            Side::Output => "Output".to_owned(),
        },
    })
}

pub fn render_pair(ex: &Exemplar, style: TagStyle, registry: &Registry) -> Result<String, PromptError> {
    let src = label(&ex.src_lang, Side::Input, style, registry)?;
    let tgt = label(&ex.tgt_lang, Side::Output, style, registry)?;
    Ok(format!("{src}: {}\n{tgt}: {}", ex.src_text, ex.tgt_text))
}

fn check_input(input: &str) -> Result<(), PromptError> {
    if has_line_break(input) {
        Err(PromptError::MultilineInput)
    } else {
        Ok(())
    }
}

/// Pair prompt without any constraint on the exemplars' languages; the
/// building block for every X-to-Y pair layout.
pub fn build_pair_prompt(
    exemplars: &[Exemplar],
    input: &str,
    src_lang: &str,
    tgt_lang: &str,
    style: TagStyle,
    registry: &Registry,
) -> Result<PromptText, PromptError> {
    check_input(input)?;
    let mut lines = Vec::with_capacity(exemplars.len() + 1);
    for ex in exemplars {
        ex.validate()?;
        lines.push(render_pair(ex, style, registry)?);
    }
    let src = label(src_lang, Side::Input, style, registry)?;
    let tgt = label(tgt_lang, Side::Output, style, registry)?;
    lines.push(format!("{src}: {input}\n{tgt}:"));
    Ok(PromptText {
        text: lines.join("\n"),
        stop: vec!["\n".to_owned()],
        expected_lang: tgt_lang.to_owned(),
    })
}

/// X to English with linguistically diverse (or any English-target) exemplars.
pub fn build_x2e_prompt(
    exemplars: &[Exemplar],
    input: &str,
    src_lang: &str,
    style: TagStyle,
    registry: &Registry,
) -> Result<PromptText, PromptError> {
    if let Some(ex) = exemplars.iter().find(|e| e.tgt_lang != PIVOT) {
        return Err(PromptError::MixedTargetLanguage {
            expected: PIVOT.to_owned(),
            found: ex.tgt_lang.clone(),
        });
    }
    build_pair_prompt(exemplars, input, src_lang, PIVOT, style, registry)
}

/// English to X with intra-lingual exemplars; every exemplar must be En to `tgt_lang`.
pub fn build_e2x_prompt(
    exemplars: &[Exemplar],
    input: &str,
    tgt_lang: &str,
    style: TagStyle,
    registry: &Registry,
) -> Result<PromptText, PromptError> {
    for ex in exemplars {
        if ex.tgt_lang != tgt_lang {
            return Err(PromptError::MixedTargetLanguage {
                expected: tgt_lang.to_owned(),
                found: ex.tgt_lang.clone(),
            });
        }
        if ex.src_lang != PIVOT {
            return Err(PromptError::InvalidExemplar(format!(
                "source side is `{}`, expected `{PIVOT}`",
                ex.src_lang
            )));
        }
    }
    build_pair_prompt(exemplars, input, PIVOT, tgt_lang, style, registry)
}

pub fn render_triplet(t: &PivotTriplet, registry: &Registry) -> Result<String, PromptError> {
    let x = label(&t.x_lang, Side::Input, TagStyle::EnglishTag, registry)?;
    let en = label(PIVOT, Side::Output, TagStyle::EnglishTag, registry)?;
    let y = label(&t.y_lang, Side::Output, TagStyle::EnglishTag, registry)?;
    Ok(format!("{x}: {}\n{en}: {}\n{y}: {}", t.x_text, t.en_text, t.y_text))
}

/// X to Y through an English intermediate. The completion is expected to
/// hold the English line, a newline, the target label and the translation.
pub fn build_pivot_prompt(
    triplets: &[PivotTriplet],
    input: &str,
    src_lang: &str,
    tgt_lang: &str,
    registry: &Registry,
) -> Result<PromptText, PromptError> {
    if triplets.is_empty() {
        return Err(PromptError::NeedTriplets);
    }
    check_input(input)?;
    let mut blocks = Vec::with_capacity(triplets.len() + 1);
    for t in triplets {
        if t.x_lang != src_lang || t.y_lang != tgt_lang {
            return Err(PromptError::TripletMismatch {
                expected: format!("{src_lang}-{tgt_lang}"),
                found: format!("{}-{}", t.x_lang, t.y_lang),
            });
        }
        t.validate()?;
        blocks.push(render_triplet(t, registry)?);
    }
    let x = label(src_lang, Side::Input, TagStyle::EnglishTag, registry)?;
    let en = label(PIVOT, Side::Output, TagStyle::EnglishTag, registry)?;
    blocks.push(format!("{x}: {input}\n{en}:"));
    Ok(PromptText {
        text: blocks.join("\n\n"),
        stop: vec!["\n\n".to_owned()],
        expected_lang: tgt_lang.to_owned(),
    })
}
