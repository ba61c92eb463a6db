use serde::{Deserialize, Serialize};

use super::{Direction, SyntheticPair, SynthesisError};
use crate::lang::{Registry, PIVOT};
use crate::prompt::PromptError;

/// A rendered training sample. Loss is computed on `text[loss_start..loss_end]`
/// only, which is exactly the output side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinetuneRecord {
    pub text: String,
    pub loss_start: usize,
    pub loss_end: usize,
    pub x_lang: String,
    pub direction: Direction,
}

impl FinetuneRecord {
    fn render(input: &str, tag: &str, output: &str, x_lang: &str, direction: Direction) -> Self {
        let prefix = format!("{input}\n<{tag}>\n");
        let text = format!("{prefix}{output}");
        Self {
            loss_start: prefix.len(),
            loss_end: text.len(),
            text,
            x_lang: x_lang.to_owned(),
            direction,
        }
    }

    pub fn output(&self) -> &str {
        &self.text[self.loss_start..self.loss_end]
    }

    /// Splits the rendered text back into (input, tag, output).
    pub fn split(&self) -> Option<(&str, &str, &str)> {
        let prefix = self.text.get(..self.loss_start)?.strip_suffix(">\n")?;
        let (input, tag) = prefix.rsplit_once("\n<")?;
        Some((input, tag, self.output()))
    }
}

/// Renders every usable pair once per direction, in `directions` order.
pub fn export_finetune(
    pairs: &[SyntheticPair],
    directions: &[Direction],
    registry: &Registry,
) -> Result<Vec<FinetuneRecord>, SynthesisError> {
    let english = registry.get(PIVOT).map_err(PromptError::from)?.english_name.clone();
    let mut out = Vec::new();
    for pair in pairs.iter().filter(|p| p.is_usable()) {
        let x_name = &registry.get(&pair.x_lang).map_err(PromptError::from)?.english_name;
        for dir in directions {
            out.push(match dir {
                Direction::E2x => FinetuneRecord::render(&pair.en_text, x_name, &pair.x_text, &pair.x_lang, *dir),
                Direction::X2e => FinetuneRecord::render(&pair.x_text, &english, &pair.en_text, &pair.x_lang, *dir),
            });
        }
    }
    Ok(out)
}
