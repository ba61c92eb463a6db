use std::io::BufRead;
use std::path::Path;

use serde::Deserialize;

use super::{has_line_break, CorpusError, CorpusLine};
use crate::jsonl::{self, DataFileError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    /// One sentence per line.
    PlainText,
    /// One `{text, lang, source_id}` object per line.
    Jsonl,
}

impl CorpusFormat {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl" | "json" | "ndjson") => CorpusFormat::Jsonl,
            _ => CorpusFormat::PlainText,
        }
    }
}

#[derive(Deserialize)]
struct RawRecord {
    text: String,
    lang: Option<String>,
    source_id: Option<String>,
}

/// Reads a corpus file. `lang` and `source_id` fill fields missing from
/// JSON records (and label every plain-text line). Line numbers are 1-based
/// physical file lines.
pub fn read_corpus(path: &Path, lang: &str, source_id: &str) -> Result<Vec<CorpusLine>, CorpusError> {
    let file = std::fs::File::open(path).map_err(|e| DataFileError::io(path, e))?;
    let reader = std::io::BufReader::new(file);
    let format = CorpusFormat::from_path(path);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| DataFileError::io(path, e))?;
        let line_no = i + 1;
        match format {
            CorpusFormat::PlainText => {
                let text = line.strip_suffix('\r').unwrap_or(&line);
                out.push(CorpusLine::new(text, lang, source_id, line_no)?);
            }
            CorpusFormat::Jsonl => {
                if line.trim().is_empty() {
                    continue;
                }
                let rec: RawRecord = serde_json::from_str(&line).map_err(|e| DataFileError::Parse {
                    path: path.to_owned(),
                    line: line_no,
                    message: e.to_string(),
                })?;
                if has_line_break(&rec.text) {
                    return Err(CorpusError::LineBreak { line_no });
                }
                out.push(CorpusLine {
                    text: rec.text,
                    lang: rec.lang.unwrap_or_else(|| lang.to_owned()),
                    source_id: rec.source_id.unwrap_or_else(|| source_id.to_owned()),
                    line_no,
                });
            }
        }
    }
    Ok(out)
}

pub fn write_corpus(path: &Path, lines: &[CorpusLine], format: CorpusFormat) -> Result<(), CorpusError> {
    match format {
        CorpusFormat::Jsonl => jsonl::write_jsonl(path, lines)?,
        CorpusFormat::PlainText => {
            let mut text = String::new();
            for l in lines {
                text.push_str(&l.text);
                text.push('\n');
            }
            jsonl::write_text(path, &text)?;
        }
    }
    Ok(())
}
