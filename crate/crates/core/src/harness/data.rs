use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{HarnessError, TestSetSource};
use crate::jsonl::{read_jsonl, read_text};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestItem {
    pub source: String,
    pub reference: String,
}

/// A scored output for `evaluate`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub hypothesis: String,
    pub reference: String,
    pub lang: String,
}

fn plain_lines(path: &Path) -> Result<Vec<String>, HarnessError> {
    Ok(read_text(path)?
        .lines()
        .map(|l| l.strip_suffix('\r').unwrap_or(l).to_owned())
        .collect())
}

pub fn load_test_set(src: &TestSetSource) -> Result<Vec<TestItem>, HarnessError> {
    match src {
        TestSetSource::Jsonl(path) => Ok(read_jsonl(path)?),
        TestSetSource::Paired { source, reference } => {
            let s = plain_lines(source)?;
            let r = plain_lines(reference)?;
            if s.len() != r.len() {
                return Err(HarnessError::Config(format!(
                    "{} has {} lines but {} has {}",
                    source.display(),
                    s.len(),
                    reference.display(),
                    r.len()
                )));
            }
            Ok(s.into_iter()
                .zip(r)
                .map(|(source, reference)| TestItem { source, reference })
                .collect())
        }
    }
}
