use std::fmt;

use serde::{Deserialize, Serialize};

use super::{MetricError, OTHER};

/// Rows are intended languages in candidate order; columns are the
/// candidates followed by "##".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub counts: Vec<Vec<usize>>,
}

impl ConfusionMatrix {
    pub fn get(&self, intended: &str, predicted: &str) -> usize {
        let r = self.rows.iter().position(|x| x == intended);
        let c = self.columns.iter().position(|x| x == predicted);
        match (r, c) {
            (Some(r), Some(c)) => self.counts[r][c],
            _ => 0,
        }
    }

    pub fn row_sum(&self, intended: &str) -> usize {
        self.rows
            .iter()
            .position(|x| x == intended)
            .map_or(0, |r| self.counts[r].iter().sum())
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn is_diagonal(&self) -> bool {
        self.counts.iter().enumerate().all(|(r, row)| {
            row.iter()
                .enumerate()
                .all(|(c, n)| *n == 0 || self.rows[r] == self.columns[c])
        })
    }

    pub fn off_diagonal(&self) -> usize {
        self.total()
            - self
                .rows
                .iter()
                .map(|l| self.get(l, l))
                .sum::<usize>()
    }
}

/// Predictions outside the candidate set are counted under "##".
pub fn confusion_matrix<S: AsRef<str>>(
    records: &[(S, S)],
    candidates: &[S],
) -> Result<ConfusionMatrix, MetricError> {
    let rows: Vec<String> = candidates.iter().map(|c| c.as_ref().to_owned()).collect();
    let mut columns = rows.clone();
    columns.push(OTHER.to_owned());
    let mut counts = vec![vec![0usize; columns.len()]; rows.len()];
    for (intended, predicted) in records {
        let r = rows
            .iter()
            .position(|x| x == intended.as_ref())
            .ok_or_else(|| MetricError::UnknownLanguage(intended.as_ref().to_owned()))?;
        let c = rows
            .iter()
            .position(|x| x == predicted.as_ref())
            .unwrap_or(columns.len() - 1);
        counts[r][c] += 1;
    }
    Ok(ConfusionMatrix { rows, columns, counts })
}

impl fmt::Display for ConfusionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .columns
            .iter()
            .map(|c| c.chars().count())
            .chain(self.counts.iter().flatten().map(|n| n.to_string().len()))
            .max()
            .unwrap_or(2)
            .max(2);
        let head = self.rows.iter().map(|r| r.chars().count()).max().unwrap_or(0).max(8);
        write!(f, "{:<head$}", "intended")?;
        for c in &self.columns {
            write!(f, " {c:>width$}")?;
        }
        writeln!(f)?;
        for (r, row) in self.rows.iter().zip(&self.counts) {
            write!(f, "{r:<head$}")?;
            for n in row {
                write!(f, " {n:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
