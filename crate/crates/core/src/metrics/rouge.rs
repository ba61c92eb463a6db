use serde::{Deserialize, Serialize};

use super::{check_aligned, MetricError, MetricScore, Scale, Tokenizer};
use crate::num::{ratio, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RougeL<F> {
    pub precision: F,
    pub recall: F,
    pub f: F,
}

fn lcs_len(a: &[String], b: &[String]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y {
                prev[j] + 1
            } else {
                cur[j].max(prev[j + 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Longest-common-subsequence F-measure with equal weight on precision and recall.
pub fn rouge_l<F: Scalar>(hyp: &str, reference: &str, tok: &Tokenizer) -> RougeL<F> {
    let h = tok.tokenize(hyp);
    let r = tok.tokenize(reference);
    let lcs = lcs_len(&h, &r) as u64;
    let precision = ratio::<F>(lcs, h.len() as u64);
    let recall = ratio::<F>(lcs, r.len() as u64);
    let f = if precision + recall == F::zero() {
        F::zero()
    } else {
        F::lit(2.0) * precision * recall / (precision + recall)
    };
    RougeL { precision, recall, f }
}

/// Mean segment-level ROUGE-L F.
pub fn rouge_l_corpus<F: Scalar, S: AsRef<str>>(
    hyps: &[S],
    refs: &[S],
    tok: &Tokenizer,
) -> Result<MetricScore<F>, MetricError> {
    check_aligned(hyps, refs)?;
    let sum: F = hyps
        .iter()
        .zip(refs)
        .map(|(h, r)| rouge_l::<F>(h.as_ref(), r.as_ref(), tok).f)
        .sum();
    Ok(MetricScore {
        name: "rouge-l".into(),
        value: sum / F::from_count(hyps.len()),
        scale: Scale::Unit,
        segment_count: hyps.len(),
    })
}
