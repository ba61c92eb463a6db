use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{check_aligned, MetricError, MetricScore, Scale, Tokenizer};
use crate::num::{ratio, Scalar};

pub const MAX_ORDER: usize = 4;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BleuStats {
    pub matched: [u64; MAX_ORDER],
    pub hyp: [u64; MAX_ORDER],
    pub hyp_len: u64,
    pub ref_len: u64,
}

impl BleuStats {
    pub fn of(hyp: &[String], reference: &[String]) -> Self {
        let mut s = BleuStats {
            hyp_len: hyp.len() as u64,
            ref_len: reference.len() as u64,
            ..Default::default()
        };
        for n in 1..=MAX_ORDER {
            let mut refs: HashMap<&[String], u64> = HashMap::new();
            if reference.len() >= n {
                for g in reference.windows(n) {
                    *refs.entry(g).or_insert(0) += 1;
                }
            }
            let mut hyps: HashMap<&[String], u64> = HashMap::new();
            if hyp.len() >= n {
                for g in hyp.windows(n) {
                    *hyps.entry(g).or_insert(0) += 1;
                }
            }
            s.hyp[n - 1] = hyps.values().sum();
            s.matched[n - 1] = hyps
                .iter()
                .map(|(g, c)| (*c).min(refs.get(g).copied().unwrap_or(0)))
                .sum();
        }
        s
    }

    pub fn merge(&mut self, other: &BleuStats) {
        for n in 0..MAX_ORDER {
            self.matched[n] += other.matched[n];
            self.hyp[n] += other.hyp[n];
        }
        self.hyp_len += other.hyp_len;
        self.ref_len += other.ref_len;
    }

    /// Orders the hypothesis is too short to contain are left out of the
    /// geometric mean. A zero match count at order two or higher is smoothed
    /// to `1 / (2^k * hyp_count)`, `k` counting the zero orders seen so far.
    pub fn score<F: Scalar>(&self) -> F {
        if self.hyp_len == 0 || self.matched[0] == 0 {
            return F::zero();
        }
        let mut log_sum = F::zero();
        let mut used = 0usize;
        let mut k = 0i32;
        for n in 0..MAX_ORDER {
            if self.hyp[n] == 0 {
                continue;
            }
            let p = if self.matched[n] == 0 {
                k += 1;
                F::one() / (F::lit(2.0).powi(k) * F::from_u64(self.hyp[n]).unwrap_or_else(F::nan))
            } else {
                ratio::<F>(self.matched[n], self.hyp[n])
            };
            log_sum = log_sum + p.ln();
            used += 1;
        }
        let c = F::from_u64(self.hyp_len).unwrap_or_else(F::nan);
        let r = F::from_u64(self.ref_len).unwrap_or_else(F::nan);
        let bp = if c < r { (F::one() - r / c).exp() } else { F::one() };
        F::hundred() * bp * (log_sum / F::from_count(used)).exp()
    }
}

pub fn bleu_stats(hyp: &str, reference: &str, tok: &Tokenizer) -> BleuStats {
    BleuStats::of(&tok.tokenize(hyp), &tok.tokenize(reference))
}

pub fn sentence_bleu<F: Scalar>(hyp: &str, reference: &str, tok: &Tokenizer) -> F {
    bleu_stats(hyp, reference, tok).score()
}

/// Corpus BLEU with clipped counts and lengths summed over segments.
pub fn bleu<F: Scalar, S: AsRef<str>>(
    hyps: &[S],
    refs: &[S],
    tok: &Tokenizer,
) -> Result<MetricScore<F>, MetricError> {
    check_aligned(hyps, refs)?;
    let mut total = BleuStats::default();
    for (h, r) in hyps.iter().zip(refs) {
        total.merge(&bleu_stats(h.as_ref(), r.as_ref(), tok));
    }
    Ok(MetricScore {
        name: "bleu".into(),
        value: total.score(),
        scale: Scale::Percent,
        segment_count: hyps.len(),
    })
}
