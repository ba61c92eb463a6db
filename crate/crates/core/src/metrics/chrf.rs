use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::{check_aligned, MetricError, MetricScore, Scale};
use crate::num::{ratio, Scalar};

pub const CHAR_ORDER: usize = 6;
pub const WORD_ORDER: usize = 2;
pub const BETA: f64 = 2.0;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCounts {
    pub matched: u64,
    pub hyp: u64,
    pub reference: u64,
}

impl OrderCounts {
    fn add(&mut self, other: &OrderCounts) {
        self.matched += other.matched;
        self.hyp += other.hyp;
        self.reference += other.reference;
    }

    /// Orders with nothing on either side carry no information.
    pub fn is_empty(&self) -> bool {
        self.hyp == 0 && self.reference == 0
    }
}

/// Character orders 1..=6 followed by word orders 1..=2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NGramStats {
    pub orders: Vec<OrderCounts>,
}

impl Default for NGramStats {
    fn default() -> Self {
        Self {
            orders: vec![OrderCounts::default(); CHAR_ORDER + WORD_ORDER],
        }
    }
}

impl NGramStats {
    pub fn merge(&mut self, other: &NGramStats) {
        for (a, b) in self.orders.iter_mut().zip(&other.orders) {
            a.add(b);
        }
    }

    pub fn score<F: Scalar>(&self) -> F {
        let live: Vec<&OrderCounts> = self.orders.iter().filter(|o| !o.is_empty()).collect();
        if live.is_empty() {
            // Both sides are blank, so they agree.
            return F::hundred();
        }
        let n = F::from_count(live.len());
        let p = live
            .iter()
            .map(|o| ratio::<F>(o.matched, o.hyp))
            .sum::<F>()
            / n;
        let r = live
            .iter()
            .map(|o| ratio::<F>(o.matched, o.reference))
            .sum::<F>()
            / n;
        let b2 = F::lit(BETA * BETA);
        let den = b2 * p + r;
        if den == F::zero() {
            return F::zero();
        }
        F::hundred() * (F::one() + b2) * p * r / den
    }
}

fn ngram_counts<T: Hash + Eq>(items: &[T], n: usize) -> HashMap<&[T], u64> {
    let mut map = HashMap::new();
    if items.len() >= n {
        for w in items.windows(n) {
            *map.entry(w).or_insert(0) += 1;
        }
    }
    map
}

fn order_counts<T: Hash + Eq>(hyp: &[T], reference: &[T], n: usize) -> OrderCounts {
    let h = ngram_counts(hyp, n);
    let r = ngram_counts(reference, n);
    let matched = h
        .iter()
        .map(|(g, c)| (*c).min(r.get(g).copied().unwrap_or(0)))
        .sum();
    OrderCounts {
        matched,
        hyp: h.values().sum(),
        reference: r.values().sum(),
    }
}

pub fn chrf_stats(hyp: &str, reference: &str) -> NGramStats {
    let hc: Vec<char> = hyp.chars().filter(|c| !c.is_whitespace()).collect();
    let rc: Vec<char> = reference.chars().filter(|c| !c.is_whitespace()).collect();
    let hw: Vec<&str> = hyp.split_whitespace().collect();
    let rw: Vec<&str> = reference.split_whitespace().collect();
    let mut orders = Vec::with_capacity(CHAR_ORDER + WORD_ORDER);
    for n in 1..=CHAR_ORDER {
        orders.push(order_counts(&hc, &rc, n));
    }
    for n in 1..=WORD_ORDER {
        orders.push(order_counts(&hw, &rw, n));
    }
    NGramStats { orders }
}

pub fn sentence_chrf_pp<F: Scalar>(hyp: &str, reference: &str) -> F {
    chrf_stats(hyp, reference).score()
}

/// Corpus chrF++: n-gram counts are summed over all segments before scoring.
pub fn chrf_pp<F: Scalar, S: AsRef<str>>(
    hyps: &[S],
    refs: &[S],
) -> Result<MetricScore<F>, MetricError> {
    check_aligned(hyps, refs)?;
    let mut total = NGramStats::default();
    for (h, r) in hyps.iter().zip(refs) {
        total.merge(&chrf_stats(h.as_ref(), r.as_ref()));
    }
    Ok(MetricScore {
        name: "chrf++".into(),
        value: total.score(),
        scale: Scale::Percent,
        segment_count: hyps.len(),
    })
}
