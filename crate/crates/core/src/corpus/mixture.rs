use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CorpusError, CorpusLine};
use crate::num::Scalar;
use crate::rng::SeededRng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureEntry<F> {
    pub lang: String,
    pub size: u64,
    pub probability: F,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureWeights<F> {
    pub entries: Vec<MixtureEntry<F>>,
    pub temperature: F,
}

impl<F: Scalar> MixtureWeights<F> {
    pub fn probability(&self, lang: &str) -> Option<F> {
        self.entries
            .iter()
            .find(|e| e.lang == lang)
            .map(|e| e.probability)
    }
}

/// Temperature-smoothed sampling probabilities:
/// `p_i = (n_i / N)^(1/T) / sum_j (n_j / N)^(1/T)` with `N = sum n_i`.
///
/// Evaluated in log space so that large corpora at small temperatures do not
/// underflow; `T = 1` returns the raw proportions `n_i / N` directly.
pub fn mixture_weights<F: Scalar>(
    sizes: &[(String, u64)],
    temperature: F,
) -> Result<MixtureWeights<F>, CorpusError> {
    if sizes.is_empty() {
        return Err(CorpusError::InvalidSizes("no languages".into()));
    }
    if let Some((lang, _)) = sizes.iter().find(|(_, n)| *n == 0) {
        return Err(CorpusError::InvalidSizes(format!("`{lang}` has size 0")));
    }
    if !temperature.is_finite() || temperature <= F::zero() {
        return Err(CorpusError::InvalidTemperature);
    }
    let total: F = sizes.iter().map(|(_, n)| F::from_u64(*n).unwrap()).sum();
    let shares: Vec<F> = sizes
        .iter()
        .map(|(_, n)| F::from_u64(*n).unwrap() / total)
        .collect();

    let probabilities: Vec<F> = if temperature == F::one() {
        shares
    } else {
        let logs: Vec<F> = shares.iter().map(|s| s.ln() / temperature).collect();
        let max = logs.iter().copied().fold(F::neg_infinity(), F::max);
        let unnorm: Vec<F> = logs.iter().map(|l| (*l - max).exp()).collect();
        let z: F = unnorm.iter().copied().sum();
        unnorm.into_iter().map(|w| w / z).collect()
    };

    Ok(MixtureWeights {
        entries: sizes
            .iter()
            .zip(probabilities)
            .map(|((lang, size), probability)| MixtureEntry {
                lang: lang.clone(),
                size: *size,
                probability,
            })
            .collect(),
        temperature,
    })
}

/// Draws `n` lines from a weighted mixture of corpora.
///
/// With one generator seeded from `seed`: first, for each weighted language
/// in entry order, a Fisher-Yates permutation of its corpus; then per draw a
/// `unit()` value selects the first language whose cumulative probability
/// exceeds it, and that language's next line in permuted order is emitted.
/// A language cycles through the same order again once exhausted.
pub fn draw_mixture<F: Scalar>(
    weights: &MixtureWeights<F>,
    corpora: &BTreeMap<String, Vec<CorpusLine>>,
    n: usize,
    seed: u64,
) -> Result<Vec<CorpusLine>, CorpusError> {
    let mut rng = SeededRng::new(seed);
    let mut pools = Vec::with_capacity(weights.entries.len());
    let mut cumulative = Vec::with_capacity(weights.entries.len());
    let mut acc = 0.0f64;
    for entry in &weights.entries {
        let lines = corpora
            .get(&entry.lang)
            .filter(|l| !l.is_empty())
            .ok_or_else(|| CorpusError::MissingCorpus(entry.lang.clone()))?;
        pools.push((lines, rng.permutation(lines.len()), 0usize));
        acc += entry.probability.to_f64().unwrap_or(0.0);
        cumulative.push(acc);
    }

    let last = pools.len() - 1;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let u = rng.unit() * acc;
        let pick = cumulative.iter().position(|c| u < *c).unwrap_or(last);
        let (lines, order, cursor) = &mut pools[pick];
        out.push(lines[order[*cursor % order.len()]].clone());
        *cursor += 1;
    }
    Ok(out)
}
