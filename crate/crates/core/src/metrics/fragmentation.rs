use super::{MetricError, Tokenizer};
use crate::num::Scalar;

/// Mean over aligned pairs of tokens(x) / tokens(en).
pub fn fragmentation_ratio<F: Scalar, S: AsRef<str>>(
    pairs: &[(S, S)],
    tok_x: &Tokenizer,
    tok_en: &Tokenizer,
) -> Result<F, MetricError> {
    if pairs.is_empty() {
        return Err(MetricError::NoSegments);
    }
    let mut sum = F::zero();
    for (i, (x, en)) in pairs.iter().enumerate() {
        let den = tok_en.count(en.as_ref());
        if den == 0 {
            return Err(MetricError::ZeroDenominator(i));
        }
        sum = sum + F::from_count(tok_x.count(x.as_ref())) / F::from_count(den);
    }
    Ok(sum / F::from_count(pairs.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_tokens_against_one() {
        let pairs = [("abcdefghijklmnop", "word")];
        let r: f64 =
            fragmentation_ratio(&pairs, &Tokenizer::Character, &Tokenizer::Whitespace).unwrap();
        assert_eq!(r, 16.0);
    }

    #[test]
    fn mean_of_ratios() {
        // 3/1 and 13/5 average to 2.8.
        let pairs = [("a b c", "one"), ("a b c d e f g h i j k l m", "one two three four five")];
        let r: f64 =
            fragmentation_ratio(&pairs, &Tokenizer::Whitespace, &Tokenizer::Whitespace).unwrap();
        assert!((r - 2.8).abs() < 1e-12);
    }

    #[test]
    fn zero_denominator() {
        let pairs = [("a", "b"), ("a", "  ")];
        assert_eq!(
            fragmentation_ratio::<f64, _>(&pairs, &Tokenizer::Whitespace, &Tokenizer::Whitespace),
            Err(MetricError::ZeroDenominator(1))
        );
    }
}
