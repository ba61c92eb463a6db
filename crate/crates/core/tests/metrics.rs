mod common;

use common::oracle::{self, PAIRS};
use ldp_core::metrics::{
    bleu, chrf_pp, fragmentation_ratio, rouge_l, sentence_bleu, sentence_chrf_pp, Scale, Tokenizer,
};
use proptest::prelude::*;

/// Frozen from an independent brute-force computation.
const S1_CHRF: f64 = 68.787707840416;
const S2_BLEU: f64 = 71.653131057379;

#[test]
fn frozen_constants() {
    let s1 = sentence_chrf_pp::<f64>("the cat sat on mat", "the cat sat on the mat");
    assert!((s1 - S1_CHRF).abs() < 1e-6, "{s1}");
    let s2 = sentence_bleu::<f64>("the cat sat", "the cat sat down", &Tokenizer::Whitespace);
    assert!((s2 - S2_BLEU).abs() < 1e-6, "{s2}");
    assert_eq!(sentence_bleu::<f64>("a b", "c d", &Tokenizer::Whitespace), 0.0);
}

#[test]
fn segment_level_matches_oracle() {
    let ws = Tokenizer::Whitespace;
    for (h, r) in PAIRS {
        let c = sentence_chrf_pp::<f64>(h, r);
        assert!((c - oracle::chrf_pp(&[(h, r)])).abs() < 1e-6, "chrF++ {h:?} / {r:?}");
        let b = sentence_bleu::<f64>(h, r, &ws);
        assert!((b - oracle::bleu(&[(h, r)])).abs() < 1e-6, "BLEU {h:?} / {r:?}");
        let ours = rouge_l::<f64>(h, r, &ws);
        let (p, rc, f) = oracle::rouge_l(h, r);
        assert!((ours.precision - p).abs() < 1e-12 && (ours.recall - rc).abs() < 1e-12 && (ours.f - f).abs() < 1e-12);
    }
}

#[test]
fn corpus_level_matches_oracle() {
    let hyps: Vec<&str> = PAIRS.iter().map(|p| p.0).collect();
    let refs: Vec<&str> = PAIRS.iter().map(|p| p.1).collect();
    let c = chrf_pp::<f64, _>(&hyps, &refs).unwrap();
    assert!((c.value - oracle::chrf_pp(&PAIRS)).abs() < 1e-6);
    assert_eq!((c.scale, c.segment_count), (Scale::Percent, 20));
    let b = bleu::<f64, _>(&hyps, &refs, &Tokenizer::Whitespace).unwrap();
    assert!((b.value - oracle::bleu(&PAIRS)).abs() < 1e-6);
}

#[test]
fn identity_hits_maxima() {
    let refs: Vec<&str> = PAIRS.iter().map(|p| p.1).collect();
    assert_eq!(chrf_pp::<f64, _>(&refs, &refs).unwrap().value, 100.0);
    assert_eq!(bleu::<f64, _>(&refs, &refs, &Tokenizer::Punct).unwrap().value, 100.0);
    for r in &refs {
        assert_eq!(rouge_l::<f64>(r, r, &Tokenizer::Whitespace).f, 1.0);
    }
}

#[test]
fn fragmentation_worked_ratios() {
    let x160 = ["t"; 160].join(" ");
    let x28 = ["t"; 28].join(" ");
    let en10 = ["w"; 10].join(" ");
    let ws = Tokenizer::Whitespace;
    assert_eq!(fragmentation_ratio::<f64, _>(&[(x160.as_str(), en10.as_str())], &ws, &ws).unwrap(), 16.0);
    assert_eq!(fragmentation_ratio::<f64, _>(&[(x28.as_str(), en10.as_str())], &ws, &ws).unwrap(), 2.8);
    assert_eq!(fragmentation_ratio::<f64, _>(&[("same text", "same text")], &Tokenizer::Byte, &Tokenizer::Byte).unwrap(), 1.0);
}

fn text() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!["a", "b", "the", "cat", "घर", "है", "学校", "мир", ","]), 0..8)
        .prop_map(|w| w.join(" "))
}

proptest! {
    #[test]
    fn bounded_and_symmetric(a in text(), b in text()) {
        let c: f64 = sentence_chrf_pp(&a, &b);
        prop_assert!((0.0..=100.0).contains(&c));
        let bl: f64 = sentence_bleu(&a, &b, &Tokenizer::Punct);
        prop_assert!((0.0..=100.0).contains(&bl));
        let ab = rouge_l::<f64>(&a, &b, &Tokenizer::Whitespace);
        let ba = rouge_l::<f64>(&b, &a, &Tokenizer::Whitespace);
        prop_assert!((0.0..=1.0).contains(&ab.f));
        prop_assert!((ab.f - ba.f).abs() < 1e-12);
    }

    #[test]
    fn matches_oracle_on_random_text(a in text(), b in text()) {
        let c: f64 = sentence_chrf_pp(&a, &b);
        prop_assert!((c - oracle::chrf_pp(&[(a.as_str(), b.as_str())])).abs() < 1e-6);
        let bl: f64 = sentence_bleu(&a, &b, &Tokenizer::Whitespace);
        prop_assert!((bl - oracle::bleu(&[(a.as_str(), b.as_str())])).abs() < 1e-6);
    }

    #[test]
    fn corpus_scores_ignore_segment_order(pairs in prop::collection::vec((text(), text()), 1..6), seed in any::<u64>()) {
        let hyps: Vec<&str> = pairs.iter().map(|p| p.0.as_str()).collect();
        let refs: Vec<&str> = pairs.iter().map(|p| p.1.as_str()).collect();
        let order = ldp_core::rng::SeededRng::new(seed).permutation(pairs.len());
        let h2: Vec<&str> = order.iter().map(|&i| hyps[i]).collect();
        let r2: Vec<&str> = order.iter().map(|&i| refs[i]).collect();
        let a = chrf_pp::<f64, _>(&hyps, &refs).unwrap().value;
        let b = chrf_pp::<f64, _>(&h2, &r2).unwrap().value;
        prop_assert!((a - b).abs() < 1e-9);
        let a = bleu::<f64, _>(&hyps, &refs, &Tokenizer::Punct).unwrap().value;
        let b = bleu::<f64, _>(&h2, &r2, &Tokenizer::Punct).unwrap().value;
        prop_assert!((a - b).abs() < 1e-9);
    }
}
