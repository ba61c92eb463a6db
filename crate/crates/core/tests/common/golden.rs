//! Prompt layouts pinned as fixture files.

use std::path::PathBuf;

use ldp_core::lang::Registry;
use ldp_core::prompt::{
    build_e2x_prompt, build_pivot_prompt, build_x2e_prompt, default_ldp_exemplars, Exemplar, PivotTriplet,
    Provenance, TagStyle,
};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/prompts")
}

fn triplet(x: &str, en: &str, y: &str) -> PivotTriplet {
    PivotTriplet {
        x_text: x.into(),
        en_text: en.into(),
        y_text: y.into(),
        x_lang: "ta".into(),
        y_lang: "sw".into(),
    }
}

/// (fixture file name, rendered prompt text)
pub fn cases() -> Vec<(&'static str, String)> {
    let reg = Registry::builtin();
    let ldp = default_ldp_exemplars();
    let fr = vec![ldp[3].clone()];
    let air_ig = vec![Exemplar::new("en", "Air ticket", "ig", "Tiketi ụgbọ elu", Provenance::SyntheticBt)];
    let air_mr = vec![Exemplar::new("en", "Air ticket", "mr", "विमान तिकीट", Provenance::SyntheticBt)];
    let t1 = triplet("வணக்கம் நண்பா", "hello friend", "jambo rafiki");
    let t2 = triplet("நன்றி நண்பா", "thanks friend", "asante rafiki");
    let t3 = triplet("வணக்கம்", "hello", "jambo");
    let x2e = |ex: &[Exemplar], style| build_x2e_prompt(ex, "Ịmụ igwe", "ig", style, &reg).unwrap().text;
    let e2x = |ex: &[Exemplar], tgt, style| build_e2x_prompt(ex, "Machine learning", tgt, style, &reg).unwrap().text;
    let pivot = |ts: &[PivotTriplet]| build_pivot_prompt(ts, "நன்றி", "ta", "sw", &reg).unwrap().text;
    use TagStyle::*;
    vec![
        ("x2e_english_0.txt", x2e(&[], EnglishTag)),
        ("x2e_english_1.txt", x2e(&fr, EnglishTag)),
        ("x2e_english_4.txt", x2e(&ldp, EnglishTag)),
        ("x2e_native_1.txt", x2e(&fr, NativeTag)),
        ("x2e_native_4.txt", x2e(&ldp, NativeTag)),
        ("x2e_notag_0.txt", x2e(&[], NoTag)),
        ("x2e_notag_4.txt", x2e(&ldp, NoTag)),
        ("e2x_english_0.txt", e2x(&[], "ig", EnglishTag)),
        ("e2x_english_1.txt", e2x(&air_ig, "ig", EnglishTag)),
        ("e2x_native_0.txt", e2x(&[], "mr", NativeTag)),
        ("e2x_native_1.txt", e2x(&air_mr, "mr", NativeTag)),
        ("e2x_notag_1.txt", e2x(&air_ig, "ig", NoTag)),
        ("pivot_1.txt", pivot(std::slice::from_ref(&t1))),
        ("pivot_3.txt", pivot(&[t1, t2, t3])),
    ]
}

/// Names of cases whose rendering differs from the pinned file.
pub fn mismatches() -> Vec<String> {
    cases()
        .into_iter()
        .filter(|(name, text)| std::fs::read(fixture_dir().join(name)).ok().as_deref() != Some(text.as_bytes()))
        .map(|(name, _)| name.to_owned())
        .collect()
}
