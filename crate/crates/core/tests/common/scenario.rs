//! On-disk experiment workspaces driven by word-table mock backends.

use std::path::{Path, PathBuf};

use ldp_core::backend::{MockConfig, WordTable};
use ldp_core::harness::TestItem;
use ldp_core::jsonl::{write_jsonl, write_text};
use ldp_core::rng::SeededRng;

use super::corpora::{HI, IG, MR, SW};

pub const TA: &[&str] = &[
    "வணக்கம்", "நண்பா", "நன்றி", "வீடு", "தண்ணீர்", "உணவு", "புத்தகம்", "பள்ளி", "குழந்தை", "நகரம்",
    "கிராமம்", "நாள்", "இரவு", "வேலை", "நேரம்", "இன்று", "நாளை", "பெரிய", "சிறிய", "நல்ல",
];

/// Synthetic English vocabulary `en0 .. en{n-1}`.
pub fn en_words(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("en{i}")).collect()
}

pub fn table(src: &str, tgt: &str, from: &[&str], to: &[String]) -> WordTable {
    WordTable::new(src, tgt, from.iter().copied().zip(to.iter().map(String::as_str)))
}

pub fn table_from_en(tgt: &str, en: &[String], to: &[&str]) -> WordTable {
    WordTable::new("en", tgt, en.iter().map(String::as_str).zip(to.iter().copied()))
}

/// Random sentences of 3 to 8 words.
pub fn sentences_of(words: &[String], count: usize, seed: u64) -> Vec<String> {
    let mut rng = SeededRng::new(seed);
    (0..count)
        .map(|_| {
            let len = 3 + rng.below(6) as usize;
            (0..len)
                .map(|_| words[rng.below(words.len() as u64) as usize].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

pub fn owned(words: &[&str]) -> Vec<String> {
    words.iter().map(|w| w.to_string()).collect()
}

pub fn write_lines(path: &Path, lines: &[String]) {
    let mut text = lines.join("\n");
    text.push('\n');
    write_text(path, &text).unwrap();
}

pub fn write_mock(path: &Path, tables: Vec<WordTable>, decoy: Option<&str>) {
    let cfg = MockConfig::Tables {
        tables,
        confusion_decoy: decoy.map(str::to_owned),
        default: String::new(),
    };
    write_text(path, &serde_json::to_string_pretty(&cfg).unwrap()).unwrap();
}

pub fn write_test_set(path: &Path, sources: &[String], map: impl Fn(&str) -> String) {
    let items: Vec<TestItem> = sources
        .iter()
        .map(|s| TestItem { source: s.clone(), reference: map(s) })
        .collect();
    write_jsonl(path, &items).unwrap();
}

pub const BACKEND_TOML: &str = r#"
[[backends]]
backend_id = "mock"
kind = "mock"
model_id = "tables"
parallelism = 4

[backends.mock]
mode = "file"
path = "mock.json"
"#;

/// Igbo closed loop: ig<->en tables, 100 unlabeled Igbo lines and a
/// 30-item English-to-Igbo test set.
pub struct IgboLoop {
    pub root: PathBuf,
    pub table: WordTable,
}

pub fn igbo_loop(root: &Path) -> IgboLoop {
    let en = en_words(IG.len());
    let t = table_from_en("ig", &en, IG);
    write_mock(&root.join("mock.json"), vec![t.clone()], None);
    write_lines(&root.join("ig.unlabeled.txt"), &sentences_of(&owned(IG), 100, 1));
    let tests = sentences_of(&en, 30, 2);
    write_test_set(&root.join("e2x.ig.jsonl"), &tests, |s| t.apply(s));
    let rev = t.reversed();
    let x_tests = sentences_of(&owned(IG), 30, 3);
    write_test_set(&root.join("x2e.ig.jsonl"), &x_tests, |s| rev.apply(s));
    IgboLoop { root: root.to_path_buf(), table: t }
}

pub fn igbo_config(task: &str, method: &str, extra: &str) -> String {
    format!(
        r#"task = "{task}"
languages = ["ig"]
method = "{method}"
backend_id = "mock"
seed = 7
shots = 8
filter_unlabeled = false
{extra}

[paths.test_sets]
ig = "{task}.ig.jsonl"

[paths.unlabeled]
ig = "ig.unlabeled.txt"
{BACKEND_TOML}"#
    )
}

/// Tamil to Swahili through English.
pub struct PivotLoop {
    pub ta_en: WordTable,
    pub en_sw: WordTable,
}

pub fn pivot_loop(root: &Path) -> PivotLoop {
    let en = en_words(TA.len());
    let ta_en = table("ta", "en", TA, &en);
    let en_sw = table_from_en("sw", &en, &SW[..TA.len()]);
    write_mock(&root.join("mock.json"), vec![ta_en.clone(), en_sw.clone()], None);
    write_lines(&root.join("ta.unlabeled.txt"), &sentences_of(&owned(TA), 140, 4));
    write_lines(&root.join("sw.unlabeled.txt"), &sentences_of(&owned(&SW[..TA.len()]), 40, 5));
    let tests = sentences_of(&owned(TA), 25, 6);
    write_test_set(&root.join("x2y.ta.jsonl"), &tests, |s| en_sw.apply(&ta_en.apply(s)));
    write_text(
        &root.join("x2y.toml"),
        &format!(
            r#"task = "x2y"
languages = ["ta"]
target = "sw"
method = "ldp_bt"
backend_id = "mock"
seed = 3
shots = 4
triplets = 3
filter_unlabeled = false

[paths.test_sets]
ta = "x2y.ta.jsonl"

[paths.unlabeled]
ta = "ta.unlabeled.txt"
sw = "sw.unlabeled.txt"
{BACKEND_TOML}"#
        ),
    )
    .unwrap();
    PivotLoop { ta_en, en_sw }
}

/// English to Marathi and Hindi under a mock that answers in Hindi whenever
/// the exemplar target sides disagree with the requested language.
pub fn confusion_setup(root: &Path, method: &str) -> PathBuf {
    let en = en_words(HI.len().min(MR.len()));
    let en_hi = table_from_en("hi", &en, HI);
    let en_mr = table_from_en("mr", &en, MR);
    write_mock(&root.join("mock.json"), vec![en_hi.clone(), en_mr.clone()], Some("hi"));
    write_lines(&root.join("hi.unlabeled.txt"), &sentences_of(&owned(HI), 30, 7));
    write_lines(&root.join("mr.unlabeled.txt"), &sentences_of(&owned(MR), 30, 8));
    let tests = sentences_of(&en, 40, 9);
    write_test_set(&root.join("hi.jsonl"), &tests, |s| en_hi.apply(s));
    write_test_set(&root.join("mr.jsonl"), &tests, |s| en_mr.apply(s));
    write_lines(&root.join("hi.seed.txt"), &super::corpora::sentences(HI, 300, 21));
    write_lines(&root.join("mr.seed.txt"), &super::corpora::sentences(MR, 300, 22));
    let path = root.join(format!("{method}.toml"));
    write_text(
        &path,
        &format!(
            r#"task = "e2x"
languages = ["hi", "mr"]
method = "{method}"
tag_style = "english_tag"
backend_id = "mock"
seed = 11
shots = 6
filter_unlabeled = false

[groups]
indic = ["hi", "mr"]

[paths.test_sets]
hi = "hi.jsonl"
mr = "mr.jsonl"

[paths.unlabeled]
hi = "hi.unlabeled.txt"
mr = "mr.unlabeled.txt"

[paths.lid_seeds]
hi = "hi.seed.txt"
mr = "mr.seed.txt"
{BACKEND_TOML}"#
        ),
    )
    .unwrap();
    path
}
