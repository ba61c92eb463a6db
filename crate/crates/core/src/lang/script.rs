use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use unicode_general_category::{get_general_category, GeneralCategory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ScriptClass {
    Latin,
    Devanagari,
    Bengali,
    Tamil,
    Telugu,
    Kannada,
    Malayalam,
    Odia,
    Gujarati,
    Gurmukhi,
    Arabic,
    Han,
    Cyrillic,
    Other,
}

impl ScriptClass {
    pub const ALL: [ScriptClass; 14] = [
        ScriptClass::Latin,
        ScriptClass::Devanagari,
        ScriptClass::Bengali,
        ScriptClass::Tamil,
        ScriptClass::Telugu,
        ScriptClass::Kannada,
        ScriptClass::Malayalam,
        ScriptClass::Odia,
        ScriptClass::Gujarati,
        ScriptClass::Gurmukhi,
        ScriptClass::Arabic,
        ScriptClass::Han,
        ScriptClass::Cyrillic,
        ScriptClass::Other,
    ];

    pub fn all() -> BTreeSet<ScriptClass> {
        Self::ALL.into_iter().collect()
    }

    /// Every class except Latin.
    pub fn non_latin() -> BTreeSet<ScriptClass> {
        Self::ALL
            .into_iter()
            .filter(|s| *s != ScriptClass::Latin)
            .collect()
    }
}

impl fmt::Display for ScriptClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// Inclusive code point ranges per script block.
const RANGES: &[(u32, u32, ScriptClass)] = &[
    (0x0041, 0x005A, ScriptClass::Latin),
    (0x0061, 0x007A, ScriptClass::Latin),
    (0x00AA, 0x00AA, ScriptClass::Latin),
    (0x00BA, 0x00BA, ScriptClass::Latin),
    (0x00C0, 0x02AF, ScriptClass::Latin),
    (0x1D00, 0x1D7F, ScriptClass::Latin),
    (0x1E00, 0x1EFF, ScriptClass::Latin),
    (0x2C60, 0x2C7F, ScriptClass::Latin),
    (0xA720, 0xA7FF, ScriptClass::Latin),
    (0xAB30, 0xAB6F, ScriptClass::Latin),
    (0xFF21, 0xFF3A, ScriptClass::Latin),
    (0xFF41, 0xFF5A, ScriptClass::Latin),
    (0x0400, 0x052F, ScriptClass::Cyrillic),
    (0x1C80, 0x1C8F, ScriptClass::Cyrillic),
    (0x2DE0, 0x2DFF, ScriptClass::Cyrillic),
    (0xA640, 0xA69F, ScriptClass::Cyrillic),
    (0x0600, 0x06FF, ScriptClass::Arabic),
    (0x0750, 0x077F, ScriptClass::Arabic),
    (0x0870, 0x08FF, ScriptClass::Arabic),
    (0xFB50, 0xFDFF, ScriptClass::Arabic),
    (0xFE70, 0xFEFF, ScriptClass::Arabic),
    (0x0900, 0x097F, ScriptClass::Devanagari),
    (0xA8E0, 0xA8FF, ScriptClass::Devanagari),
    (0x0980, 0x09FF, ScriptClass::Bengali),
    (0x0A00, 0x0A7F, ScriptClass::Gurmukhi),
    (0x0A80, 0x0AFF, ScriptClass::Gujarati),
    (0x0B00, 0x0B7F, ScriptClass::Odia),
    (0x0B80, 0x0BFF, ScriptClass::Tamil),
    (0x0C00, 0x0C7F, ScriptClass::Telugu),
    (0x0C80, 0x0CFF, ScriptClass::Kannada),
    (0x0D00, 0x0D7F, ScriptClass::Malayalam),
    (0x2E80, 0x2FDF, ScriptClass::Han),
    (0x3005, 0x3007, ScriptClass::Han),
    (0x3021, 0x3029, ScriptClass::Han),
    (0x3400, 0x4DBF, ScriptClass::Han),
    (0x4E00, 0x9FFF, ScriptClass::Han),
    (0xF900, 0xFAFF, ScriptClass::Han),
    (0x20000, 0x3134F, ScriptClass::Han),
];

/// Script class of a code point by block range; `Other` when unlisted.
pub fn script_of(c: char) -> ScriptClass {
    let cp = c as u32;
    RANGES
        .iter()
        .find(|(lo, hi, _)| (*lo..=*hi).contains(&cp))
        .map_or(ScriptClass::Other, |(_, _, s)| *s)
}

pub fn is_letter(c: char) -> bool {
    matches!(
        get_general_category(c),
        GeneralCategory::UppercaseLetter
            | GeneralCategory::LowercaseLetter
            | GeneralCategory::TitlecaseLetter
            | GeneralCategory::ModifierLetter
            | GeneralCategory::OtherLetter
    )
}

pub fn is_mark(c: char) -> bool {
    matches!(
        get_general_category(c),
        GeneralCategory::NonspacingMark
            | GeneralCategory::SpacingMark
            | GeneralCategory::EnclosingMark
    )
}

/// Per-script counts of letter units in a text.
///
/// A letter unit is a letter, or a combining mark that directly follows a
/// letter (possibly through other marks); the mark is credited to the
/// script of that letter. Everything else is ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptHistogram {
    pub counts: BTreeMap<ScriptClass, usize>,
    pub total: usize,
}

impl ScriptHistogram {
    pub fn of(text: &str) -> Self {
        let mut hist = ScriptHistogram::default();
        let mut base: Option<ScriptClass> = None;
        for c in text.chars() {
            if is_letter(c) {
                let script = script_of(c);
                hist.add(script);
                base = Some(script);
            } else if is_mark(c) {
                if let Some(script) = base {
                    hist.add(script);
                }
            } else {
                base = None;
            }
        }
        hist
    }

    fn add(&mut self, script: ScriptClass) {
        *self.counts.entry(script).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn count(&self, script: ScriptClass) -> usize {
        self.counts.get(&script).copied().unwrap_or(0)
    }

    pub fn count_in(&self, scripts: &BTreeSet<ScriptClass>) -> usize {
        self.counts
            .iter()
            .filter(|(s, _)| scripts.contains(s))
            .map(|(_, n)| n)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dominant {
    Script(ScriptClass),
    /// No strict maximum; holds the tied classes (empty when there are no letters).
    Ambiguous(BTreeSet<ScriptClass>),
}

pub fn dominant_script(text: &str) -> Dominant {
    let hist = ScriptHistogram::of(text);
    let Some(max) = hist.counts.values().copied().max() else {
        return Dominant::Ambiguous(BTreeSet::new());
    };
    let tied: BTreeSet<ScriptClass> = hist
        .counts
        .iter()
        .filter(|(_, n)| **n == max)
        .map(|(s, _)| *s)
        .collect();
    if tied.len() == 1 {
        Dominant::Script(*tied.iter().next().unwrap())
    } else {
        Dominant::Ambiguous(tied)
    }
}

/// Share of letter units that belong to `scripts`; 0 for letterless text.
pub fn letter_ratio(text: &str, scripts: &BTreeSet<ScriptClass>) -> f64 {
    let hist = ScriptHistogram::of(text);
    if hist.total == 0 {
        0.0
    } else {
        hist.count_in(scripts) as f64 / hist.total as f64
    }
}
