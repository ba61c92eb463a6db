//! Brute-force reference implementations written straight from the metric
//! definitions: n-grams are materialized as vectors and matched one by one
//! against an unused counterpart, LCS is a memoized recursion.

use std::collections::HashMap;

fn grams<T: Clone>(seq: &[T], n: usize) -> Vec<Vec<T>> {
    if seq.len() < n {
        return Vec::new();
    }
    (0..=seq.len() - n).map(|i| seq[i..i + n].to_vec()).collect()
}

/// (matched, hyp count, ref count) by pairing each hypothesis n-gram with
/// the first unused equal reference n-gram.
fn pair_up<T: PartialEq + Clone>(hyp: &[T], reference: &[T], n: usize) -> (usize, usize, usize) {
    let h = grams(hyp, n);
    let r = grams(reference, n);
    let mut used = vec![false; r.len()];
    let mut matched = 0;
    for g in &h {
        for (j, rg) in r.iter().enumerate() {
            if !used[j] && rg == g {
                used[j] = true;
                matched += 1;
                break;
            }
        }
    }
    (matched, h.len(), r.len())
}

pub fn chrf_pp(pairs: &[(&str, &str)]) -> f64 {
    let mut totals = [(0usize, 0usize, 0usize); 8];
    for (hyp, reference) in pairs {
        let hc: Vec<char> = hyp.chars().filter(|c| !c.is_whitespace()).collect();
        let rc: Vec<char> = reference.chars().filter(|c| !c.is_whitespace()).collect();
        let hw: Vec<&str> = hyp.split_whitespace().collect();
        let rw: Vec<&str> = reference.split_whitespace().collect();
        for n in 1..=6 {
            let (m, h, r) = pair_up(&hc, &rc, n);
            totals[n - 1].0 += m;
            totals[n - 1].1 += h;
            totals[n - 1].2 += r;
        }
        for n in 1..=2 {
            let (m, h, r) = pair_up(&hw, &rw, n);
            totals[5 + n].0 += m;
            totals[5 + n].1 += h;
            totals[5 + n].2 += r;
        }
    }
    let live: Vec<_> = totals.iter().filter(|t| t.1 > 0 || t.2 > 0).collect();
    if live.is_empty() {
        return 100.0;
    }
    let k = live.len() as f64;
    let p: f64 = live.iter().map(|t| if t.1 == 0 { 0.0 } else { t.0 as f64 / t.1 as f64 }).sum::<f64>() / k;
    let r: f64 = live.iter().map(|t| if t.2 == 0 { 0.0 } else { t.0 as f64 / t.2 as f64 }).sum::<f64>() / k;
    if p + r == 0.0 {
        return 0.0;
    }
    100.0 * 5.0 * p * r / (4.0 * p + r)
}

/// Corpus BLEU over whitespace tokens.
pub fn bleu(pairs: &[(&str, &str)]) -> f64 {
    let mut matched = [0usize; 4];
    let mut counts = [0usize; 4];
    let (mut c, mut r) = (0usize, 0usize);
    for (hyp, reference) in pairs {
        let h: Vec<&str> = hyp.split_whitespace().collect();
        let rf: Vec<&str> = reference.split_whitespace().collect();
        c += h.len();
        r += rf.len();
        for n in 1..=4 {
            let (m, hc, _) = pair_up(&h, &rf, n);
            matched[n - 1] += m;
            counts[n - 1] += hc;
        }
    }
    if c == 0 || matched[0] == 0 {
        return 0.0;
    }
    let mut logs = Vec::new();
    let mut zeros = 0;
    for n in 0..4 {
        if counts[n] == 0 {
            continue;
        }
        let p = if matched[n] == 0 {
            zeros += 1;
            1.0 / (2f64.powi(zeros) * counts[n] as f64)
        } else {
            matched[n] as f64 / counts[n] as f64
        };
        logs.push(p.ln());
    }
    let bp = if c < r { (1.0 - r as f64 / c as f64).exp() } else { 1.0 };
    100.0 * bp * (logs.iter().sum::<f64>() / logs.len() as f64).exp()
}

fn lcs(a: &[&str], b: &[&str], i: usize, j: usize, memo: &mut HashMap<(usize, usize), usize>) -> usize {
    if i == a.len() || j == b.len() {
        return 0;
    }
    if let Some(v) = memo.get(&(i, j)) {
        return *v;
    }
    let v = if a[i] == b[j] {
        1 + lcs(a, b, i + 1, j + 1, memo)
    } else {
        lcs(a, b, i + 1, j, memo).max(lcs(a, b, i, j + 1, memo))
    };
    memo.insert((i, j), v);
    v
}

/// (P, R, F) over whitespace tokens.
pub fn rouge_l(hyp: &str, reference: &str) -> (f64, f64, f64) {
    let h: Vec<&str> = hyp.split_whitespace().collect();
    let r: Vec<&str> = reference.split_whitespace().collect();
    if h.is_empty() || r.is_empty() {
        return (0.0, 0.0, 0.0);
    }
    let l = lcs(&h, &r, 0, 0, &mut HashMap::new()) as f64;
    let (p, rc) = (l / h.len() as f64, l / r.len() as f64);
    let f = if l == 0.0 { 0.0 } else { 2.0 * p * rc / (p + rc) };
    (p, rc, f)
}

/// Twenty fixed (hypothesis, reference) pairs over Latin, Devanagari, Han,
/// Arabic and Cyrillic text, including degenerate cases.
pub const PAIRS: [(&str, &str); 20] = [
    ("the cat sat on mat", "the cat sat on the mat"),
    ("the cat sat", "the cat sat down"),
    ("a quick brown fox jumps", "the quick brown fox jumped over"),
    ("hello world", "hello world"),
    ("zzzz", "qqqq"),
    ("", "something here"),
    ("one two three four five six", "six five four three two one"),
    ("मैं घर जा रहा हूँ", "मैं अपने घर जा रहा हूँ"),
    ("यह किताब बहुत अच्छी है", "यह किताब अच्छी है"),
    ("भारत एक बड़ा देश है", "भारत बहुत बड़ा देश है"),
    ("मराठी भाषा सुंदर आहे", "मराठी भाषा खूप सुंदर आहे"),
    ("我们今天去学校", "我们明天去学校"),
    ("你好世界", "你好，世界"),
    ("机器学习 很 有趣", "机器 学习 非常 有趣"),
    ("مرحبا بالعالم", "مرحبا بالعالم الجميل"),
    ("الكتاب على الطاولة", "الكتاب فوق الطاولة"),
    ("Привет мир", "Привет, дорогой мир"),
    ("the the the the", "the cat"),
    ("Ịmụ igwe bụ ihe ọma", "Ịmụ igwe dị mma"),
    ("Cảm ơn bạn rất nhiều", "Cảm ơn rất nhiều"),
];
