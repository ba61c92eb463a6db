//! Synthetic seed corpora assembled from small hand-written vocabularies.

use ldp_core::rng::SeededRng;

pub const HI: &[&str] = &[
    "मैं", "तुम", "वह", "हम", "आप", "यह", "है", "हैं", "था", "थी", "थे", "का", "की", "के", "में", "से",
    "को", "पर", "और", "लेकिन", "नहीं", "भी", "बहुत", "अच्छा", "घर", "पानी", "खाना", "किताब", "स्कूल",
    "बच्चे", "लड़का", "लड़की", "आदमी", "औरत", "शहर", "गाँव", "दिन", "रात", "काम", "समय", "आज", "कल",
    "जाना", "आना", "करना", "देखना", "पढ़ना", "लिखना", "बोलना", "सुनना", "रहा", "रही", "गया", "गई",
    "क्या", "क्यों", "कहाँ", "जब", "तब", "अपने",
];

pub const MR: &[&str] = &[
    "मी", "तू", "तो", "ती", "आम्ही", "तुम्ही", "हे", "ते", "आहे", "आहेत", "होता", "होती", "होते", "चा",
    "ची", "चे", "मध्ये", "ला", "ने", "आणि", "पण", "नाही", "सुद्धा", "खूप", "चांगले", "घर", "पाणी",
    "जेवण", "पुस्तक", "शाळा", "मुले", "मुलगा", "मुलगी", "माणूस", "बाई", "शहर", "गाव", "दिवस", "रात्र",
    "काम", "वेळ", "आज", "उद्या", "जाणे", "येणे", "करणे", "पाहणे", "वाचणे", "लिहिणे", "बोलणे", "ऐकणे",
    "करत", "गेला", "गेली", "काय", "का", "कुठे", "जेव्हा", "तेव्हा", "आपल्या",
];

pub const SW: &[&str] = &[
    "habari", "njema", "asubuhi", "mtoto", "shule", "kitabu", "maji", "chakula", "nyumba", "mji",
    "kijiji", "siku", "usiku", "kazi", "leo", "kesho", "kwenda", "kuja", "kufanya", "kuona", "kusoma",
    "kuandika", "sana", "lakini", "na", "ya", "wa", "za", "kwa", "katika", "hapana", "ndiyo", "mimi",
    "wewe", "yeye", "sisi", "ninyi", "wao", "rafiki", "mama", "baba", "mwalimu", "gari", "barabara",
    "mti", "ndege", "samaki", "mvua", "jua", "mwezi",
];

pub const IG: &[&str] = &[
    "ụtụtụ", "ọma", "nwa", "ụlọ", "akwụkwọ", "mmiri", "nri", "obodo", "ụbọchị", "abalị", "ọrụ", "taa",
    "echi", "ịga", "ịbịa", "ime", "ịhụ", "ịgụ", "ide", "nke", "na", "ma", "mana", "ọ", "m", "gị",
    "anyị", "unu", "ha", "enyi", "nne", "nna", "onye", "nkuzi", "ụgbọ", "ụzọ", "osisi", "nnụnụ", "azụ",
    "anyanwụ", "ọnwa", "ahịa", "ego", "ndụ", "ihe", "ebe", "oge", "ọkụ", "aka", "bụ",
];

pub const EN: &[&str] = &[
    "the", "a", "house", "is", "big", "we", "go", "to", "school", "today", "and", "but", "not", "very",
    "good", "water", "food", "book", "children", "boy", "girl", "man", "woman", "city", "village",
    "day", "night", "work", "time", "tomorrow", "read", "write", "speak", "listen", "what", "why",
];

pub const ZH: &[&str] = &[
    "我们", "今天", "去", "学校", "你好", "世界", "很", "大", "房子", "水", "食物", "书", "孩子", "男孩",
    "女孩", "城市", "村庄", "白天", "晚上", "工作", "时间", "明天", "读", "写", "说", "听", "什么", "为什么",
];

pub const AR: &[&str] = &[
    "مرحبا", "بالعالم", "البيت", "كبير", "نحن", "نذهب", "إلى", "المدرسة", "اليوم", "و", "لكن", "ليس",
    "جدا", "جيد", "الماء", "الطعام", "الكتاب", "الأطفال", "الولد", "البنت", "المدينة", "القرية", "النهار",
    "الليل", "العمل", "الوقت", "غدا", "يقرأ", "يكتب",
];

pub const RU: &[&str] = &[
    "привет", "мир", "дом", "большой", "мы", "идём", "в", "школу", "сегодня", "и", "но", "не", "очень",
    "хороший", "вода", "еда", "книга", "дети", "мальчик", "девочка", "город", "деревня", "день", "ночь",
    "работа", "время", "завтра", "читать", "писать",
];

/// Sentences of 5 to 10 words drawn with a mild preference for early
/// (function-word) vocabulary entries.
pub fn sentences(words: &[&str], count: usize, seed: u64) -> Vec<String> {
    let mut rng = SeededRng::new(seed);
    (0..count)
        .map(|_| {
            let len = 5 + rng.below(6) as usize;
            (0..len)
                .map(|_| {
                    let a = rng.below(words.len() as u64);
                    let b = rng.below(words.len() as u64);
                    words[a.min(b) as usize]
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

/// Uniform random lowercase ASCII letters.
pub fn latin_noise(len: usize, count: usize, seed: u64) -> Vec<String> {
    let mut rng = SeededRng::new(seed);
    (0..count)
        .map(|_| (0..len).map(|_| (b'a' + rng.below(26) as u8) as char).collect())
        .collect()
}
