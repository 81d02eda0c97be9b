//! Corpus ingestion: JSONL loading, platform-specific preprocessing and
//! label extraction, and deterministic stratified train/dev/test splits.

use std::collections::HashSet;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexicons::ResourceBundle;
use crate::tokenizer::{tokenize, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Platform {
    #[serde(rename = "twitter")]
    Twitter,
    #[serde(rename = "reddit")]
    Reddit,
}

impl Platform {
    pub fn as_str(&self) -> &'static str {
        match self {
            Platform::Twitter => "twitter",
            Platform::Reddit => "reddit",
        }
    }
}

/// Binary irony label, serialized as "I" / "NI".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "I")]
    Ironic,
    #[serde(rename = "NI")]
    NonIronic,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Ironic => "I",
            Label::NonIronic => "NI",
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        match s {
            "I" => Some(Label::Ironic),
            "NI" => Some(Label::NonIronic),
            _ => None,
        }
    }
}

/// One raw post/tweet exactly as read from a corpus file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRecord {
    pub id: String,
    pub text: String,
    pub platform: Platform,
    pub genre: Option<String>,
    pub gold_label: Option<Label>,
}

/// A preprocessed utterance with tokens and sentence spans.
#[derive(Debug, Clone, PartialEq)]
pub struct Utterance {
    pub id: String,
    pub text: String,
    /// Character-offset spans of sentences, ordered and non-overlapping.
    pub sentences: Vec<(usize, usize)>,
    pub tokens: Vec<Token>,
    pub platform: Platform,
    pub genre: Option<String>,
    pub label: Option<Label>,
}

impl Utterance {
    /// Tokenize and sentence-split `text` into an utterance.
    pub fn from_text(
        id: impl Into<String>,
        text: impl Into<String>,
        platform: Platform,
        genre: Option<String>,
        label: Option<Label>,
        resources: &ResourceBundle,
    ) -> Utterance {
        let text = text.into();
        let tokens = tokenize(&text, &resources.emoticons, &resources.emoji);
        let sentences = segment_sentences(&text);
        Utterance {
            id: id.into(),
            text,
            sentences,
            tokens,
            platform,
            genre,
            label,
        }
    }

    /// Tokens whose span lies inside the given sentence span.
    pub fn tokens_in(&self, sentence: (usize, usize)) -> impl Iterator<Item = &Token> {
        self.tokens
            .iter()
            .filter(move |t| t.span.0 >= sentence.0 && t.span.1 <= sentence.1)
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("duplicate record id {id:?}")]
    DuplicateId { id: String },
}

/// Why a record was rejected during preprocessing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    Retweet,
    Duplicate,
    LabelHashtagNotTrailing,
    EmptyAfterStrip,
    TooFewSentences,
}

impl RejectReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            RejectReason::Retweet => "retweet",
            RejectReason::Duplicate => "duplicate",
            RejectReason::LabelHashtagNotTrailing => "label_hashtag_not_trailing",
            RejectReason::EmptyAfterStrip => "empty_after_strip",
            RejectReason::TooFewSentences => "too_few_sentences",
        }
    }
}

#[derive(Deserialize)]
struct JsonRecord {
    id: String,
    text: String,
    label: Option<String>,
    genre: Option<String>,
}

/// Load a UTF-8 JSONL corpus: one object per line with fields `id`, `text`,
/// optional `label` ("I"/"NI") and optional `genre`.
///
/// Malformed lines are skipped and counted (second tuple element); records
/// come back in file order. A duplicate id is fatal.
pub fn load_corpus(path: &Path, platform: Platform) -> Result<(Vec<RawRecord>, usize), CorpusError> {
    let content = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut records = Vec::new();
    let mut skipped = 0usize;
    let mut ids = HashSet::new();
    for line in content.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let parsed: Result<JsonRecord, _> = serde_json::from_str(line);
        let Ok(json) = parsed else {
            skipped += 1;
            continue;
        };
        if json.id.is_empty() {
            skipped += 1;
            continue;
        }
        let gold_label = match json.label.as_deref() {
            None => None,
            Some(raw) => match Label::parse(raw) {
                Some(l) => Some(l),
                None => {
                    skipped += 1;
                    continue;
                }
            },
        };
        if !ids.insert(json.id.clone()) {
            return Err(CorpusError::DuplicateId { id: json.id });
        }
        records.push(RawRecord {
            id: json.id,
            text: json.text,
            platform,
            genre: json.genre,
            gold_label,
        });
    }
    Ok((records, skipped))
}

// ---------------------------------------------------------------------------
// Sentence segmentation
// ---------------------------------------------------------------------------

/// Split text on runs of `.`, `!`, `?` followed by whitespace or
/// end-of-text; a trailing fragment without terminal punctuation counts as
/// a sentence. Spans are character offsets trimmed of surrounding
/// whitespace.
pub fn segment_sentences(text: &str) -> Vec<(usize, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let n = chars.len();
    let is_terminal = |c: char| c == '.' || c == '!' || c == '?';
    let mut boundaries = Vec::new();
    let mut i = 0;
    while i < n {
        if is_terminal(chars[i]) {
            let mut j = i + 1;
            while j < n && is_terminal(chars[j]) {
                j += 1;
            }
            if j == n || chars[j].is_whitespace() {
                boundaries.push(j);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    let mut spans = Vec::new();
    let mut start = 0;
    for &b in boundaries.iter().chain(std::iter::once(&n)) {
        if b > start {
            if let Some(span) = trim_span(&chars, start, b) {
                spans.push(span);
            }
        }
        start = b;
    }
    spans
}

fn trim_span(chars: &[char], mut start: usize, mut end: usize) -> Option<(usize, usize)> {
    while start < end && chars[start].is_whitespace() {
        start += 1;
    }
    while end > start && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    (start < end).then_some((start, end))
}

// ---------------------------------------------------------------------------
// Twitter preprocessing
// ---------------------------------------------------------------------------

/// Lowercase every whitespace-separated word except those that read as
/// intentional all-caps: at least two characters with every alphabetic
/// character uppercase. Keeps "AWESOME." and ":P" intact while "I" becomes
/// "i". Idempotent.
pub fn selective_lowercase(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut word = String::new();
    for c in text.chars() {
        if c.is_whitespace() {
            flush_word(&mut out, &mut word);
            out.push(c);
        } else {
            word.push(c);
        }
    }
    flush_word(&mut out, &mut word);
    out
}

fn flush_word(out: &mut String, word: &mut String) {
    if word.is_empty() {
        return;
    }
    let has_alpha = word.chars().any(|c| c.is_alphabetic());
    let all_upper = word
        .chars()
        .filter(|c| c.is_alphabetic())
        .all(|c| !c.is_lowercase());
    let keep = word.chars().count() >= 2 && has_alpha && all_upper;
    if keep {
        out.push_str(word);
    } else {
        out.push_str(&word.to_lowercase());
    }
    word.clear();
}

/// Normalization used for duplicate detection: lowercase plus collapsed
/// whitespace.
pub fn duplicate_key(text: &str) -> String {
    text.to_lowercase().split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Character spans of hashtag tokens in `text` (same rule as the tokenizer).
fn hashtag_spans(text: &str) -> Vec<(usize, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let is_tag_char = |c: char| c.is_alphanumeric() || c == '_';
    let mut spans = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i] == '#' && i + 1 < chars.len() && is_tag_char(chars[i + 1]) {
            let start = i;
            i += 1;
            while i < chars.len() && is_tag_char(chars[i]) {
                i += 1;
            }
            spans.push((start, i));
        } else {
            i += 1;
        }
    }
    spans
}

/// Preprocess a Twitter record.
///
/// Rejects retweets (text starts with "RT "), duplicates (tracked through
/// `seen`, keyed by normalized text) and records with a label hashtag that
/// is not in trailing position. Otherwise strips the trailing label
/// hashtags, derives the label (explicit `gold_label` wins, else Ironic iff
/// a label hashtag was stripped), applies the selective lowercase rule and
/// tokenizes.
pub fn preprocess_twitter(
    record: &RawRecord,
    resources: &ResourceBundle,
    seen: &mut HashSet<String>,
) -> Result<(Utterance, Label), RejectReason> {
    if record.text.starts_with("RT ") {
        return Err(RejectReason::Retweet);
    }
    if !seen.insert(duplicate_key(&record.text)) {
        return Err(RejectReason::Duplicate);
    }

    // Strip the trailing run of label hashtags.
    let chars: Vec<char> = record.text.chars().collect();
    let mut end = chars.len();
    let mut stripped_any = false;
    loop {
        while end > 0 && chars[end - 1].is_whitespace() {
            end -= 1;
        }
        let prefix: String = chars[..end].iter().collect();
        let Some(&(start, tag_end)) = hashtag_spans(&prefix).last() else { break };
        if tag_end != end {
            break;
        }
        let tag: String = chars[start..tag_end].iter().collect();
        if !resources.is_label_hashtag(&tag) {
            break;
        }
        stripped_any = true;
        end = start;
    }
    let stripped: String = chars[..end].iter().collect();
    let stripped = stripped.trim_end().to_string();

    // Any label hashtag left now was not in trailing position.
    for (s, e) in hashtag_spans(&stripped) {
        let tag: String = stripped.chars().skip(s).take(e - s).collect();
        if resources.is_label_hashtag(&tag) {
            return Err(RejectReason::LabelHashtagNotTrailing);
        }
    }
    if stripped.trim().is_empty() {
        return Err(RejectReason::EmptyAfterStrip);
    }

    let label = record.gold_label.unwrap_or(if stripped_any {
        Label::Ironic
    } else {
        Label::NonIronic
    });
    let text = selective_lowercase(&stripped);
    let utterance = Utterance::from_text(
        record.id.clone(),
        text,
        Platform::Twitter,
        record.genre.clone(),
        Some(label),
        resources,
    );
    Ok((utterance, label))
}

// ---------------------------------------------------------------------------
// Reddit preprocessing
// ---------------------------------------------------------------------------

/// Preprocess a Reddit record.
///
/// The label is Ironic iff the post ends with a standalone "/s" token
/// (which is stripped; an explicit `gold_label` wins). Posts with fewer
/// than two sentences after stripping are rejected. Reddit text keeps its
/// original casing.
pub fn preprocess_reddit(
    record: &RawRecord,
    resources: &ResourceBundle,
) -> Result<(Utterance, Label), RejectReason> {
    let trimmed = record.text.trim_end();
    let mut text = trimmed.to_string();
    let mut marked = false;
    if let Some(prefix) = trimmed.strip_suffix("/s") {
        if prefix.is_empty() || prefix.ends_with(char::is_whitespace) {
            marked = true;
            text = prefix.trim_end().to_string();
        }
    }
    if text.trim().is_empty() {
        return Err(RejectReason::EmptyAfterStrip);
    }
    let label = record.gold_label.unwrap_or(if marked {
        Label::Ironic
    } else {
        Label::NonIronic
    });
    let utterance = Utterance::from_text(
        record.id.clone(),
        text,
        Platform::Reddit,
        record.genre.clone(),
        Some(label),
        resources,
    );
    if utterance.sentences.len() < 2 {
        return Err(RejectReason::TooFewSentences);
    }
    Ok((utterance, label))
}

// ---------------------------------------------------------------------------
// Train/dev/test split
// ---------------------------------------------------------------------------

/// Split fractions plus the shuffle seed. Defaults to 0.8/0.1/0.1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub dev_fraction: f64,
    pub test_fraction: f64,
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            train_fraction: 0.8,
            dev_fraction: 0.1,
            test_fraction: 0.1,
            seed: 13,
        }
    }
}

impl SplitSpec {
    pub fn validate(&self) -> Result<(), SplitError> {
        let ok = self.train_fraction > 0.0
            && self.dev_fraction > 0.0
            && self.test_fraction > 0.0
            && (self.train_fraction + self.dev_fraction + self.test_fraction - 1.0).abs() <= 1e-9;
        if ok {
            Ok(())
        } else {
            Err(SplitError::BadFractions)
        }
    }
}

#[derive(Debug, Error)]
pub enum SplitError {
    #[error("need at least 10 labeled utterances, got {n}")]
    TooFew { n: usize },
    #[error("utterance {id:?} has no label")]
    Unlabeled { id: String },
    #[error("split fractions must be positive and sum to 1")]
    BadFractions,
}

/// Stratified deterministic split of label indices.
///
/// Global sizes are `floor(train_fraction * n)` and `floor(dev_fraction * n)`
/// with the remainder going to test. Within that, per-class counts follow
/// largest-remainder allocation, so each split preserves the class ratio
/// within one item per class. Each returned list is in input order.
pub fn split_indices(
    labels: &[Label],
    spec: &SplitSpec,
) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>), SplitError> {
    spec.validate()?;
    let n = labels.len();
    if n < 10 {
        return Err(SplitError::TooFew { n });
    }
    let n_train = (spec.train_fraction * n as f64).floor() as usize;
    let n_dev = (spec.dev_fraction * n as f64).floor() as usize;

    let classes = [Label::Ironic, Label::NonIronic];
    let mut per_class: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            (0..n)
                .filter(|&i| labels[i] == *c)
                .collect::<Vec<usize>>()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for indices in per_class.iter_mut() {
        indices.shuffle(&mut rng);
    }
    let sizes: Vec<usize> = per_class.iter().map(|v| v.len()).collect();

    let train_counts = largest_remainder(&sizes, spec.train_fraction, n_train, &sizes);
    let remaining: Vec<usize> = sizes
        .iter()
        .zip(&train_counts)
        .map(|(&s, &t)| s - t)
        .collect();
    let dev_counts = largest_remainder(&sizes, spec.dev_fraction, n_dev, &remaining);

    let mut train = Vec::new();
    let mut dev = Vec::new();
    let mut test = Vec::new();
    for ((indices, &tc), &dc) in per_class.iter().zip(&train_counts).zip(&dev_counts) {
        train.extend_from_slice(&indices[..tc]);
        dev.extend_from_slice(&indices[tc..tc + dc]);
        test.extend_from_slice(&indices[tc + dc..]);
    }
    train.sort_unstable();
    dev.sort_unstable();
    test.sort_unstable();
    Ok((train, dev, test))
}

/// Allocate `target` items across classes proportionally to `fraction` of
/// each class size, flooring and then handing extras out by largest
/// fractional remainder (capped by `available` per class).
fn largest_remainder(
    sizes: &[usize],
    fraction: f64,
    target: usize,
    available: &[usize],
) -> Vec<usize> {
    let quotas: Vec<f64> = sizes.iter().map(|&s| fraction * s as f64).collect();
    let mut counts: Vec<usize> = quotas
        .iter()
        .zip(available)
        .map(|(&q, &a)| (q.floor() as usize).min(a))
        .collect();
    let mut extras = target.saturating_sub(counts.iter().sum());
    // Hand extras out by largest remainder, class order breaking ties.
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = quotas[a] - quotas[a].floor();
        let rb = quotas[b] - quotas[b].floor();
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&b))
    });
    while extras > 0 {
        let mut gave = false;
        for &c in &order {
            if extras == 0 {
                break;
            }
            if counts[c] < available[c] {
                counts[c] += 1;
                extras -= 1;
                gave = true;
            }
        }
        if !gave {
            break;
        }
    }
    counts
}

/// Stratified deterministic split of labeled utterances.
pub fn split(
    utterances: &[Utterance],
    spec: &SplitSpec,
) -> Result<(Vec<Utterance>, Vec<Utterance>, Vec<Utterance>), SplitError> {
    let labels: Vec<Label> = utterances
        .iter()
        .map(|u| u.label.ok_or_else(|| SplitError::Unlabeled { id: u.id.clone() }))
        .collect::<Result<_, _>>()?;
    let (train, dev, test) = split_indices(&labels, spec)?;
    let pick = |idx: &[usize]| idx.iter().map(|&i| utterances[i].clone()).collect();
    Ok((pick(&train), pick(&dev), pick(&test)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn bundle() -> ResourceBundle {
        ResourceBundle::bundled()
    }

    fn record(id: &str, text: &str, platform: Platform) -> RawRecord {
        RawRecord {
            id: id.into(),
            text: text.into(),
            platform,
            genre: None,
            gold_label: None,
        }
    }

    #[test]
    fn load_corpus_maps_fields() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, r#"{{"id":"1","text":"hi","label":"I"}}"#).unwrap();
        let (records, skipped) = load_corpus(f.path(), Platform::Twitter).unwrap();
        assert_eq!(skipped, 0);
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].id, "1");
        assert_eq!(records[0].text, "hi");
        assert_eq!(records[0].gold_label, Some(Label::Ironic));
    }

    #[test]
    fn load_corpus_empty_file() {
        let f = tempfile::NamedTempFile::new().unwrap();
        let (records, skipped) = load_corpus(f.path(), Platform::Twitter).unwrap();
        assert!(records.is_empty());
        assert_eq!(skipped, 0);
    }

    #[test]
    fn load_corpus_counts_malformed_lines() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, r#"{{"id":"1","text":"a"}}"#).unwrap();
        writeln!(f, "not json at all").unwrap();
        writeln!(f, r#"{{"id":"2","text":"b"}}"#).unwrap();
        writeln!(f, r#"{{"id":"3","text":"c","genre":"tech"}}"#).unwrap();
        let (records, skipped) = load_corpus(f.path(), Platform::Reddit).unwrap();
        assert_eq!(records.len(), 3);
        assert_eq!(skipped, 1);
        assert_eq!(records[2].genre.as_deref(), Some("tech"));
    }

    #[test]
    fn load_corpus_duplicate_id_is_fatal() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, r#"{{"id":"1","text":"a"}}"#).unwrap();
        writeln!(f, r#"{{"id":"1","text":"b"}}"#).unwrap();
        let err = load_corpus(f.path(), Platform::Twitter).unwrap_err();
        match err {
            CorpusError::DuplicateId { id } => assert_eq!(id, "1"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn twitter_rejects_non_trailing_label_hashtag() {
        let r = record("1", "#sarcasm is something that I love", Platform::Twitter);
        let err = preprocess_twitter(&r, &bundle(), &mut HashSet::new()).unwrap_err();
        assert_eq!(err, RejectReason::LabelHashtagNotTrailing);
    }

    #[test]
    fn twitter_strips_trailing_label_and_keeps_allcaps() {
        let b = bundle().with_label_hashtags(
            ["#ironic", "#irony", "#sarcasm", "#sarcastic"].map(String::from),
        );
        let r = record("1", "With 1 follower I must be AWESOME. :P #ironic", Platform::Twitter);
        let (utt, label) = preprocess_twitter(&r, &b, &mut HashSet::new()).unwrap();
        assert_eq!(label, Label::Ironic);
        assert_eq!(utt.text, "with 1 follower i must be AWESOME. :P");
    }

    #[test]
    fn twitter_sentiment_hashtag_is_not_a_label() {
        let r = record("1", "just a normal Tuesday #happy", Platform::Twitter);
        let (utt, label) = preprocess_twitter(&r, &bundle(), &mut HashSet::new()).unwrap();
        assert_eq!(label, Label::NonIronic);
        assert_eq!(utt.text, "just a normal tuesday #happy");
    }

    #[test]
    fn twitter_rejects_retweets_and_duplicates() {
        let b = bundle();
        let mut seen = HashSet::new();
        let rt = record("1", "RT @someone lol", Platform::Twitter);
        assert_eq!(
            preprocess_twitter(&rt, &b, &mut seen).unwrap_err(),
            RejectReason::Retweet
        );
        let a = record("2", "same   Text here", Platform::Twitter);
        let dup = record("3", "same text HERE", Platform::Twitter);
        preprocess_twitter(&a, &b, &mut seen).unwrap();
        assert_eq!(
            preprocess_twitter(&dup, &b, &mut seen).unwrap_err(),
            RejectReason::Duplicate
        );
    }

    #[test]
    fn twitter_multiple_trailing_label_hashtags_stripped() {
        let r = record("1", "what a day #sarcasm #irony", Platform::Twitter);
        let (utt, label) = preprocess_twitter(&r, &bundle(), &mut HashSet::new()).unwrap();
        assert_eq!(label, Label::Ironic);
        assert_eq!(utt.text, "what a day");
    }

    #[test]
    fn twitter_gold_label_wins_over_derivation() {
        let mut r = record("1", "totally fine day", Platform::Twitter);
        r.gold_label = Some(Label::Ironic);
        let (_, label) = preprocess_twitter(&r, &bundle(), &mut HashSet::new()).unwrap();
        assert_eq!(label, Label::Ironic);
    }

    #[test]
    fn reddit_strips_marker_and_keeps_two_sentences() {
        let text = "Are you telling me iPhone 5 is only marginally better than iPhone 4S? \
                    I thought we were reaching a golden age with this game-changing device. /s";
        let r = record("1", text, Platform::Reddit);
        let (utt, label) = preprocess_reddit(&r, &bundle()).unwrap();
        assert_eq!(label, Label::Ironic);
        assert!(!utt.text.contains("/s"));
        assert_eq!(utt.sentences.len(), 2);
    }

    #[test]
    fn reddit_rejects_single_sentence() {
        let r = record("1", "Great phone. /s", Platform::Reddit);
        assert_eq!(
            preprocess_reddit(&r, &bundle()).unwrap_err(),
            RejectReason::TooFewSentences
        );
    }

    #[test]
    fn reddit_keeps_unmarked_two_sentence_post() {
        let r = record("1", "It works. I like it.", Platform::Reddit);
        let (utt, label) = preprocess_reddit(&r, &bundle()).unwrap();
        assert_eq!(label, Label::NonIronic);
        assert_eq!(utt.sentences.len(), 2);
        assert_eq!(utt.text, "It works. I like it.");
    }

    #[test]
    fn reddit_case_is_preserved() {
        let r = record("1", "This is GREAT news. Truly Wonderful stuff.", Platform::Reddit);
        let (utt, _) = preprocess_reddit(&r, &bundle()).unwrap();
        assert!(utt.text.contains("GREAT"));
        assert!(utt.text.contains("Wonderful"));
    }

    #[test]
    fn selective_lowercase_examples() {
        assert_eq!(
            selective_lowercase("With 1 follower I must be AWESOME. :P"),
            "with 1 follower i must be AWESOME. :P"
        );
        assert_eq!(selective_lowercase("GREAT i'm SO happy"), "GREAT i'm SO happy");
        assert_eq!(selective_lowercase("Hello World"), "hello world");
    }

    #[test]
    fn selective_lowercase_is_idempotent() {
        for text in ["With 1 follower I must be AWESOME. :P", "A B CC dD :P ;) 123"] {
            let once = selective_lowercase(text);
            assert_eq!(selective_lowercase(&once), once);
        }
    }

    #[test]
    fn sentences_question_then_statement() {
        let spans = segment_sentences("A? B? done.");
        assert_eq!(spans.len(), 3);
        let spans = segment_sentences("no terminal punctuation");
        assert_eq!(spans.len(), 1);
        assert!(segment_sentences("").is_empty());
    }

    fn labeled(n_ironic: usize, n_non: usize) -> Vec<Label> {
        let mut labels = vec![Label::Ironic; n_ironic];
        labels.extend(vec![Label::NonIronic; n_non]);
        labels
    }

    #[test]
    fn split_exact_divisibility() {
        let labels = labeled(50, 50);
        let spec = SplitSpec::default();
        let (train, dev, test) = split_indices(&labels, &spec).unwrap();
        assert_eq!((train.len(), dev.len(), test.len()), (80, 10, 10));
        let count = |idx: &[usize]| idx.iter().filter(|&&i| labels[i] == Label::Ironic).count();
        assert_eq!(count(&train), 40);
        assert_eq!(count(&dev), 5);
        assert_eq!(count(&test), 5);
    }

    #[test]
    fn split_is_deterministic() {
        let labels = labeled(48, 47);
        let spec = SplitSpec::default();
        let a = split_indices(&labels, &spec).unwrap();
        let b = split_indices(&labels, &spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn split_95_items_partitions() {
        let labels = labeled(48, 47);
        let spec = SplitSpec::default();
        let (train, dev, test) = split_indices(&labels, &spec).unwrap();
        assert_eq!((train.len(), dev.len(), test.len()), (76, 9, 10));
        let mut all: Vec<usize> = train.iter().chain(&dev).chain(&test).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..95).collect::<Vec<_>>());
        // Class ratio preserved within one item per class.
        for (idx, frac) in [(&train, 0.8), (&dev, 0.1)] {
            let ironic = idx.iter().filter(|&&i| labels[i] == Label::Ironic).count() as f64;
            assert!((ironic - frac * 48.0).abs() <= 1.0);
        }
    }

    #[test]
    fn split_too_few_is_fatal() {
        let labels = labeled(4, 5);
        let err = split_indices(&labels, &SplitSpec::default()).unwrap_err();
        assert!(matches!(err, SplitError::TooFew { n: 9 }));
    }

    #[test]
    fn split_requires_labels() {
        let b = bundle();
        let mut utts: Vec<Utterance> = (0..10)
            .map(|i| {
                Utterance::from_text(
                    format!("u{i}"),
                    "text. here.",
                    Platform::Reddit,
                    None,
                    Some(if i % 2 == 0 { Label::Ironic } else { Label::NonIronic }),
                    &b,
                )
            })
            .collect();
        utts[3].label = None;
        let err = split(&utts, &SplitSpec::default()).unwrap_err();
        assert!(matches!(err, SplitError::Unlabeled { .. }));
    }
}
