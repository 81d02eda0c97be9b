//! Lexical resources backing the marker detectors: subjectivity lexicon,
//! metaphor lexicon, phrase lists, emoticon/emoji catalogs and the hashtag
//! splitter dictionary.
//!
//! Every resource has an open single-file format (see the `parse_*` /
//! `write_*` pairs) and a small bundled sample so the toolkit runs out of
//! the box. Real research use supplies full resources via `--resources`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::path::Path;

use regex::Regex;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}:{line}: {msg}")]
    Format {
        file: String,
        line: usize,
        msg: String,
    },
    #[error("{file}: resource is empty")]
    Empty { file: String },
}

fn format_err(file: &str, line: usize, msg: impl Into<String>) -> LexiconError {
    LexiconError::Format {
        file: file.to_string(),
        line,
        msg: msg.into(),
    }
}

fn read(path: &Path) -> Result<String, LexiconError> {
    std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn file_name(path: &Path) -> String {
    path.display().to_string()
}

// ---------------------------------------------------------------------------
// Polarity / strength
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    fn parse(s: &str) -> Option<Polarity> {
        match s {
            "positive" => Some(Polarity::Positive),
            "negative" => Some(Polarity::Negative),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strength {
    Strong,
    Weak,
}

impl Strength {
    fn parse(s: &str) -> Option<Strength> {
        match s {
            "strong" => Some(Strength::Strong),
            "weak" => Some(Strength::Weak),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Strength::Strong => "strong",
            Strength::Weak => "weak",
        }
    }
}

// ---------------------------------------------------------------------------
// Subjectivity lexicon
// ---------------------------------------------------------------------------

/// One word of an MPQA-style subjectivity lexicon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubjectivityEntry {
    pub word: String,
    pub polarity: Polarity,
    pub strength: Strength,
}

/// Lookup view over subjectivity entries.
#[derive(Debug, Clone, Default)]
pub struct SubjectivityLexicon {
    map: HashMap<String, (Polarity, Strength)>,
}

impl SubjectivityLexicon {
    pub fn from_entries(entries: &[SubjectivityEntry]) -> Self {
        let map = entries
            .iter()
            .map(|e| (e.word.clone(), (e.polarity, e.strength)))
            .collect();
        SubjectivityLexicon { map }
    }

    pub fn get(&self, word: &str) -> Option<(Polarity, Strength)> {
        self.map.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Parse `word<TAB>positive|negative<TAB>strong|weak` lines.
///
/// Duplicate words are deduplicated last-wins; each duplicate produces a
/// warning string. Unknown polarity/strength tokens are fatal.
pub fn parse_subjectivity(
    content: &str,
    file: &str,
) -> Result<(Vec<SubjectivityEntry>, Vec<String>), LexiconError> {
    let mut entries: Vec<SubjectivityEntry> = Vec::new();
    let mut index_of: HashMap<String, usize> = HashMap::new();
    let mut warnings = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split('\t');
        let word = parts.next().unwrap_or("").trim().to_lowercase();
        let pol = parts.next().unwrap_or("").trim();
        let strength = parts.next().unwrap_or("").trim();
        if word.is_empty() || word.contains(char::is_whitespace) {
            return Err(format_err(file, lineno, "word must be non-empty without whitespace"));
        }
        let polarity = Polarity::parse(pol)
            .ok_or_else(|| format_err(file, lineno, format!("unknown polarity {pol:?}")))?;
        let strength = Strength::parse(strength)
            .ok_or_else(|| format_err(file, lineno, format!("unknown strength {strength:?}")))?;
        let entry = SubjectivityEntry { word: word.clone(), polarity, strength };
        if let Some(&i) = index_of.get(&word) {
            warnings.push(format!("{file}:{lineno}: duplicate word {word:?}, last entry wins"));
            entries[i] = entry;
        } else {
            index_of.insert(word, entries.len());
            entries.push(entry);
        }
    }
    Ok((entries, warnings))
}

pub fn load_subjectivity(
    path: &Path,
) -> Result<(Vec<SubjectivityEntry>, Vec<String>), LexiconError> {
    parse_subjectivity(&read(path)?, &file_name(path))
}

pub fn write_subjectivity(entries: &[SubjectivityEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&format!("{}\t{}\t{}\n", e.word, e.polarity.as_str(), e.strength.as_str()));
    }
    out
}

// ---------------------------------------------------------------------------
// Metaphor lexicon
// ---------------------------------------------------------------------------

/// Set of lowercase unigram-or-bigram metaphor phrases.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MetaphorLexicon {
    unigrams: BTreeSet<String>,
    bigrams: BTreeSet<(String, String)>,
}

impl MetaphorLexicon {
    pub fn contains_unigram(&self, word: &str) -> bool {
        self.unigrams.contains(word)
    }

    pub fn contains_bigram(&self, first: &str, second: &str) -> bool {
        self.bigrams.contains(&(first.to_string(), second.to_string()))
    }

    pub fn len(&self) -> usize {
        self.unigrams.len() + self.bigrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unigrams.is_empty() && self.bigrams.is_empty()
    }

    pub fn entries(&self) -> Vec<String> {
        let mut all: Vec<String> = self.unigrams.iter().cloned().collect();
        all.extend(self.bigrams.iter().map(|(a, b)| format!("{a} {b}")));
        all.sort();
        all
    }
}

/// Parse one phrase per line; `#` starts a comment. Each phrase must have
/// one or two space-separated tokens.
pub fn parse_metaphors(content: &str, file: &str) -> Result<MetaphorLexicon, LexiconError> {
    let mut lex = MetaphorLexicon::default();
    for (lineno, line) in content.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<String> = line.split_whitespace().map(|t| t.to_lowercase()).collect();
        match tokens.as_slice() {
            [w] => {
                lex.unigrams.insert(w.clone());
            }
            [a, b] => {
                lex.bigrams.insert((a.clone(), b.clone()));
            }
            _ => {
                return Err(format_err(
                    file,
                    lineno,
                    format!("metaphor phrase must have 1 or 2 tokens, got {}", tokens.len()),
                ));
            }
        }
    }
    Ok(lex)
}

pub fn load_metaphors(path: &Path) -> Result<MetaphorLexicon, LexiconError> {
    parse_metaphors(&read(path)?, &file_name(path))
}

pub fn write_metaphors(lex: &MetaphorLexicon) -> String {
    let mut out = String::new();
    for entry in lex.entries() {
        out.push_str(&entry);
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Phrase lists (tag questions, interjections)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhraseKind {
    TagQuestion,
    Interjection,
}

/// A lowercase token sequence; tag questions carry a polarity derived from
/// their leading auxiliary ("isn't it?" is negative, "is it?" positive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phrase {
    pub tokens: Vec<String>,
    pub polarity: Option<Polarity>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhraseList {
    pub kind: PhraseKind,
    pub phrases: Vec<Phrase>,
}

/// True for negated auxiliary contractions such as "isn't", "don't", "aren't".
fn is_negated_auxiliary(token: &str) -> bool {
    token.ends_with("n't")
}

/// Parse one phrase per line (`#` comments allowed) into lowercase token
/// sequences. Tag-question phrases are normalized to end with a separate
/// `?` token and annotated with polarity. An empty list is fatal: the
/// downstream detector would be vacuous.
pub fn parse_phrase_list(
    content: &str,
    kind: PhraseKind,
    file: &str,
) -> Result<PhraseList, LexiconError> {
    let mut phrases = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let normalized = line.to_lowercase().replace('\u{2019}', "'");
        let mut tokens: Vec<String> = normalized
            .trim_end_matches('?')
            .split_whitespace()
            .map(|t| t.to_string())
            .collect();
        if tokens.is_empty() {
            return Err(format_err(file, lineno, "phrase has no tokens"));
        }
        let polarity = match kind {
            PhraseKind::TagQuestion => {
                tokens.push("?".to_string());
                if is_negated_auxiliary(&tokens[0]) {
                    Some(Polarity::Negative)
                } else {
                    Some(Polarity::Positive)
                }
            }
            PhraseKind::Interjection => None,
        };
        phrases.push(Phrase { tokens, polarity });
    }
    if phrases.is_empty() {
        return Err(LexiconError::Empty { file: file.to_string() });
    }
    Ok(PhraseList { kind, phrases })
}

pub fn load_phrase_list(path: &Path, kind: PhraseKind) -> Result<PhraseList, LexiconError> {
    parse_phrase_list(&read(path)?, kind, &file_name(path))
}

pub fn write_phrase_list(list: &PhraseList) -> String {
    let mut out = String::new();
    for phrase in &list.phrases {
        let mut tokens = phrase.tokens.clone();
        let question = tokens.last().map(|t| t == "?").unwrap_or(false);
        if question {
            tokens.pop();
        }
        out.push_str(&tokens.join(" "));
        if question {
            out.push('?');
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Emoticon catalog
// ---------------------------------------------------------------------------

/// An emoticon matcher: either a literal string or a regular expression
/// (written `/source/` in the catalog file).
#[derive(Debug, Clone)]
pub enum EmoticonPattern {
    Literal(String),
    Regex { source: String, compiled: Regex },
}

impl PartialEq for EmoticonPattern {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (EmoticonPattern::Literal(a), EmoticonPattern::Literal(b)) => a == b,
            (
                EmoticonPattern::Regex { source: a, .. },
                EmoticonPattern::Regex { source: b, .. },
            ) => a == b,
            _ => false,
        }
    }
}

impl EmoticonPattern {
    /// Length in bytes of the match at the start of `text`, if any.
    fn match_len(&self, text: &str) -> Option<usize> {
        match self {
            EmoticonPattern::Literal(lit) => text.starts_with(lit.as_str()).then(|| lit.len()),
            EmoticonPattern::Regex { compiled, .. } => compiled
                .find(text)
                .filter(|m| m.start() == 0)
                .map(|m| m.end()),
        }
    }

    fn source_repr(&self) -> String {
        match self {
            EmoticonPattern::Literal(lit) => lit.clone(),
            EmoticonPattern::Regex { source, .. } => format!("/{source}/"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmoticonEntry {
    pub pattern: EmoticonPattern,
    pub name: String,
    pub sentiment: Option<Polarity>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EmoticonCatalog {
    pub entries: Vec<EmoticonEntry>,
}

impl EmoticonCatalog {
    /// Longest match over all entries at the start of `text`; ties keep the
    /// earliest catalog entry. Returns (byte length, entry index).
    pub fn match_at(&self, text: &str) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (i, entry) in self.entries.iter().enumerate() {
            if let Some(len) = entry.pattern.match_len(text) {
                if len > 0 && best.map(|(blen, _)| len > blen).unwrap_or(true) {
                    best = Some((len, i));
                }
            }
        }
        best
    }

    /// Entry whose pattern matches `surface` exactly.
    pub fn entry_for(&self, surface: &str) -> Option<&EmoticonEntry> {
        self.entries
            .iter()
            .find(|e| e.pattern.match_len(surface) == Some(surface.len()))
    }
}

fn parse_sentiment(s: &str, file: &str, lineno: usize) -> Result<Option<Polarity>, LexiconError> {
    match s {
        "none" => Ok(None),
        other => Polarity::parse(other)
            .map(Some)
            .ok_or_else(|| format_err(file, lineno, format!("unknown sentiment {other:?}"))),
    }
}

/// Parse `pattern<TAB>name<TAB>positive|negative|none` lines. Patterns
/// wrapped in slashes (`/.../`) are compiled as regular expressions,
/// everything else matches literally. Names must be unique; an empty
/// catalog is fatal.
pub fn parse_emoticon_catalog(content: &str, file: &str) -> Result<EmoticonCatalog, LexiconError> {
    let mut entries = Vec::new();
    let mut names = HashSet::new();
    for (lineno, line) in content.lines().enumerate() {
        let lineno = lineno + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split('\t').collect();
        if parts.len() != 3 {
            return Err(format_err(file, lineno, "expected pattern<TAB>name<TAB>sentiment"));
        }
        let raw = parts[0];
        let name = parts[1].trim().to_string();
        let sentiment = parse_sentiment(parts[2].trim(), file, lineno)?;
        if name.is_empty() {
            return Err(format_err(file, lineno, "empty emoticon name"));
        }
        if !names.insert(name.clone()) {
            return Err(format_err(file, lineno, format!("duplicate emoticon name {name:?}")));
        }
        let pattern = if raw.len() >= 2 && raw.starts_with('/') && raw.ends_with('/') {
            let source = raw[1..raw.len() - 1].to_string();
            let compiled = Regex::new(&source)
                .map_err(|e| format_err(file, lineno, format!("pattern does not compile: {e}")))?;
            EmoticonPattern::Regex { source, compiled }
        } else {
            if raw.is_empty() {
                return Err(format_err(file, lineno, "empty emoticon pattern"));
            }
            EmoticonPattern::Literal(raw.to_string())
        };
        entries.push(EmoticonEntry { pattern, name, sentiment });
    }
    if entries.is_empty() {
        return Err(LexiconError::Empty { file: file.to_string() });
    }
    Ok(EmoticonCatalog { entries })
}

pub fn load_emoticon_catalog(path: &Path) -> Result<EmoticonCatalog, LexiconError> {
    parse_emoticon_catalog(&read(path)?, &file_name(path))
}

pub fn write_emoticon_catalog(catalog: &EmoticonCatalog) -> String {
    let mut out = String::new();
    for e in &catalog.entries {
        let sentiment = e.sentiment.map(|p| p.as_str()).unwrap_or("none");
        out.push_str(&format!("{}\t{}\t{}\n", e.pattern.source_repr(), e.name, sentiment));
    }
    out
}

// ---------------------------------------------------------------------------
// Emoji catalog
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmojiEntry {
    pub codepoints: Vec<char>,
    pub name: String,
    pub sentiment: Option<Polarity>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EmojiCatalog {
    pub entries: Vec<EmojiEntry>,
}

impl EmojiCatalog {
    /// Longest codepoint-sequence match at the start of `chars`.
    /// Returns (matched char count, entry index).
    pub fn match_at(&self, chars: &[char]) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (i, entry) in self.entries.iter().enumerate() {
            let n = entry.codepoints.len();
            if n <= chars.len()
                && entry.codepoints[..] == chars[..n]
                && best.map(|(bn, _)| n > bn).unwrap_or(true)
            {
                best = Some((n, i));
            }
        }
        best
    }

    pub fn entry_for(&self, surface: &str) -> Option<&EmojiEntry> {
        let chars: Vec<char> = surface.chars().collect();
        self.entries.iter().find(|e| e.codepoints == chars)
    }
}

/// Parse `hyphen-joined-hex-codepoints<TAB>name<TAB>sentiment` lines, e.g.
/// `2764-FE0F<TAB>red_heart<TAB>positive`. Duplicate codepoint sequences and
/// duplicate names are fatal, as is an empty catalog.
pub fn parse_emoji_catalog(content: &str, file: &str) -> Result<EmojiCatalog, LexiconError> {
    let mut entries = Vec::new();
    let mut names = HashSet::new();
    let mut sequences = HashSet::new();
    for (lineno, line) in content.lines().enumerate() {
        let lineno = lineno + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split('\t').collect();
        if parts.len() != 3 {
            return Err(format_err(file, lineno, "expected codepoints<TAB>name<TAB>sentiment"));
        }
        let mut codepoints = Vec::new();
        for hex in parts[0].trim().split('-') {
            let value = u32::from_str_radix(hex, 16)
                .map_err(|_| format_err(file, lineno, format!("invalid codepoint hex {hex:?}")))?;
            let c = char::from_u32(value)
                .ok_or_else(|| format_err(file, lineno, format!("U+{value:X} is not a scalar value")))?;
            codepoints.push(c);
        }
        if codepoints.is_empty() {
            return Err(format_err(file, lineno, "empty codepoint sequence"));
        }
        if !sequences.insert(codepoints.clone()) {
            return Err(format_err(
                file,
                lineno,
                format!("duplicate codepoint sequence {:?}", parts[0]),
            ));
        }
        let name = parts[1].trim().to_string();
        if name.is_empty() {
            return Err(format_err(file, lineno, "empty emoji name"));
        }
        if !names.insert(name.clone()) {
            return Err(format_err(file, lineno, format!("duplicate emoji name {name:?}")));
        }
        let sentiment = parse_sentiment(parts[2].trim(), file, lineno)?;
        entries.push(EmojiEntry { codepoints, name, sentiment });
    }
    if entries.is_empty() {
        return Err(LexiconError::Empty { file: file.to_string() });
    }
    Ok(EmojiCatalog { entries })
}

pub fn load_emoji_catalog(path: &Path) -> Result<EmojiCatalog, LexiconError> {
    parse_emoji_catalog(&read(path)?, &file_name(path))
}

pub fn write_emoji_catalog(catalog: &EmojiCatalog) -> String {
    let mut out = String::new();
    for e in &catalog.entries {
        let hex: Vec<String> = e.codepoints.iter().map(|c| format!("{:X}", *c as u32)).collect();
        let sentiment = e.sentiment.map(|p| p.as_str()).unwrap_or("none");
        out.push_str(&format!("{}\t{}\t{}\n", hex.join("-"), e.name, sentiment));
    }
    out
}

// ---------------------------------------------------------------------------
// Splitter dictionary + hashtag segmentation
// ---------------------------------------------------------------------------

/// Word list with frequency ranks (1 = most frequent) for hashtag splitting.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SplitterDictionary {
    ranks: HashMap<String, u64>,
    max_word_len: usize,
}

impl SplitterDictionary {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, u64)>) -> Self {
        let mut dict = SplitterDictionary::default();
        for (word, rank) in pairs {
            dict.insert(word, rank);
        }
        dict
    }

    fn insert(&mut self, word: String, rank: u64) {
        self.max_word_len = self.max_word_len.max(word.chars().count());
        self.ranks.insert(word, rank);
    }

    pub fn rank(&self, word: &str) -> Option<u64> {
        self.ranks.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn words(&self) -> Vec<(String, u64)> {
        let mut pairs: Vec<(String, u64)> = self.ranks.iter().map(|(w, r)| (w.clone(), *r)).collect();
        pairs.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        pairs
    }
}

/// Parse `word<TAB>rank` lines. Duplicate words are deduplicated last-wins
/// with a warning.
pub fn parse_splitter_dict(
    content: &str,
    file: &str,
) -> Result<(SplitterDictionary, Vec<String>), LexiconError> {
    let mut dict = SplitterDictionary::default();
    let mut warnings = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split('\t');
        let word = parts.next().unwrap_or("").trim().to_lowercase();
        let rank_str = parts.next().unwrap_or("").trim();
        if word.is_empty() {
            return Err(format_err(file, lineno, "empty word"));
        }
        let rank: u64 = rank_str
            .parse()
            .map_err(|_| format_err(file, lineno, format!("invalid rank {rank_str:?}")))?;
        if rank == 0 {
            return Err(format_err(file, lineno, "rank must be positive"));
        }
        if dict.ranks.contains_key(&word) {
            warnings.push(format!("{file}:{lineno}: duplicate word {word:?}, last rank wins"));
        }
        dict.insert(word, rank);
    }
    Ok((dict, warnings))
}

pub fn load_splitter_dict(
    path: &Path,
) -> Result<(SplitterDictionary, Vec<String>), LexiconError> {
    parse_splitter_dict(&read(path)?, &file_name(path))
}

pub fn write_splitter_dict(dict: &SplitterDictionary) -> String {
    let mut out = String::new();
    for (word, rank) in dict.words() {
        out.push_str(&format!("{word}\t{rank}\n"));
    }
    out
}

/// Segment a hashtag body (no leading `#`) into dictionary words.
///
/// Dynamic program over character positions minimizing first the number of
/// segments, then the sum of the segments' frequency ranks. Matching is
/// case-insensitive; the returned segments are slices of the original tag,
/// so concatenating them reproduces the input exactly. When no full
/// segmentation exists the whole tag comes back as a single segment.
pub fn split_hashtag(tag: &str, dict: &SplitterDictionary) -> Vec<String> {
    if tag.is_empty() {
        return Vec::new();
    }
    let chars: Vec<char> = tag.chars().collect();
    let lower: Vec<char> = tag.to_lowercase().chars().collect();
    // Lowercasing can change char counts for exotic scripts; hashtag bodies
    // are alphanumeric, fall back to the whole tag otherwise.
    if lower.len() != chars.len() {
        return vec![tag.to_string()];
    }
    let n = chars.len();
    // best[i]: minimal (segments, rank sum) covering chars[..i], plus the
    // start of the final segment for reconstruction.
    let mut best: Vec<Option<(usize, u64, usize)>> = vec![None; n + 1];
    best[0] = Some((0, 0, 0));
    let max_len = dict.max_word_len.min(n);
    for end in 1..=n {
        let lo = end.saturating_sub(max_len);
        for start in lo..end {
            let Some((segs, ranks, _)) = best[start] else { continue };
            let piece: String = lower[start..end].iter().collect();
            let Some(rank) = dict.rank(&piece) else { continue };
            let cand = (segs + 1, ranks + rank, start);
            match best[end] {
                Some((bs, br, _)) if (bs, br) <= (cand.0, cand.1) => {}
                _ => best[end] = Some(cand),
            }
        }
    }
    if best[n].is_none() {
        return vec![tag.to_string()];
    }
    let mut out = Vec::new();
    let mut end = n;
    while end > 0 {
        let (_, _, start) = best[end].expect("reachable position");
        out.push(chars[start..end].iter().collect::<String>());
        end = start;
    }
    out.reverse();
    out
}

// ---------------------------------------------------------------------------
// Resource bundle
// ---------------------------------------------------------------------------

/// Canonical resource file names inside a resource directory.
pub const SUBJECTIVITY_FILE: &str = "subjectivity.tsv";
pub const METAPHORS_FILE: &str = "metaphors.txt";
pub const TAG_QUESTIONS_FILE: &str = "tag_questions.txt";
pub const INTERJECTIONS_FILE: &str = "interjections.txt";
pub const EMOTICONS_FILE: &str = "emoticons.tsv";
pub const EMOJI_FILE: &str = "emoji.tsv";
pub const SPLITTER_DICT_FILE: &str = "splitter_dict.tsv";

/// Default hashtags treated as irony labels rather than content.
pub const DEFAULT_LABEL_HASHTAGS: [&str; 3] = ["#irony", "#sarcasm", "#sarcastic"];

/// Every lexical resource the detectors need, immutable after load.
#[derive(Debug, Clone)]
pub struct ResourceBundle {
    pub subjectivity: SubjectivityLexicon,
    pub metaphors: MetaphorLexicon,
    pub tag_questions: PhraseList,
    pub interjections: PhraseList,
    pub emoticons: EmoticonCatalog,
    pub emoji: EmojiCatalog,
    pub splitter: SplitterDictionary,
    /// Lowercase label hashtags (with `#`) excluded from hashtag sentiment.
    pub label_hashtags: BTreeSet<String>,
    /// Optional precomputed metaphor annotations (utterance id -> flag),
    /// OR-ed into `metaphor_present`.
    pub metaphor_annotations: Option<HashMap<String, bool>>,
}

impl ResourceBundle {
    /// Bundle built from the sample resources compiled into the crate.
    pub fn bundled() -> ResourceBundle {
        crate::markers::assert_namespace_partition();
        let (subj, _) = parse_subjectivity(
            include_str!("../resources/subjectivity.tsv"),
            "bundled:subjectivity.tsv",
        )
        .expect("bundled subjectivity lexicon is valid");
        let metaphors = parse_metaphors(
            include_str!("../resources/metaphors.txt"),
            "bundled:metaphors.txt",
        )
        .expect("bundled metaphor lexicon is valid");
        let tag_questions = parse_phrase_list(
            include_str!("../resources/tag_questions.txt"),
            PhraseKind::TagQuestion,
            "bundled:tag_questions.txt",
        )
        .expect("bundled tag questions are valid");
        let interjections = parse_phrase_list(
            include_str!("../resources/interjections.txt"),
            PhraseKind::Interjection,
            "bundled:interjections.txt",
        )
        .expect("bundled interjections are valid");
        let emoticons = parse_emoticon_catalog(
            include_str!("../resources/emoticons.tsv"),
            "bundled:emoticons.tsv",
        )
        .expect("bundled emoticon catalog is valid");
        let emoji =
            parse_emoji_catalog(include_str!("../resources/emoji.tsv"), "bundled:emoji.tsv")
                .expect("bundled emoji catalog is valid");
        let (splitter, _) = parse_splitter_dict(
            include_str!("../resources/splitter_dict.tsv"),
            "bundled:splitter_dict.tsv",
        )
        .expect("bundled splitter dictionary is valid");
        ResourceBundle {
            subjectivity: SubjectivityLexicon::from_entries(&subj),
            metaphors,
            tag_questions,
            interjections,
            emoticons,
            emoji,
            splitter,
            label_hashtags: DEFAULT_LABEL_HASHTAGS.iter().map(|s| s.to_string()).collect(),
            metaphor_annotations: None,
        }
    }

    /// Load a bundle from a directory holding the canonical resource files.
    /// Returns the bundle plus any loader warnings.
    pub fn load_dir(dir: &Path) -> Result<(ResourceBundle, Vec<String>), LexiconError> {
        crate::markers::assert_namespace_partition();
        let mut warnings = Vec::new();
        let (subj, w) = load_subjectivity(&dir.join(SUBJECTIVITY_FILE))?;
        warnings.extend(w);
        let metaphors = load_metaphors(&dir.join(METAPHORS_FILE))?;
        let tag_questions =
            load_phrase_list(&dir.join(TAG_QUESTIONS_FILE), PhraseKind::TagQuestion)?;
        let interjections =
            load_phrase_list(&dir.join(INTERJECTIONS_FILE), PhraseKind::Interjection)?;
        let emoticons = load_emoticon_catalog(&dir.join(EMOTICONS_FILE))?;
        let emoji = load_emoji_catalog(&dir.join(EMOJI_FILE))?;
        let (splitter, w) = load_splitter_dict(&dir.join(SPLITTER_DICT_FILE))?;
        warnings.extend(w);
        Ok((
            ResourceBundle {
                subjectivity: SubjectivityLexicon::from_entries(&subj),
                metaphors,
                tag_questions,
                interjections,
                emoticons,
                emoji,
                splitter,
                label_hashtags: DEFAULT_LABEL_HASHTAGS.iter().map(|s| s.to_string()).collect(),
                metaphor_annotations: None,
            },
            warnings,
        ))
    }

    pub fn with_label_hashtags(mut self, tags: impl IntoIterator<Item = String>) -> Self {
        self.label_hashtags = tags.into_iter().map(|t| t.to_lowercase()).collect();
        self
    }

    /// Attach a precomputed metaphor-annotation sidecar (`id<TAB>0|1` lines).
    pub fn with_metaphor_annotations(mut self, path: &Path) -> Result<Self, LexiconError> {
        let content = read(path)?;
        let file = file_name(path);
        let mut map = HashMap::new();
        for (lineno, line) in content.lines().enumerate() {
            let lineno = lineno + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split('\t');
            let id = parts.next().unwrap_or("").trim().to_string();
            let flag = parts.next().unwrap_or("").trim();
            let value = match flag {
                "0" => false,
                "1" => true,
                other => {
                    return Err(format_err(&file, lineno, format!("expected 0 or 1, got {other:?}")))
                }
            };
            map.insert(id, value);
        }
        self.metaphor_annotations = Some(map);
        Ok(self)
    }

    pub fn is_label_hashtag(&self, hashtag: &str) -> bool {
        self.label_hashtags.contains(&hashtag.to_lowercase())
    }
}
