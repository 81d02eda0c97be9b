//! The twelve irony-marker detectors: tropes (metaphor, hyperbole,
//! rhetorical question), morpho-syntactic (exclamation, tag question,
//! interjection) and typographic (capitalization, quotation, punctuation,
//! hashtag sentiment, emoticon, emoji).
//!
//! Every detector is a pure function from an utterance plus resources to a
//! set of binary features drawn from a fixed namespace; [`extract_all`] is
//! their union.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::corpus::{Platform, Utterance};
use crate::lexicons::{
    split_hashtag, EmojiCatalog, EmoticonCatalog, MetaphorLexicon, PhraseList, Polarity,
    ResourceBundle, SplitterDictionary, Strength, SubjectivityLexicon,
};
use crate::tokenizer::{is_emoji_like, Token, TokenKind};

/// The three theoretically grounded marker families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FeatureGroup {
    Trope,
    MorphoSyntactic,
    Typographic,
}

impl FeatureGroup {
    pub const ALL: [FeatureGroup; 3] = [
        FeatureGroup::Trope,
        FeatureGroup::MorphoSyntactic,
        FeatureGroup::Typographic,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FeatureGroup::Trope => "trope",
            FeatureGroup::MorphoSyntactic => "morpho_syntactic",
            FeatureGroup::Typographic => "typographic",
        }
    }

    /// Accepts the ablation spellings used on the command line.
    pub fn parse(s: &str) -> Option<FeatureGroup> {
        match s.to_lowercase().as_str() {
            "trope" | "tropes" => Some(FeatureGroup::Trope),
            "ms" | "morpho_syntactic" | "morpho-syntactic" => Some(FeatureGroup::MorphoSyntactic),
            "typography" | "typographic" => Some(FeatureGroup::Typographic),
            _ => None,
        }
    }
}

/// Fixed non-parametric feature names and their groups. Per-catalog-entry
/// features (`emoticon_<name>`, `emoji_<name>`) extend this namespace.
pub const FIXED_FEATURES: [(&str, FeatureGroup); 24] = [
    ("metaphor_present", FeatureGroup::Trope),
    ("hyperbole_present", FeatureGroup::Trope),
    ("hyperbole_pos", FeatureGroup::Trope),
    ("hyperbole_neg", FeatureGroup::Trope),
    ("rq_present", FeatureGroup::Trope),
    ("exclaim_single", FeatureGroup::MorphoSyntactic),
    ("exclaim_multi", FeatureGroup::MorphoSyntactic),
    ("tagq_present", FeatureGroup::MorphoSyntactic),
    ("tagq_pos", FeatureGroup::MorphoSyntactic),
    ("tagq_neg", FeatureGroup::MorphoSyntactic),
    ("interjection_present", FeatureGroup::MorphoSyntactic),
    ("caps_present", FeatureGroup::Typographic),
    ("quote_present", FeatureGroup::Typographic),
    ("punct_q_single", FeatureGroup::Typographic),
    ("punct_q_multi", FeatureGroup::Typographic),
    ("punct_period_single", FeatureGroup::Typographic),
    ("punct_period_multi", FeatureGroup::Typographic),
    ("punct_semi_single", FeatureGroup::Typographic),
    ("punct_semi_multi", FeatureGroup::Typographic),
    ("punct_mix", FeatureGroup::Typographic),
    ("hashtag_pos", FeatureGroup::Typographic),
    ("hashtag_neg", FeatureGroup::Typographic),
    ("emoticon_pos", FeatureGroup::Typographic),
    ("emoticon_neg", FeatureGroup::Typographic),
];

/// Group of a feature name, or `None` for names outside the namespace.
pub fn feature_group(name: &str) -> Option<FeatureGroup> {
    for (fixed, group) in FIXED_FEATURES {
        if fixed == name {
            return Some(group);
        }
    }
    if name.starts_with("emoticon_") || name.starts_with("emoji_") {
        return Some(FeatureGroup::Typographic);
    }
    None
}

/// Check that the feature namespace is exactly partitioned by the three
/// groups. Called once when a [`ResourceBundle`] is constructed; panics on
/// an inconsistent namespace, which would be a programming error.
pub fn assert_namespace_partition() {
    let mut seen = BTreeSet::new();
    for (name, group) in FIXED_FEATURES {
        assert!(seen.insert(name), "feature {name:?} listed twice");
        assert_eq!(
            feature_group(name),
            Some(group),
            "feature {name:?} does not resolve to its own group"
        );
    }
    // Parametric prefixes resolve to Typographic, so any fixed feature that
    // shares a prefix must be typographic too or lookups would be ambiguous.
    for (name, group) in FIXED_FEATURES {
        if name.starts_with("emoticon_") || name.starts_with("emoji_") {
            assert_eq!(group, FeatureGroup::Typographic, "prefix clash on {name:?}");
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown feature name {0:?}")]
pub struct UnknownFeature(pub String);

/// Sparse set of active (value 1) binary marker features, each tagged with
/// its group. Absent names have value 0; names outside the namespace are
/// rejected.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MarkerVector {
    active: BTreeMap<String, FeatureGroup>,
}

impl MarkerVector {
    pub fn new() -> MarkerVector {
        MarkerVector::default()
    }

    pub fn set(&mut self, name: &str) -> Result<(), UnknownFeature> {
        let group = feature_group(name).ok_or_else(|| UnknownFeature(name.to_string()))?;
        self.active.insert(name.to_string(), group);
        Ok(())
    }

    pub fn get(&self, name: &str) -> u8 {
        u8::from(self.active.contains_key(name))
    }

    pub fn is_set(&self, name: &str) -> bool {
        self.active.contains_key(name)
    }

    pub fn group_of(&self, name: &str) -> Option<FeatureGroup> {
        self.active.get(name).copied()
    }

    /// Active feature names with their groups, in lexicographic order.
    pub fn active(&self) -> impl Iterator<Item = (&str, FeatureGroup)> {
        self.active.iter().map(|(n, g)| (n.as_str(), *g))
    }

    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }

    pub fn merge(&mut self, other: &MarkerVector) {
        for (name, group) in &other.active {
            self.active.insert(name.clone(), *group);
        }
    }

    pub fn any_in_group(&self, group: FeatureGroup) -> bool {
        self.active.values().any(|g| *g == group)
    }

    fn set_known(&mut self, name: &str) {
        self.set(name).expect("name from the fixed namespace");
    }
}

fn normalize_surface(surface: &str) -> String {
    surface.to_lowercase().replace('\u{2019}', "'")
}

// ---------------------------------------------------------------------------
// Tropes
// ---------------------------------------------------------------------------

fn metaphor_hits(utt: &Utterance, lexicon: &MetaphorLexicon) -> usize {
    let words: Vec<(usize, String)> = utt
        .tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.is_word())
        .map(|(i, t)| (i, t.surface.to_lowercase()))
        .collect();
    let mut hits = 0;
    for (pos, (idx, word)) in words.iter().enumerate() {
        if lexicon.contains_unigram(word) {
            hits += 1;
        }
        // Bigrams must be adjacent in the token stream, not merely adjacent
        // words with punctuation in between.
        if let Some((next_idx, next_word)) = words.get(pos + 1) {
            if *next_idx == idx + 1 && lexicon.contains_bigram(word, next_word) {
                hits += 1;
            }
        }
    }
    hits
}

/// `metaphor_present` from lexicon matches, OR-ed with an optional
/// precomputed annotation for this utterance.
pub fn detect_metaphor(
    utt: &Utterance,
    lexicon: &MetaphorLexicon,
    annotation: Option<bool>,
) -> MarkerVector {
    let mut mv = MarkerVector::new();
    if metaphor_hits(utt, lexicon) > 0 || annotation.unwrap_or(false) {
        mv.set_known("metaphor_present");
    }
    mv
}

fn hyperbole_hits(utt: &Utterance, subj: &SubjectivityLexicon) -> (usize, usize) {
    let mut pos = 0;
    let mut neg = 0;
    for token in utt.tokens.iter().filter(|t| t.is_word()) {
        if let Some((polarity, Strength::Strong)) = subj.get(&token.surface.to_lowercase()) {
            match polarity {
                Polarity::Positive => pos += 1,
                Polarity::Negative => neg += 1,
            }
        }
    }
    (pos, neg)
}

/// Hyperbole: strong-subjective words, with their polarities as features.
pub fn detect_hyperbole(utt: &Utterance, subj: &SubjectivityLexicon) -> MarkerVector {
    let (pos, neg) = hyperbole_hits(utt, subj);
    let mut mv = MarkerVector::new();
    if pos + neg > 0 {
        mv.set_known("hyperbole_present");
    }
    if pos > 0 {
        mv.set_known("hyperbole_pos");
    }
    if neg > 0 {
        mv.set_known("hyperbole_neg");
    }
    mv
}

fn sentence_ends_with_question(utt: &Utterance, span: (usize, usize)) -> bool {
    utt.text.chars().nth(span.1 - 1) == Some('?')
}

fn rq_hits(utt: &Utterance) -> usize {
    let sentences = &utt.sentences;
    let mut hits = 0;
    for (i, &span) in sentences.iter().enumerate() {
        if !sentence_ends_with_question(utt, span) {
            continue;
        }
        let followed = sentences[i + 1..]
            .iter()
            .any(|&later| utt.tokens_in(later).any(Token::is_word));
        if followed {
            hits += 1;
        }
    }
    hits
}

/// Rhetorical question: a question sentence followed by further text
/// cannot be an ordinary information-seeking question.
pub fn detect_rhetorical_question(utt: &Utterance) -> MarkerVector {
    let mut mv = MarkerVector::new();
    if rq_hits(utt) > 0 {
        mv.set_known("rq_present");
    }
    mv
}

// ---------------------------------------------------------------------------
// Morpho-syntactic markers
// ---------------------------------------------------------------------------

fn exclamation_hits(utt: &Utterance) -> (usize, usize) {
    let mut single = 0;
    let mut multi = 0;
    for token in &utt.tokens {
        if token.kind == TokenKind::Punct && token.surface.chars().all(|c| c == '!') {
            if token.surface.chars().count() == 1 {
                single += 1;
            } else {
                multi += 1;
            }
        }
    }
    (single, multi)
}

pub fn detect_exclamation(utt: &Utterance) -> MarkerVector {
    let (single, multi) = exclamation_hits(utt);
    let mut mv = MarkerVector::new();
    if single > 0 {
        mv.set_known("exclaim_single");
    }
    if multi > 0 {
        mv.set_known("exclaim_multi");
    }
    mv
}

/// Does the phrase match the token window starting at `start`? The phrase's
/// final "?" (tag questions) matches any pure-"?" punctuation token.
fn phrase_matches_at(utt: &Utterance, start: usize, phrase_tokens: &[String]) -> bool {
    if start + phrase_tokens.len() > utt.tokens.len() {
        return false;
    }
    phrase_tokens.iter().enumerate().all(|(k, expected)| {
        let token = &utt.tokens[start + k];
        if expected == "?" {
            token.kind == TokenKind::Punct && token.surface.chars().all(|c| c == '?')
        } else {
            normalize_surface(&token.surface) == *expected
        }
    })
}

/// (phrase index, token position) of every contiguous match.
fn phrase_hits(utt: &Utterance, list: &PhraseList) -> Vec<(usize, usize)> {
    let mut hits = Vec::new();
    for (pi, phrase) in list.phrases.iter().enumerate() {
        for start in 0..utt.tokens.len() {
            if phrase_matches_at(utt, start, &phrase.tokens) {
                hits.push((pi, start));
            }
        }
    }
    hits
}

/// Tag question match with polarity from the phrase list.
pub fn detect_tag_question(utt: &Utterance, tags: &PhraseList) -> MarkerVector {
    let mut mv = MarkerVector::new();
    for (pi, _) in phrase_hits(utt, tags) {
        mv.set_known("tagq_present");
        match tags.phrases[pi].polarity {
            Some(Polarity::Positive) => mv.set_known("tagq_pos"),
            Some(Polarity::Negative) => mv.set_known("tagq_neg"),
            None => {}
        }
    }
    mv
}

pub fn detect_interjection(utt: &Utterance, interjections: &PhraseList) -> MarkerVector {
    let mut mv = MarkerVector::new();
    if !phrase_hits(utt, interjections).is_empty() {
        mv.set_known("interjection_present");
    }
    mv
}

// ---------------------------------------------------------------------------
// Typographic markers
// ---------------------------------------------------------------------------

fn is_shouted(token: &Token) -> bool {
    let alpha = token.surface.chars().filter(|c| c.is_alphabetic());
    alpha.clone().count() >= 2 && alpha.clone().all(|c| !c.is_lowercase())
}

fn capitalization_hits(utt: &Utterance) -> usize {
    utt.tokens.iter().filter(|t| t.is_word() && is_shouted(t)).count()
}

/// Intentional all-caps words ("AWESOME"); single-character words such as
/// bare "I" never count.
pub fn detect_capitalization(utt: &Utterance) -> MarkerVector {
    let mut mv = MarkerVector::new();
    if capitalization_hits(utt) > 0 {
        mv.set_known("caps_present");
    }
    mv
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum QuoteMark {
    Toggle(char),
    Open(char),
    Close(char),
}

fn quote_mark(token: &Token) -> Option<QuoteMark> {
    if token.kind != TokenKind::Punct || token.surface.chars().count() != 1 {
        return None;
    }
    match token.surface.chars().next().unwrap() {
        c @ ('"' | '\'') => Some(QuoteMark::Toggle(c)),
        '\u{201C}' => Some(QuoteMark::Open('\u{201D}')),
        '\u{2018}' => Some(QuoteMark::Open('\u{2019}')),
        c @ ('\u{201D}' | '\u{2019}') => Some(QuoteMark::Close(c)),
        _ => None,
    }
}

fn quotation_hits(utt: &Utterance) -> usize {
    let mut hits = 0;
    let mut open_toggle: BTreeMap<char, usize> = BTreeMap::new();
    let mut open_directional: Vec<(char, usize)> = Vec::new();
    for (i, token) in utt.tokens.iter().enumerate() {
        match quote_mark(token) {
            Some(QuoteMark::Toggle(c)) => {
                if let Some(start) = open_toggle.remove(&c) {
                    if (1..=3).contains(&(i - start - 1)) {
                        hits += 1;
                    }
                } else {
                    open_toggle.insert(c, i);
                }
            }
            Some(QuoteMark::Open(closer)) => open_directional.push((closer, i)),
            Some(QuoteMark::Close(c)) => {
                if let Some(pos) = open_directional.iter().rposition(|&(cl, _)| cl == c) {
                    let (_, start) = open_directional.remove(pos);
                    if (1..=3).contains(&(i - start - 1)) {
                        hits += 1;
                    }
                }
            }
            None => {}
        }
    }
    hits
}

/// Scare quotes: a matched pair of quotation marks enclosing one to three
/// tokens.
pub fn detect_quotation(utt: &Utterance) -> MarkerVector {
    let mut mv = MarkerVector::new();
    if quotation_hits(utt) > 0 {
        mv.set_known("quote_present");
    }
    mv
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct PunctHits {
    q_single: usize,
    q_multi: usize,
    period_single: usize,
    period_multi: usize,
    semi_single: usize,
    semi_multi: usize,
    mix: usize,
}

impl PunctHits {
    fn total(&self) -> usize {
        self.q_single
            + self.q_multi
            + self.period_single
            + self.period_multi
            + self.semi_single
            + self.semi_multi
            + self.mix
    }
}

const MIX_CHARS: [char; 4] = ['?', '!', '.', ';'];

fn punctuation_hits(utt: &Utterance) -> PunctHits {
    let mut hits = PunctHits::default();
    for (i, token) in utt.tokens.iter().enumerate() {
        if token.kind != TokenKind::Punct {
            continue;
        }
        let c = token.surface.chars().next().unwrap();
        let len = token.surface.chars().count();
        match (c, len) {
            ('?', 1) => hits.q_single += 1,
            ('?', _) => hits.q_multi += 1,
            ('.', 1) => hits.period_single += 1,
            ('.', _) => hits.period_multi += 1,
            (';', 1) => hits.semi_single += 1,
            (';', _) => hits.semi_multi += 1,
            _ => {}
        }
        // A mix is two different marks from {?, !, ., ;} with no gap
        // between the runs, e.g. "?!".
        if let Some(next) = utt.tokens.get(i + 1) {
            if next.kind == TokenKind::Punct && next.span.0 == token.span.1 {
                let d = next.surface.chars().next().unwrap();
                if c != d && MIX_CHARS.contains(&c) && MIX_CHARS.contains(&d) {
                    hits.mix += 1;
                }
            }
        }
    }
    hits
}

/// Single/multiple uses of "?", ".", ";" plus mixes of two different marks.
pub fn detect_punctuation(utt: &Utterance) -> MarkerVector {
    let hits = punctuation_hits(utt);
    let mut mv = MarkerVector::new();
    let pairs = [
        (hits.q_single, "punct_q_single"),
        (hits.q_multi, "punct_q_multi"),
        (hits.period_single, "punct_period_single"),
        (hits.period_multi, "punct_period_multi"),
        (hits.semi_single, "punct_semi_single"),
        (hits.semi_multi, "punct_semi_multi"),
        (hits.mix, "punct_mix"),
    ];
    for (count, name) in pairs {
        if count > 0 {
            mv.set_known(name);
        }
    }
    mv
}

fn hashtag_hits(
    utt: &Utterance,
    subj: &SubjectivityLexicon,
    dict: &SplitterDictionary,
    label_hashtags: &BTreeSet<String>,
) -> (usize, usize) {
    if utt.platform != Platform::Twitter {
        return (0, 0);
    }
    let mut pos = 0;
    let mut neg = 0;
    for token in utt.tokens.iter().filter(|t| t.kind == TokenKind::Hashtag) {
        if label_hashtags.contains(&token.surface.to_lowercase()) {
            continue;
        }
        let body = &token.surface[1..];
        for part in body.split('_').filter(|p| !p.is_empty()) {
            for word in split_hashtag(part, dict) {
                match subj.get(&word.to_lowercase()).map(|(p, _)| p) {
                    Some(Polarity::Positive) => pos += 1,
                    Some(Polarity::Negative) => neg += 1,
                    None => {}
                }
            }
        }
    }
    (pos, neg)
}

/// Sentiment of hashtag words (any lexicon strength), after splitting
/// multi-word hashtags. Label hashtags are labels, not content, and are
/// skipped; platforms without hashtags yield all zeros.
pub fn detect_hashtag_sentiment(
    utt: &Utterance,
    subj: &SubjectivityLexicon,
    dict: &SplitterDictionary,
    label_hashtags: &BTreeSet<String>,
) -> MarkerVector {
    let (pos, neg) = hashtag_hits(utt, subj, dict, label_hashtags);
    let mut mv = MarkerVector::new();
    if pos > 0 {
        mv.set_known("hashtag_pos");
    }
    if neg > 0 {
        mv.set_known("hashtag_neg");
    }
    mv
}

fn emoticon_hits(
    utt: &Utterance,
    catalog: &EmoticonCatalog,
    subj: &SubjectivityLexicon,
) -> (BTreeMap<String, usize>, usize, usize) {
    let mut per_entry: BTreeMap<String, usize> = BTreeMap::new();
    let mut pos = 0;
    let mut neg = 0;
    for token in utt.tokens.iter().filter(|t| t.kind == TokenKind::Emoticon) {
        let Some(entry) = catalog.entry_for(&token.surface) else { continue };
        *per_entry.entry(entry.name.clone()).or_default() += 1;
        // Catalog sentiment wins; otherwise the emoticon NAME is looked up
        // in the subjectivity lexicon ("wink" reads as positive there).
        let sentiment = entry
            .sentiment
            .or_else(|| subj.get(&entry.name).map(|(p, _)| p));
        match sentiment {
            Some(Polarity::Positive) => pos += 1,
            Some(Polarity::Negative) => neg += 1,
            None => {}
        }
    }
    (per_entry, pos, neg)
}

/// Per-entry emoticon indicators plus aggregate sentiment features.
pub fn detect_emoticon(
    utt: &Utterance,
    catalog: &EmoticonCatalog,
    subj: &SubjectivityLexicon,
) -> MarkerVector {
    let (per_entry, pos, neg) = emoticon_hits(utt, catalog, subj);
    let mut mv = MarkerVector::new();
    for name in per_entry.keys() {
        mv.set_known(&format!("emoticon_{name}"));
    }
    if pos > 0 {
        mv.set_known("emoticon_pos");
    }
    if neg > 0 {
        mv.set_known("emoticon_neg");
    }
    mv
}

fn emoji_hits(utt: &Utterance, catalog: &EmojiCatalog) -> BTreeMap<String, usize> {
    let mut per_entry: BTreeMap<String, usize> = BTreeMap::new();
    for token in utt.tokens.iter().filter(|t| t.kind == TokenKind::Emoji) {
        if let Some(entry) = catalog.entry_for(&token.surface) {
            *per_entry.entry(entry.name.clone()).or_default() += 1;
        }
    }
    per_entry
}

/// Per-entry emoji indicators. Emoji outside the catalog are ignored here
/// and show up in [`unknown_emoji_count`].
pub fn detect_emoji(utt: &Utterance, catalog: &EmojiCatalog) -> MarkerVector {
    let mut mv = MarkerVector::new();
    for name in emoji_hits(utt, catalog).keys() {
        mv.set_known(&format!("emoji_{name}"));
    }
    mv
}

/// Picture characters the tokenizer could not match against the emoji
/// catalog; reported as a diagnostic by the extraction pipeline.
pub fn unknown_emoji_count(utt: &Utterance) -> usize {
    utt.tokens
        .iter()
        .filter(|t| t.kind == TokenKind::Other && t.surface.chars().all(is_emoji_like))
        .count()
}

/// Union of all twelve detectors.
pub fn extract_all(utt: &Utterance, resources: &ResourceBundle) -> MarkerVector {
    let annotation = resources
        .metaphor_annotations
        .as_ref()
        .and_then(|m| m.get(&utt.id).copied());
    let mut mv = MarkerVector::new();
    mv.merge(&detect_metaphor(utt, &resources.metaphors, annotation));
    mv.merge(&detect_hyperbole(utt, &resources.subjectivity));
    mv.merge(&detect_rhetorical_question(utt));
    mv.merge(&detect_exclamation(utt));
    mv.merge(&detect_tag_question(utt, &resources.tag_questions));
    mv.merge(&detect_interjection(utt, &resources.interjections));
    mv.merge(&detect_capitalization(utt));
    mv.merge(&detect_quotation(utt));
    mv.merge(&detect_punctuation(utt));
    mv.merge(&detect_hashtag_sentiment(
        utt,
        &resources.subjectivity,
        &resources.splitter,
        &resources.label_hashtags,
    ));
    mv.merge(&detect_emoticon(utt, &resources.emoticons, &resources.subjectivity));
    mv.merge(&detect_emoji(utt, &resources.emoji));
    mv
}

// ---------------------------------------------------------------------------
// Marker-level view (for frequency analysis)
// ---------------------------------------------------------------------------

/// The twelve markers as rows of the frequency tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marker {
    Metaphor,
    Hyperbole,
    RhetoricalQuestion,
    Exclamation,
    TagQuestion,
    Interjection,
    Capitalization,
    Quotation,
    Punctuation,
    Hashtag,
    Emoticon,
    Emoji,
}

impl Marker {
    pub const ALL: [Marker; 12] = [
        Marker::Metaphor,
        Marker::Hyperbole,
        Marker::RhetoricalQuestion,
        Marker::Exclamation,
        Marker::TagQuestion,
        Marker::Interjection,
        Marker::Capitalization,
        Marker::Quotation,
        Marker::Punctuation,
        Marker::Hashtag,
        Marker::Emoticon,
        Marker::Emoji,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Marker::Metaphor => "metaphor",
            Marker::Hyperbole => "hyperbole",
            Marker::RhetoricalQuestion => "rq",
            Marker::Exclamation => "exclamation",
            Marker::TagQuestion => "tag_question",
            Marker::Interjection => "interjection",
            Marker::Capitalization => "capitalization",
            Marker::Quotation => "quotation",
            Marker::Punctuation => "punctuation",
            Marker::Hashtag => "hashtag",
            Marker::Emoticon => "emoticon",
            Marker::Emoji => "emoji",
        }
    }

    pub fn parse(s: &str) -> Option<Marker> {
        Marker::ALL.iter().copied().find(|m| m.name() == s)
    }

    pub fn group(&self) -> FeatureGroup {
        match self {
            Marker::Metaphor | Marker::Hyperbole | Marker::RhetoricalQuestion => {
                FeatureGroup::Trope
            }
            Marker::Exclamation | Marker::TagQuestion | Marker::Interjection => {
                FeatureGroup::MorphoSyntactic
            }
            _ => FeatureGroup::Typographic,
        }
    }

    /// Presence of this marker in an extracted feature vector.
    pub fn is_present_in(&self, mv: &MarkerVector) -> bool {
        match self {
            Marker::Metaphor => mv.is_set("metaphor_present"),
            Marker::Hyperbole => mv.is_set("hyperbole_present"),
            Marker::RhetoricalQuestion => mv.is_set("rq_present"),
            Marker::Exclamation => mv.is_set("exclaim_single") || mv.is_set("exclaim_multi"),
            Marker::TagQuestion => mv.is_set("tagq_present"),
            Marker::Interjection => mv.is_set("interjection_present"),
            Marker::Capitalization => mv.is_set("caps_present"),
            Marker::Quotation => mv.is_set("quote_present"),
            Marker::Punctuation => mv.active().any(|(n, _)| n.starts_with("punct_")),
            Marker::Hashtag => mv.is_set("hashtag_pos") || mv.is_set("hashtag_neg"),
            Marker::Emoticon => mv.active().any(|(n, _)| n.starts_with("emoticon_")),
            Marker::Emoji => mv.active().any(|(n, _)| n.starts_with("emoji_")),
        }
    }
}

/// Raw occurrence count of a marker in one utterance (the count variant of
/// frequency analysis).
pub fn marker_count(utt: &Utterance, resources: &ResourceBundle, marker: Marker) -> usize {
    match marker {
        Marker::Metaphor => {
            let annotated = resources
                .metaphor_annotations
                .as_ref()
                .and_then(|m| m.get(&utt.id).copied())
                .unwrap_or(false);
            metaphor_hits(utt, &resources.metaphors) + usize::from(annotated)
        }
        Marker::Hyperbole => {
            let (p, n) = hyperbole_hits(utt, &resources.subjectivity);
            p + n
        }
        Marker::RhetoricalQuestion => rq_hits(utt),
        Marker::Exclamation => {
            let (s, m) = exclamation_hits(utt);
            s + m
        }
        Marker::TagQuestion => phrase_hits(utt, &resources.tag_questions).len(),
        Marker::Interjection => phrase_hits(utt, &resources.interjections).len(),
        Marker::Capitalization => capitalization_hits(utt),
        Marker::Quotation => quotation_hits(utt),
        Marker::Punctuation => punctuation_hits(utt).total(),
        Marker::Hashtag => {
            let (p, n) = hashtag_hits(
                utt,
                &resources.subjectivity,
                &resources.splitter,
                &resources.label_hashtags,
            );
            p + n
        }
        Marker::Emoticon => {
            let (per_entry, _, _) =
                emoticon_hits(utt, &resources.emoticons, &resources.subjectivity);
            per_entry.values().sum()
        }
        Marker::Emoji => emoji_hits(utt, &resources.emoji).values().sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Label;

    fn bundle() -> ResourceBundle {
        ResourceBundle::bundled()
    }

    fn utt(text: &str) -> Utterance {
        Utterance::from_text("t", text, Platform::Twitter, None, Some(Label::Ironic), &bundle())
    }

    fn utt_reddit(text: &str) -> Utterance {
        Utterance::from_text("t", text, Platform::Reddit, None, Some(Label::Ironic), &bundle())
    }

    #[test]
    fn namespace_partition_holds() {
        assert_namespace_partition();
        assert_eq!(feature_group("emoji_rage"), Some(FeatureGroup::Typographic));
        assert_eq!(feature_group("nonsense"), None);
    }

    #[test]
    fn marker_vector_rejects_unknown_names() {
        let mut mv = MarkerVector::new();
        assert!(mv.set("metaphor_present").is_ok());
        assert_eq!(mv.set("bogus"), Err(UnknownFeature("bogus".into())));
    }

    #[test]
    fn metaphor_bigram_from_lexicon() {
        let b = bundle();
        let u =
            utt_reddit("I thought we were reaching a golden age with this game-changing device.");
        let mv = detect_metaphor(&u, &b.metaphors, None);
        assert!(mv.is_set("metaphor_present"));
    }

    #[test]
    fn metaphor_no_hit_is_zero() {
        let b = bundle();
        let mv = detect_metaphor(&utt("a plain sentence"), &b.metaphors, None);
        assert!(mv.is_empty());
    }

    #[test]
    fn metaphor_annotation_or_path() {
        let b = bundle();
        let u = utt("a plain sentence");
        assert!(detect_metaphor(&u, &b.metaphors, Some(true)).is_set("metaphor_present"));
        assert!(!detect_metaphor(&u, &b.metaphors, Some(false)).is_set("metaphor_present"));
    }

    #[test]
    fn metaphor_bigram_not_matched_across_punctuation() {
        let b = bundle();
        let mv = detect_metaphor(&utt("golden, age"), &b.metaphors, None);
        assert!(mv.is_empty());
    }

    #[test]
    fn hyperbole_negative_strong() {
        let mv = detect_hyperbole(&utt("a vile comment"), &bundle().subjectivity);
        assert!(mv.is_set("hyperbole_present"));
        assert!(mv.is_set("hyperbole_neg"));
        assert!(!mv.is_set("hyperbole_pos"));
    }

    #[test]
    fn hyperbole_positive_strong() {
        let mv = detect_hyperbole(&utt("notably helpful"), &bundle().subjectivity);
        assert!(mv.is_set("hyperbole_present"));
        assert!(mv.is_set("hyperbole_pos"));
    }

    #[test]
    fn hyperbole_weak_entries_do_not_fire() {
        // "suck" is a weak entry in the sample lexicon.
        let mv = detect_hyperbole(&utt("this does suck"), &bundle().subjectivity);
        assert!(mv.is_empty());
    }

    #[test]
    fn rq_question_mid_comment() {
        let u = utt_reddit(
            "Are you telling me iPhone 5 is only marginally better than iPhone 4S? \
             I thought we were reaching a golden age with this game-changing device.",
        );
        assert!(detect_rhetorical_question(&u).is_set("rq_present"));
    }

    #[test]
    fn rq_final_question_is_not_rhetorical() {
        assert!(detect_rhetorical_question(&utt("What time is it?")).is_empty());
    }

    #[test]
    fn rq_chained_questions() {
        assert!(detect_rhetorical_question(&utt("A? B? done.")).is_set("rq_present"));
    }

    #[test]
    fn exclamation_multi_vs_single() {
        let mv =
            detect_exclamation(&utt("GREAT i'm SO happy shattered phone on this WONDERFUL day!!!"));
        assert!(mv.is_set("exclaim_multi"));
        assert!(!mv.is_set("exclaim_single"));

        let mv = detect_exclamation(&utt("nice!"));
        assert!(mv.is_set("exclaim_single"));
        assert!(!mv.is_set("exclaim_multi"));

        assert!(detect_exclamation(&utt("no marks here")).is_empty());
    }

    #[test]
    fn tag_question_negative() {
        let mv =
            detect_tag_question(&utt("such a great plan, isn't it?"), &bundle().tag_questions);
        assert!(mv.is_set("tagq_present"));
        assert!(mv.is_set("tagq_neg"));
        assert!(!mv.is_set("tagq_pos"));
    }

    #[test]
    fn tag_question_positive_mid_text() {
        let mv = detect_tag_question(&utt("is it? I wonder."), &bundle().tag_questions);
        assert!(mv.is_set("tagq_present"));
        assert!(mv.is_set("tagq_pos"));
    }

    #[test]
    fn tag_question_curly_apostrophe_matches() {
        let mv = detect_tag_question(&utt("fine plan, isn\u{2019}t it?"), &bundle().tag_questions);
        assert!(mv.is_set("tagq_neg"));
    }

    #[test]
    fn tag_question_absent() {
        assert!(detect_tag_question(&utt("no tags here."), &bundle().tag_questions).is_empty());
    }

    #[test]
    fn interjection_examples() {
        let b = bundle();
        assert!(detect_interjection(&utt("wow that went well"), &b.interjections)
            .is_set("interjection_present"));
        assert!(detect_interjection(&utt("ouch. that hurts."), &b.interjections)
            .is_set("interjection_present"));
        assert!(detect_interjection(&utt("nothing to see"), &b.interjections).is_empty());
    }

    #[test]
    fn capitalization_from_table_one_tweet() {
        let mv = detect_capitalization(&utt("with 1 follower i must be AWESOME. :P"));
        assert!(mv.is_set("caps_present"));
    }

    #[test]
    fn capitalization_ignores_single_letters() {
        assert!(detect_capitalization(&utt("I am here")).is_empty());
        assert!(detect_capitalization(&utt("all lowercase text")).is_empty());
        assert!(detect_capitalization(&utt("GREAT i'm SO happy")).is_set("caps_present"));
    }

    #[test]
    fn quotation_short_span() {
        assert!(detect_quotation(&utt("the \"great\" experience")).is_set("quote_present"));
        assert!(detect_quotation(&utt("she said \"")).is_empty());
    }

    #[test]
    fn quotation_long_span_does_not_fire() {
        let u = utt("\"one two three four five six seven eight nine ten\"");
        assert!(detect_quotation(&u).is_empty());
    }

    #[test]
    fn quotation_directional_marks() {
        assert!(detect_quotation(&utt("the \u{201C}great\u{201D} one")).is_set("quote_present"));
    }

    #[test]
    fn punctuation_runs_and_mix() {
        let mv = detect_punctuation(&utt("really?? fine."));
        assert!(mv.is_set("punct_q_multi"));
        assert!(mv.is_set("punct_period_single"));
        assert!(!mv.is_set("punct_q_single"));

        let mv = detect_punctuation(&utt("what?!"));
        assert!(mv.is_set("punct_mix"));

        assert!(detect_punctuation(&utt("no punctuation here")).is_empty());
    }

    #[test]
    fn hashtag_negative_sentiment() {
        let b = bundle();
        let u = utt("nice to wake up to cute text. #suck");
        let mv = detect_hashtag_sentiment(&u, &b.subjectivity, &b.splitter, &b.label_hashtags);
        assert!(mv.is_set("hashtag_neg"));
        assert!(!mv.is_set("hashtag_pos"));
    }

    #[test]
    fn hashtag_split_positive() {
        let b = bundle();
        assert_eq!(split_hashtag("funnight", &b.splitter), vec!["fun", "night"]);
        let u = utt("what an evening #funnight");
        let mv = detect_hashtag_sentiment(&u, &b.subjectivity, &b.splitter, &b.label_hashtags);
        assert!(mv.is_set("hashtag_pos"));
    }

    #[test]
    fn hashtag_features_zero_without_hashtags_or_on_reddit() {
        let b = bundle();
        let mv =
            detect_hashtag_sentiment(&utt("plain"), &b.subjectivity, &b.splitter, &b.label_hashtags);
        assert!(mv.is_empty());
        let u = utt_reddit("this is #suck territory. yes it is.");
        let mv = detect_hashtag_sentiment(&u, &b.subjectivity, &b.splitter, &b.label_hashtags);
        assert!(mv.is_empty());
    }

    #[test]
    fn label_hashtags_are_excluded() {
        let b = bundle();
        let u = utt("ok #sarcasm");
        let mv = detect_hashtag_sentiment(&u, &b.subjectivity, &b.splitter, &b.label_hashtags);
        assert!(mv.is_empty());
    }

    #[test]
    fn emoticon_wink_gets_sentiment_from_lexicon_name() {
        let b = bundle();
        let mv = detect_emoticon(&utt("I love the weather ;)"), &b.emoticons, &b.subjectivity);
        assert!(mv.is_set("emoticon_wink"));
        assert!(mv.is_set("emoticon_pos"));
    }

    #[test]
    fn emoticon_tongue_out() {
        let b = bundle();
        let mv = detect_emoticon(
            &utt("with 1 follower i must be AWESOME. :P"),
            &b.emoticons,
            &b.subjectivity,
        );
        assert!(mv.is_set("emoticon_tongue_out"));
        assert!(detect_emoticon(&utt("none here"), &b.emoticons, &b.subjectivity).is_empty());
    }

    #[test]
    fn emoji_per_entry_features() {
        let b = bundle();
        let mv = detect_emoji(&utt("so fun \u{1F612}\u{1F616}"), &b.emoji);
        assert!(mv.is_set("emoji_unamused"));
        assert!(mv.is_set("emoji_confounded"));
        assert!(detect_emoji(&utt("no emoji"), &b.emoji).is_empty());
    }

    #[test]
    fn unknown_emoji_is_counted_not_detected() {
        let b = bundle();
        let u = utt("look \u{1FAE0}");
        assert!(detect_emoji(&u, &b.emoji).is_empty());
        assert_eq!(unknown_emoji_count(&u), 1);
    }

    #[test]
    fn extract_all_on_table_one_tweet() {
        let b = bundle();
        let mv = extract_all(&utt("with 1 follower i must be AWESOME. :P"), &b);
        assert!(mv.is_set("caps_present"));
        assert!(mv.is_set("emoticon_tongue_out"));
        assert!(mv.is_set("punct_period_single"));
    }

    #[test]
    fn extract_all_empty_utterance() {
        let b = bundle();
        assert!(extract_all(&utt(""), &b).is_empty());
    }

    #[test]
    fn extract_all_equals_merged_detectors() {
        let b = bundle();
        let u = utt("wow the \"great\" phone is a gold mine, isn't it? SO vile!!! #suck ;) \u{1F621}");
        let all = extract_all(&u, &b);
        let mut merged = MarkerVector::new();
        merged.merge(&detect_metaphor(&u, &b.metaphors, None));
        merged.merge(&detect_hyperbole(&u, &b.subjectivity));
        merged.merge(&detect_rhetorical_question(&u));
        merged.merge(&detect_exclamation(&u));
        merged.merge(&detect_tag_question(&u, &b.tag_questions));
        merged.merge(&detect_interjection(&u, &b.interjections));
        merged.merge(&detect_capitalization(&u));
        merged.merge(&detect_quotation(&u));
        merged.merge(&detect_punctuation(&u));
        merged.merge(&detect_hashtag_sentiment(
            &u,
            &b.subjectivity,
            &b.splitter,
            &b.label_hashtags,
        ));
        merged.merge(&detect_emoticon(&u, &b.emoticons, &b.subjectivity));
        merged.merge(&detect_emoji(&u, &b.emoji));
        assert_eq!(all, merged);
    }

    #[test]
    fn marker_counts_match_presence() {
        let b = bundle();
        let u = utt("wow, vile stuff!!! really?? #suck :P \u{1F621}");
        let mv = extract_all(&u, &b);
        for marker in Marker::ALL {
            let count = marker_count(&u, &b, marker);
            assert_eq!(
                count > 0,
                marker.is_present_in(&mv),
                "presence/count mismatch for {marker:?}"
            );
        }
        assert_eq!(marker_count(&u, &b, Marker::Exclamation), 1);
        assert_eq!(marker_count(&u, &b, Marker::Hyperbole), 1);
    }
}
