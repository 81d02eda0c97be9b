//! Synthetic corpora with planted marker signals, for validating the
//! end-to-end pipeline: a balanced binary corpus where typographic markers
//! carry the class signal, and genre corpora with exact planted presence
//! rates.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Label, Platform, Utterance};
use crate::lexicons::ResourceBundle;

/// Words that appear in no bundled lexicon, so they carry no marker signal.
const FILLER: [&str; 24] = [
    "team", "sent", "report", "about", "update", "today", "before", "lunch", "while", "waited",
    "results", "from", "last", "week", "meeting", "notes", "were", "shared", "office", "then",
    "archived", "desk", "printer", "hallway",
];

/// Neutral words planted in all-caps form.
const CAPS_WORDS: [&str; 4] = ["MONDAY", "LAPTOP", "WINDOW", "FOLDER"];

/// Catalog emoticons planted independently; four distinct entries so the
/// per-entry features carry several independent signal bits.
const PLANT_EMOTICONS: [&str; 4] = [":P", ";)", ":D", "-_-"];

/// Differentially planted signals per utterance: the four emoticons, one
/// all-caps word and one "!!!" run.
pub const PLANTED_SIGNALS: usize = PLANT_EMOTICONS.len() + 2;

#[derive(Debug, Clone)]
pub struct PlantedConfig {
    /// Total utterances; the corpus is exactly balanced.
    pub n: usize,
    /// Probability of each planted typographic signal in the Ironic class.
    pub rate_ironic: f64,
    /// Same, for the NonIronic class.
    pub rate_non_ironic: f64,
    /// Probability of each equal-rate distractor marker (both classes).
    pub distractor_rate: f64,
    pub seed: u64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        PlantedConfig {
            n: 10_000,
            rate_ironic: 0.6,
            rate_non_ironic: 0.2,
            distractor_rate: 0.25,
            seed: 13,
        }
    }
}

/// A generated raw record, ready to write as corpus JSONL.
#[derive(Debug, Clone)]
pub struct SynthRecord {
    pub id: String,
    pub text: String,
    pub label: Label,
}

fn sentence(rng: &mut ChaCha8Rng) -> String {
    let len = rng.random_range(4..=8);
    let words: Vec<&str> = (0..len)
        .map(|_| FILLER[rng.random_range(0..FILLER.len())])
        .collect();
    words.join(" ")
}

fn plant_word(sentences: &mut [String], rng: &mut ChaCha8Rng, word: &str) {
    let si = rng.random_range(0..sentences.len());
    let mut words: Vec<String> = sentences[si].split(' ').map(String::from).collect();
    let pos = rng.random_range(0..=words.len().min(words.len()));
    words.insert(pos.min(words.len()), word.to_string());
    sentences[si] = words.join(" ");
}

fn synth_text(rng: &mut ChaCha8Rng, label: Label, config: &PlantedConfig) -> String {
    let n_sentences = rng.random_range(1..=3);
    let mut sentences: Vec<String> = (0..n_sentences).map(|_| sentence(rng)).collect();

    let signal_rate = match label {
        Label::Ironic => config.rate_ironic,
        Label::NonIronic => config.rate_non_ironic,
    };
    let d = config.distractor_rate;

    // Equal-rate distractors first (inside the sentences).
    if rng.random_bool(d) {
        plant_word(&mut sentences, rng, "wow");
    }
    if rng.random_bool(d) {
        let word = if rng.random_bool(0.5) { "vile" } else { "notably" };
        plant_word(&mut sentences, rng, word);
    }
    if rng.random_bool(d) {
        plant_word(&mut sentences, rng, "gold mine");
    }
    if rng.random_bool(d) {
        plant_word(&mut sentences, rng, "\"desk\"");
    }
    let tag_question = rng.random_bool(d);

    // Differential typographic plant: one all-caps word.
    if rng.random_bool(signal_rate) {
        let word = CAPS_WORDS[rng.random_range(0..CAPS_WORDS.len())];
        plant_word(&mut sentences, rng, word);
    }

    let mut text = sentences
        .iter()
        .map(|s| format!("{s}."))
        .collect::<Vec<_>>()
        .join(" ");

    if tag_question {
        text.push_str(" isn't it?");
    }

    // Differential "!!!" as an exclaimed afterthought, so no period is lost.
    if rng.random_bool(signal_rate) {
        let word = FILLER[rng.random_range(0..FILLER.len())];
        text.push_str(&format!(" {word}!!!"));
    }

    // Differential emoticons, each an independent coin.
    for emoticon in PLANT_EMOTICONS {
        if rng.random_bool(signal_rate) {
            text.push_str(&format!(" {emoticon}"));
        }
    }

    // Equal-rate hashtag distractor, trailing like real tweets.
    if rng.random_bool(d) {
        text.push_str(" #funnight");
    }
    text
}

/// Generate a balanced corpus with the planted-signal design. Order is
/// shuffled; ids are "s0".."s{n-1}" in output order.
pub fn planted_records(config: &PlantedConfig) -> Vec<SynthRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let half = config.n / 2;
    let mut labeled: Vec<Label> = vec![Label::Ironic; half];
    labeled.extend(vec![Label::NonIronic; config.n - half]);
    // Deterministic interleave, then texts drawn in that order.
    let mut records: Vec<SynthRecord> = Vec::with_capacity(config.n);
    let mut order: Vec<usize> = (0..config.n).collect();
    use rand::seq::SliceRandom;
    order.shuffle(&mut rng);
    for (out_pos, &src) in order.iter().enumerate() {
        let label = labeled[src];
        let text = synth_text(&mut rng, label, config);
        records.push(SynthRecord {
            id: format!("s{out_pos}"),
            text,
            label,
        });
    }
    records
}

/// Planted corpus as preprocessed utterances (Twitter platform).
pub fn planted_corpus(config: &PlantedConfig, resources: &ResourceBundle) -> Vec<Utterance> {
    planted_records(config)
        .into_iter()
        .map(|r| {
            Utterance::from_text(r.id, r.text, Platform::Twitter, None, Some(r.label), resources)
        })
        .collect()
}

/// Genre corpus with an exactly planted marker presence rate: of `n`
/// two-sentence posts, round(rate*n) contain one strong hyperbole word.
pub fn genre_corpus(
    genre: &str,
    n: usize,
    hyperbole_rate: f64,
    seed: u64,
    resources: &ResourceBundle,
) -> Vec<Utterance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = (hyperbole_rate * n as f64).round() as usize;
    let mut with_marker: Vec<bool> = vec![true; k];
    with_marker.extend(vec![false; n - k]);
    use rand::seq::SliceRandom;
    with_marker.shuffle(&mut rng);
    with_marker
        .iter()
        .enumerate()
        .map(|(i, &marked)| {
            let mut first = sentence(&mut rng);
            if marked {
                first.push_str(" vile");
            }
            let text = format!("{first}. {}.", sentence(&mut rng));
            Utterance::from_text(
                format!("{genre}{i}"),
                text,
                Platform::Reddit,
                Some(genre.to_string()),
                Some(Label::Ironic),
                resources,
            )
        })
        .collect()
}

/// Bayes accuracy of the planted design in closed form: the optimal rule
/// over `k` independent binary signals with per-class rates, enumerated
/// over all 2^k patterns on a balanced prior.
pub fn bayes_accuracy(k: usize, rate_ironic: f64, rate_non_ironic: f64) -> f64 {
    assert!(k <= 30);
    let mut acc = 0.0;
    for pattern in 0u64..(1 << k) {
        let ones = pattern.count_ones() as i32;
        let zeros = k as i32 - ones;
        let p_i = rate_ironic.powi(ones) * (1.0 - rate_ironic).powi(zeros);
        let p_n = rate_non_ironic.powi(ones) * (1.0 - rate_non_ironic).powi(zeros);
        acc += 0.5 * p_i.max(p_n);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markers::{extract_all, Marker};
    use crate::stats::{marker_frequency, FrequencyMode};

    #[test]
    fn planted_corpus_is_balanced_and_deterministic() {
        let config = PlantedConfig { n: 200, ..PlantedConfig::default() };
        let a = planted_records(&config);
        let b = planted_records(&config);
        assert_eq!(a.len(), 200);
        assert_eq!(
            a.iter().filter(|r| r.label == Label::Ironic).count(),
            100
        );
        let texts_a: Vec<&str> = a.iter().map(|r| r.text.as_str()).collect();
        let texts_b: Vec<&str> = b.iter().map(|r| r.text.as_str()).collect();
        assert_eq!(texts_a, texts_b);
    }

    #[test]
    fn planted_rates_are_differential_for_typography_only() {
        let b = ResourceBundle::bundled();
        let config = PlantedConfig { n: 2000, ..PlantedConfig::default() };
        let utts = planted_corpus(&config, &b);
        let (ironic, non): (Vec<_>, Vec<_>) =
            utts.into_iter().partition(|u| u.label == Some(Label::Ironic));
        let rate = |utts: &[Utterance], marker: Marker| {
            marker_frequency(utts, &b, marker, FrequencyMode::Presence).mean
        };
        // Planted emoticons: P(any of 4) = 1 - (1-r)^4.
        let emo_i = rate(&ironic, Marker::Emoticon);
        let emo_n = rate(&non, Marker::Emoticon);
        assert!((emo_i - (1.0 - 0.4f64.powi(4))).abs() < 0.05, "{emo_i}");
        assert!((emo_n - (1.0 - 0.8f64.powi(4))).abs() < 0.05, "{emo_n}");
        let caps_i = rate(&ironic, Marker::Capitalization);
        let caps_n = rate(&non, Marker::Capitalization);
        assert!((caps_i - 0.6).abs() < 0.05);
        assert!((caps_n - 0.2).abs() < 0.05);
        // Distractors stay matched between classes.
        for marker in [Marker::Interjection, Marker::Hyperbole, Marker::Metaphor, Marker::Hashtag]
        {
            let diff = (rate(&ironic, marker) - rate(&non, marker)).abs();
            assert!(diff < 0.06, "{marker:?} differs by {diff}");
        }
    }

    #[test]
    fn planted_filler_carries_no_markers() {
        let b = ResourceBundle::bundled();
        for word in FILLER {
            let u = Utterance::from_text(
                "f",
                word,
                Platform::Twitter,
                None,
                Some(Label::Ironic),
                &b,
            );
            assert!(extract_all(&u, &b).is_empty(), "filler {word:?} fires a marker");
        }
        for word in CAPS_WORDS {
            let u = Utterance::from_text(
                "c",
                &word.to_lowercase(),
                Platform::Twitter,
                None,
                Some(Label::Ironic),
                &b,
            );
            assert!(extract_all(&u, &b).is_empty(), "caps word {word:?} fires beyond caps");
        }
    }

    #[test]
    fn genre_corpus_exact_rate() {
        let b = ResourceBundle::bundled();
        let utts = genre_corpus("tech", 200, 0.19, 7, &b);
        let stat = marker_frequency(&utts, &b, Marker::Hyperbole, FrequencyMode::Presence);
        assert_eq!(stat.n, 200);
        assert!((stat.mean - 0.19).abs() < 1e-9);
        assert!(utts.iter().all(|u| u.sentences.len() >= 2));
    }

    #[test]
    fn bayes_accuracy_closed_form() {
        // Single signal: 0.5*(0.6 + 0.8) = 0.7.
        assert!((bayes_accuracy(1, 0.6, 0.2) - 0.7).abs() < 1e-12);
        // Six independent signals: optimal rule fires at >= 3 ones.
        let expected = 0.5 * (0.8208 + 0.90112);
        assert!((bayes_accuracy(6, 0.6, 0.2) - expected).abs() < 1e-5);
        assert!(bayes_accuracy(PLANTED_SIGNALS, 0.6, 0.2) > 0.85);
    }
}
