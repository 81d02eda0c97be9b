//! Corpus-analysis toolkit for irony markers in short social-media utterances.
//!
//! The crate detects three families of markers — tropes (metaphor, hyperbole,
//! rhetorical question), morpho-syntactic (exclamation, tag question,
//! interjection) and typographic (capitalization, quotation, punctuation,
//! hashtag sentiment, emoticon, emoji) — trains a linear max-margin
//! classifier on the resulting binary features, and produces ablation,
//! feature-weight and frequency/significance reports.
//!
//! Typical flow: load a JSONL corpus ([`corpus::load_corpus`]), preprocess
//! per platform ([`corpus::preprocess_twitter`] / [`corpus::preprocess_reddit`]),
//! extract features ([`markers::extract_all`]), vectorize
//! ([`features::vectorize`]), then train ([`classifier::train`]) or analyze
//! ([`stats`]).

pub mod classifier;
pub mod cli;
pub mod corpus;
pub mod features;
pub mod lexicons;
pub mod markers;
pub mod stats;
pub mod synth;
pub mod tokenizer;

pub use corpus::{Label, Platform, RawRecord, SplitSpec, Utterance};
pub use lexicons::ResourceBundle;
pub use markers::{extract_all, FeatureGroup, MarkerVector};
