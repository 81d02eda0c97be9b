//! Feature indexing and sparse vectorization, with ablation-group masking.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Label;
use crate::markers::{FeatureGroup, MarkerVector, FIXED_FEATURES};

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("cannot fit a feature index on an empty training set")]
    EmptyTrainingSet,
}

/// Bijective map from feature name to dense column id, frozen after
/// fitting; names unseen at fit time map to nothing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureIndex {
    name_to_index: BTreeMap<String, usize>,
}

impl FeatureIndex {
    /// Fit on training vectors: the index covers every feature active in
    /// training plus the whole fixed namespace, in lexicographic order.
    pub fn fit(train: &[MarkerVector]) -> Result<FeatureIndex, FeatureError> {
        if train.is_empty() {
            return Err(FeatureError::EmptyTrainingSet);
        }
        let mut names: BTreeSet<String> =
            FIXED_FEATURES.iter().map(|(n, _)| n.to_string()).collect();
        for mv in train {
            names.extend(mv.active().map(|(n, _)| n.to_string()));
        }
        let name_to_index = names.into_iter().zip(0..).collect();
        Ok(FeatureIndex { name_to_index })
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.name_to_index.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.name_to_index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.name_to_index.is_empty()
    }

    /// Feature names ordered by column id.
    pub fn names(&self) -> Vec<&str> {
        let mut pairs: Vec<(&str, usize)> =
            self.name_to_index.iter().map(|(n, &i)| (n.as_str(), i)).collect();
        pairs.sort_by_key(|&(_, i)| i);
        pairs.into_iter().map(|(n, _)| n).collect()
    }

    pub fn manifest(&self) -> &BTreeMap<String, usize> {
        &self.name_to_index
    }

    pub fn from_manifest(map: BTreeMap<String, usize>) -> FeatureIndex {
        FeatureIndex { name_to_index: map }
    }
}

/// Sparse binary vector: strictly increasing column ids, every stored
/// value 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseVector {
    pub columns: Vec<usize>,
    pub label: Option<Label>,
}

impl SparseVector {
    pub fn with_label(mut self, label: Label) -> SparseVector {
        self.label = Some(label);
        self
    }

    pub fn dot(&self, weights: &[f64]) -> f64 {
        self.columns.iter().filter_map(|&c| weights.get(c)).sum()
    }
}

/// Map a marker vector through the index, zeroing features whose group is
/// in `ablate` first. Unseen names drop out silently.
pub fn vectorize(
    mv: &MarkerVector,
    index: &FeatureIndex,
    ablate: &BTreeSet<FeatureGroup>,
) -> SparseVector {
    let mut columns: Vec<usize> = mv
        .active()
        .filter(|(_, group)| !ablate.contains(group))
        .filter_map(|(name, _)| index.index_of(name))
        .collect();
    columns.sort_unstable();
    columns.dedup();
    SparseVector { columns, label: None }
}

/// Feature names back from a sparse vector; inverse of [`vectorize`] for
/// indexed features with no ablation.
pub fn unvectorize(v: &SparseVector, index: &FeatureIndex) -> Vec<String> {
    let names = index.names();
    v.columns
        .iter()
        .filter_map(|&c| names.get(c).map(|n| n.to_string()))
        .collect()
}
