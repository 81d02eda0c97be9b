//! Linear max-margin classifier on marker features: deterministic
//! subgradient training with averaging, per-class evaluation, ablation
//! tables and feature-weight rankings.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::corpus::Label;
use crate::features::{vectorize, FeatureError, FeatureIndex, SparseVector};
use crate::markers::{FeatureGroup, MarkerVector};

#[derive(Debug, Error)]
pub enum TrainError {
    #[error("training data contains a single class")]
    SingleClass,
    #[error("training data is empty")]
    Empty,
    #[error("objective became non-finite")]
    NonFiniteLoss,
    #[error("C grid is empty")]
    EmptyGrid,
    #[error("vector at position {0} has no label")]
    Unlabeled(usize),
    #[error(transparent)]
    Feature(#[from] FeatureError),
}

/// Training hyperparameters. The defaults pin the reproducible recipe:
/// L2-regularized hinge loss, 50 epochs of subgradient descent with a
/// 1/(lambda*t) schedule, averaged iterates, C selected on dev macro-F1.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainParams {
    pub c_grid: Vec<f64>,
    pub epochs: usize,
    pub seed: u64,
}

impl Default for TrainParams {
    fn default() -> Self {
        TrainParams {
            c_grid: vec![0.01, 0.1, 1.0, 10.0],
            epochs: 50,
            seed: 13,
        }
    }
}

/// Linear decision function over an indexed feature space.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub c: f64,
    pub seed: u64,
    pub epochs: usize,
    /// Objective of the kept iterate at each epoch boundary; non-increasing.
    pub epoch_objectives: Vec<f64>,
}

impl LinearModel {
    pub fn score(&self, v: &SparseVector) -> f64 {
        v.dot(&self.weights) + self.bias
    }

    /// Ironic iff the score is non-negative (ties go to Ironic).
    pub fn predict(&self, v: &SparseVector) -> Label {
        if self.score(v) >= 0.0 {
            Label::Ironic
        } else {
            Label::NonIronic
        }
    }

    /// Regularized hinge objective:
    /// `0.5 * (||w||^2 + b^2) + C * sum_i max(0, 1 - y_i * score(x_i))`.
    /// The bias is a regularized constant-feature coordinate.
    pub fn objective(&self, data: &[SparseVector]) -> f64 {
        objective(&self.weights, self.bias, self.c, data)
    }
}

fn label_sign(label: Label) -> f64 {
    match label {
        Label::Ironic => 1.0,
        Label::NonIronic => -1.0,
    }
}

pub fn objective(weights: &[f64], bias: f64, c: f64, data: &[SparseVector]) -> f64 {
    let reg = 0.5 * (weights.iter().map(|w| w * w).sum::<f64>() + bias * bias);
    let hinge: f64 = data
        .iter()
        .map(|v| {
            let y = label_sign(v.label.expect("labeled vector"));
            (1.0 - y * (v.dot(weights) + bias)).max(0.0)
        })
        .sum();
    reg + c * hinge
}

/// One full training run at a fixed C.
///
/// Subgradient descent on the lambda-scaled objective with lambda =
/// 1/(C*n), learning rate 1/(lambda*t) and a deterministic per-epoch
/// shuffle. The running average of the iterates restarts at power-of-two
/// steps (suffix averaging); at every epoch boundary the averaged iterate
/// is scored and the best one so far is kept, which is the standard
/// bookkeeping for non-monotone subgradient methods.
fn train_at_c(
    data: &[SparseVector],
    dim: usize,
    c: f64,
    epochs: usize,
    seed: u64,
) -> Result<LinearModel, TrainError> {
    let n = data.len();
    if n == 0 {
        return Err(TrainError::Empty);
    }
    let lambda = 1.0 / (c * n as f64);

    let mut w = vec![0.0f64; dim];
    let mut b = 0.0f64;
    let mut avg_w = vec![0.0f64; dim];
    let mut avg_b = 0.0f64;
    let mut avg_count = 0u64;

    let mut best_w = w.clone();
    let mut best_b = 0.0;
    let mut best_obj = objective(&w, b, c, data);
    let mut epoch_objectives = Vec::with_capacity(epochs);

    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = 0u64;

    for _ in 0..epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (lambda * t as f64);
            let v = &data[i];
            let y = label_sign(v.label.ok_or(TrainError::Unlabeled(i))?);
            let margin = y * (v.dot(&w) + b);
            let decay = 1.0 - eta * lambda; // = 1 - 1/t
            for wj in w.iter_mut() {
                *wj *= decay;
            }
            b *= decay;
            if margin < 1.0 {
                let step = eta * y;
                for &col in &v.columns {
                    w[col] += step;
                }
                b += step;
            }
            // Suffix averaging: restart the running average at powers of
            // two so the final average covers roughly the last half.
            if t.is_power_of_two() {
                avg_w.iter_mut().for_each(|x| *x = 0.0);
                avg_b = 0.0;
                avg_count = 0;
            }
            for (a, &wj) in avg_w.iter_mut().zip(&w) {
                *a += wj;
            }
            avg_b += b;
            avg_count += 1;
        }
        let cand_w: Vec<f64> = avg_w.iter().map(|a| a / avg_count as f64).collect();
        let cand_b = avg_b / avg_count as f64;
        let obj = objective(&cand_w, cand_b, c, data);
        if !obj.is_finite() {
            return Err(TrainError::NonFiniteLoss);
        }
        if obj < best_obj {
            best_obj = obj;
            best_w = cand_w;
            best_b = cand_b;
        }
        epoch_objectives.push(best_obj);
    }

    Ok(LinearModel {
        weights: best_w,
        bias: best_b,
        c,
        seed,
        epochs,
        epoch_objectives,
    })
}

fn check_both_classes(data: &[SparseVector]) -> Result<(), TrainError> {
    let mut ironic = false;
    let mut non_ironic = false;
    for (i, v) in data.iter().enumerate() {
        match v.label.ok_or(TrainError::Unlabeled(i))? {
            Label::Ironic => ironic = true,
            Label::NonIronic => non_ironic = true,
        }
    }
    if ironic && non_ironic {
        Ok(())
    } else {
        Err(TrainError::SingleClass)
    }
}

/// Train with model selection: one run per C in the grid, C chosen by dev
/// macro-F1 (ties to the smaller C), then a final retrain on train at the
/// chosen C.
pub fn train(
    train_data: &[SparseVector],
    dev_data: &[SparseVector],
    params: &TrainParams,
    dim: usize,
) -> Result<LinearModel, TrainError> {
    if params.c_grid.is_empty() {
        return Err(TrainError::EmptyGrid);
    }
    check_both_classes(train_data)?;
    let mut best: Option<(f64, f64)> = None; // (macro_f1, c)
    for &c in &params.c_grid {
        let model = train_at_c(train_data, dim, c, params.epochs, params.seed)?;
        let report = evaluate(&model, dev_data)?;
        let macro_f1 = report.macro_f1();
        let better = match best {
            None => true,
            Some((bf, bc)) => macro_f1 > bf || (macro_f1 == bf && c < bc),
        };
        if better {
            best = Some((macro_f1, c));
        }
    }
    let (_, c) = best.expect("non-empty grid");
    train_at_c(train_data, dim, c, params.epochs, params.seed)
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub tn: usize,
}

/// Precision/recall/F1 as percentages (unrounded; round at display time).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EvalReport {
    pub ironic: ClassMetrics,
    pub non_ironic: ClassMetrics,
    pub confusion: Confusion,
}

impl EvalReport {
    pub fn macro_f1(&self) -> f64 {
        0.5 * (self.ironic.f1 + self.non_ironic.f1)
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        100.0 * num as f64 / den as f64
    }
}

/// F1 from precision and recall in percent: `2PR/(P+R)`, 0 when P+R = 0.
pub fn f1_from_pr(p: f64, r: f64) -> f64 {
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

/// Round half-up to two decimals, matching table formatting.
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

fn class_metrics(tp: usize, fp: usize, fn_: usize) -> ClassMetrics {
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    ClassMetrics {
        precision,
        recall,
        f1: f1_from_pr(precision, recall),
    }
}

/// Per-class precision/recall/F1 over a labeled test set.
pub fn evaluate(model: &LinearModel, test: &[SparseVector]) -> Result<EvalReport, TrainError> {
    let mut conf = Confusion::default();
    for (i, v) in test.iter().enumerate() {
        let gold = v.label.ok_or(TrainError::Unlabeled(i))?;
        let pred = model.predict(v);
        match (gold, pred) {
            (Label::Ironic, Label::Ironic) => conf.tp += 1,
            (Label::NonIronic, Label::Ironic) => conf.fp += 1,
            (Label::Ironic, Label::NonIronic) => conf.fn_ += 1,
            (Label::NonIronic, Label::NonIronic) => conf.tn += 1,
        }
    }
    Ok(EvalReport {
        ironic: class_metrics(conf.tp, conf.fp, conf.fn_),
        non_ironic: class_metrics(conf.tn, conf.fn_, conf.fp),
        confusion: conf,
    })
}

// ---------------------------------------------------------------------------
// Ablation suite
// ---------------------------------------------------------------------------

/// One row of the ablation table.
#[derive(Debug, Clone)]
pub struct AblationRow {
    /// "all", "- tropes", "- MS" or "- typography".
    pub name: String,
    pub ablated: Option<FeatureGroup>,
    pub report: EvalReport,
}

pub fn ablation_row_name(group: Option<FeatureGroup>) -> String {
    match group {
        None => "all".to_string(),
        Some(FeatureGroup::Trope) => "- tropes".to_string(),
        Some(FeatureGroup::MorphoSyntactic) => "- MS".to_string(),
        Some(FeatureGroup::Typographic) => "- typography".to_string(),
    }
}

/// Retrain-and-evaluate once per configuration: no ablation, then each
/// group removed on its own. The feature index is fitted once on the
/// unmasked training data; masking happens at vectorization time.
pub fn ablation_suite(
    train_mvs: &[(MarkerVector, Label)],
    dev_mvs: &[(MarkerVector, Label)],
    test_mvs: &[(MarkerVector, Label)],
    groups: &[FeatureGroup],
    params: &TrainParams,
) -> Result<(FeatureIndex, Vec<AblationRow>), TrainError> {
    let train_only: Vec<MarkerVector> = train_mvs.iter().map(|(m, _)| m.clone()).collect();
    let index = FeatureIndex::fit(&train_only)?;
    let mut rows = Vec::new();
    let mut configs: Vec<Option<FeatureGroup>> = vec![None];
    configs.extend(groups.iter().copied().map(Some));
    for config in configs {
        let ablate: BTreeSet<FeatureGroup> = config.into_iter().collect();
        let vecs = |mvs: &[(MarkerVector, Label)]| -> Vec<SparseVector> {
            mvs.iter()
                .map(|(m, l)| vectorize(m, &index, &ablate).with_label(*l))
                .collect()
        };
        let model = train(&vecs(train_mvs), &vecs(dev_mvs), params, index.len())?;
        let report = evaluate(&model, &vecs(test_mvs))?;
        rows.push(AblationRow {
            name: ablation_row_name(config),
            ablated: config,
            report,
        });
    }
    Ok((index, rows))
}

// ---------------------------------------------------------------------------
// Feature-weight ranking
// ---------------------------------------------------------------------------

/// Features ordered by signed weight, most positive (class I) first; ties
/// break lexicographically.
#[derive(Debug, Clone)]
pub struct WeightRanking {
    pub entries: Vec<(String, f64)>,
}

impl WeightRanking {
    /// Strongest class-I features (largest positive weights).
    pub fn top_ironic(&self, k: usize) -> Vec<(String, f64)> {
        self.entries.iter().take(k).cloned().collect()
    }

    /// Strongest class-NI features (most negative weights).
    pub fn top_non_ironic(&self, k: usize) -> Vec<(String, f64)> {
        self.entries.iter().rev().take(k).cloned().collect()
    }
}

pub fn rank_weights(model: &LinearModel, index: &FeatureIndex) -> WeightRanking {
    let mut entries: Vec<(String, f64)> = index
        .names()
        .iter()
        .enumerate()
        .map(|(i, name)| (name.to_string(), model.weights.get(i).copied().unwrap_or(0.0)))
        .collect();
    entries.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
    WeightRanking { entries }
}
