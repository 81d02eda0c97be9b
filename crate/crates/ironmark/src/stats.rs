//! Frequency analysis of marker occurrence and Welch's t-test for
//! cross-platform and cross-genre significance.

use serde::Serialize;
use thiserror::Error;

use crate::corpus::Utterance;
use crate::lexicons::ResourceBundle;
use crate::markers::{extract_all, marker_count, FeatureGroup, Marker};

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("each sample needs at least 2 observations (got {0} and {1})")]
    DegenerateSize(usize, usize),
}

/// Presence (binary, the default) or raw occurrence counts per utterance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FrequencyMode {
    #[default]
    Presence,
    Count,
}

impl FrequencyMode {
    pub fn parse(s: &str) -> Option<FrequencyMode> {
        match s {
            "presence" => Some(FrequencyMode::Presence),
            "count" => Some(FrequencyMode::Count),
            _ => None,
        }
    }
}

/// Mean of occurrence per utterance and the sample standard deviation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyStat {
    pub marker: String,
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
}

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance (n-1 denominator); 0 for n < 2.
pub fn sample_variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}

/// Frequency statistics from per-utterance indicator values.
pub fn frequency_from_values(marker: &str, values: &[f64]) -> FrequencyStat {
    FrequencyStat {
        marker: marker.to_string(),
        n: values.len(),
        mean: mean(values),
        sd: sample_variance(values).sqrt(),
    }
}

/// Per-utterance indicator of one marker (0/1 presence, or occurrence
/// count in count mode).
pub fn marker_values(
    utterances: &[Utterance],
    resources: &ResourceBundle,
    marker: Marker,
    mode: FrequencyMode,
) -> Vec<f64> {
    utterances
        .iter()
        .map(|u| match mode {
            FrequencyMode::Presence => {
                f64::from(marker.is_present_in(&extract_all(u, resources)))
            }
            FrequencyMode::Count => marker_count(u, resources, marker) as f64,
        })
        .collect()
}

/// Mean/SD of one marker over a corpus.
pub fn marker_frequency(
    utterances: &[Utterance],
    resources: &ResourceBundle,
    marker: Marker,
    mode: FrequencyMode,
) -> FrequencyStat {
    frequency_from_values(marker.name(), &marker_values(utterances, resources, marker, mode))
}

/// 1 iff any marker of the group fires in the utterance.
pub fn group_presence(utt: &Utterance, resources: &ResourceBundle, group: FeatureGroup) -> u8 {
    u8::from(extract_all(utt, resources).any_in_group(group))
}

// ---------------------------------------------------------------------------
// Welch's t-test
// ---------------------------------------------------------------------------

/// Two-sided Welch test result with the two significance thresholds used
/// in the genre tables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TTestResult {
    pub t: f64,
    pub df: f64,
    pub p: f64,
    pub significant_005: bool,
    pub significant_05: bool,
}

impl TTestResult {
    fn from_tp(t: f64, df: f64, p: f64) -> TTestResult {
        TTestResult {
            t,
            df,
            p,
            significant_005: p <= 0.005,
            significant_05: p <= 0.05,
        }
    }
}

/// Welch's unequal-variance t-test, two-sided.
///
/// Degrees of freedom follow Welch-Satterthwaite; the p-value is evaluated
/// through the regularized incomplete beta function. Two zero-variance
/// samples with equal means give p = 1 by convention (and p = 0 when the
/// means differ).
pub fn welch_ttest(a: &[f64], b: &[f64]) -> Result<TTestResult, StatsError> {
    let (na, nb) = (a.len(), b.len());
    if na < 2 || nb < 2 {
        return Err(StatsError::DegenerateSize(na, nb));
    }
    let (ma, mb) = (mean(a), mean(b));
    let (va, vb) = (sample_variance(a), sample_variance(b));
    let (fa, fb) = (na as f64, nb as f64);

    if va == 0.0 && vb == 0.0 {
        let df = fa + fb - 2.0;
        return Ok(if ma == mb {
            TTestResult::from_tp(0.0, df, 1.0)
        } else {
            TTestResult::from_tp((ma - mb).signum() * f64::INFINITY, df, 0.0)
        });
    }

    let sa = va / fa;
    let sb = vb / fb;
    let se = (sa + sb).sqrt();
    let t = (ma - mb) / se;
    let df = (sa + sb) * (sa + sb) / (sa * sa / (fa - 1.0) + sb * sb / (fb - 1.0));
    let p = student_t_two_sided_p(t, df);
    Ok(TTestResult::from_tp(t, df, p))
}

/// Two-sided p-value for Student's t: `P(|T_df| >= |t|)`, via the identity
/// with the regularized incomplete beta, `I_x(df/2, 1/2)` at
/// `x = df/(df + t^2)`.
pub fn student_t_two_sided_p(t: f64, df: f64) -> f64 {
    if !t.is_finite() {
        return 0.0;
    }
    if t == 0.0 {
        return 1.0;
    }
    let x = df / (df + t * t);
    regularized_incomplete_beta(x, 0.5 * df, 0.5).clamp(0.0, 1.0)
}

/// Regularized incomplete beta function I_x(a, b) by the Lentz continued
/// fraction, switching to the symmetric tail for stability.
pub fn regularized_incomplete_beta(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = a * x.ln() + b * (1.0 - x).ln() - ln_beta(a, b);
    if x < (a + 1.0) / (a + b + 2.0) {
        ln_front.exp() * beta_continued_fraction(x, a, b) / a
    } else {
        let ln_front_sym = b * (1.0 - x).ln() + a * x.ln() - ln_beta(a, b);
        1.0 - ln_front_sym.exp() * beta_continued_fraction(1.0 - x, b, a) / b
    }
}

fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

fn beta_continued_fraction(x: f64, a: f64, b: f64) -> f64 {
    const MAX_ITER: usize = 500;
    const EPS: f64 = 1e-16;
    const TINY: f64 = 1e-300;

    let mut c = 1.0f64;
    let mut d = 1.0 - (a + b) * x / (a + 1.0);
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut f = d;

    for m in 1..=MAX_ITER {
        let m = m as f64;
        // Even step.
        let num = m * (b - m) * x / ((a + 2.0 * m - 1.0) * (a + 2.0 * m));
        d = 1.0 + num * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + num / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        f *= c * d;
        // Odd step.
        let num = -(a + m) * (a + b + m) * x / ((a + 2.0 * m) * (a + 2.0 * m + 1.0));
        d = 1.0 + num * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + num / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    f
}

/// Lanczos approximation (g = 7, 9 coefficients).
fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        let s = std::f64::consts::PI / (std::f64::consts::PI * x).sin();
        return s.ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEFFS[0];
    for (i, &c) in COEFFS[1..].iter().enumerate() {
        acc += c / (x + 1.0 + i as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

// ---------------------------------------------------------------------------
// Genre comparison
// ---------------------------------------------------------------------------

/// Welch test between two genres for one marker.
#[derive(Debug, Clone, Serialize)]
pub struct PairTest {
    pub genre_a: String,
    pub genre_b: String,
    pub result: TTestResult,
}

#[derive(Debug, Clone, Serialize)]
pub struct GenreRow {
    pub marker: String,
    pub group: String,
    pub stats: Vec<FrequencyStat>,
    pub tests: Vec<PairTest>,
}

/// Per-genre per-marker mean (SD) plus all pairwise significance tests.
#[derive(Debug, Clone, Serialize)]
pub struct GenreTable {
    pub genres: Vec<String>,
    pub rows: Vec<GenreRow>,
}

pub fn genre_table(
    corpora: &[(String, Vec<Utterance>)],
    resources: &ResourceBundle,
    markers: &[Marker],
    mode: FrequencyMode,
) -> Result<GenreTable, StatsError> {
    let genres: Vec<String> = corpora.iter().map(|(g, _)| g.clone()).collect();
    let mut rows = Vec::new();
    for &marker in markers {
        let values: Vec<Vec<f64>> = corpora
            .iter()
            .map(|(_, utts)| marker_values(utts, resources, marker, mode))
            .collect();
        let stats = values
            .iter()
            .map(|v| frequency_from_values(marker.name(), v))
            .collect();
        let mut tests = Vec::new();
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                tests.push(PairTest {
                    genre_a: genres[i].clone(),
                    genre_b: genres[j].clone(),
                    result: welch_ttest(&values[i], &values[j])?,
                });
            }
        }
        rows.push(GenreRow {
            marker: marker.name().to_string(),
            group: marker.group().as_str().to_string(),
            stats,
            tests,
        });
    }
    Ok(GenreTable { genres, rows })
}
