//! Effective thresholds, per-threshold confusion counts, ROC construction and
//! trapezoidal AUC, with a pairwise (Mann-Whitney) oracle.
//!
//! Predictions follow `y = 0 if p <= t, else 1`. Thresholds are the distinct
//! probabilities plus the two bounds, deduplicated by exact equality and
//! visited in descending order so the curve runs from (0,0) to (1,1).

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{max_of, min_of, ClassPartition, ConfusionCounts, Label, LabeledDataset};

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Threshold(f64);

impl Threshold {
    pub const ZERO: Threshold = Threshold(0.0);
    pub const ONE: Threshold = Threshold(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Threshold(value))
        } else {
            Err(Error::ThresholdOutOfRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `{0} ∪ {p_i} ∪ {1}` in strictly descending order.
pub fn effective_thresholds(dataset: &LabeledDataset) -> Vec<Threshold> {
    let mut values: Vec<f64> = dataset
        .samples()
        .iter()
        .map(|s| s.probability())
        .chain([0.0, 1.0])
        .collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values.dedup();
    values.into_iter().map(Threshold).collect()
}

pub fn predict_at_threshold(probability: f64, t: Threshold) -> Label {
    if probability <= t.0 {
        Label::Negative
    } else {
        Label::Positive
    }
}

pub fn confusion_at_threshold(dataset: &LabeledDataset, t: Threshold) -> ConfusionCounts {
    let mut counts = ConfusionCounts::default();
    for sample in dataset.samples() {
        match (
            sample.label(),
            predict_at_threshold(sample.probability(), t),
        ) {
            (Label::Positive, Label::Positive) => counts.tp += 1,
            (Label::Positive, Label::Negative) => counts.fn_ += 1,
            (Label::Negative, Label::Positive) => counts.fp += 1,
            (Label::Negative, Label::Negative) => counts.tn += 1,
        }
    }
    counts
}

/// True and false positive rates; `None` marks a zero denominator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rates {
    pub tpr: Option<f64>,
    pub fpr: Option<f64>,
}

pub(crate) fn ratio(numerator: usize, denominator: usize) -> Option<f64> {
    (denominator > 0).then(|| numerator as f64 / denominator as f64)
}

pub fn rates(counts: &ConfusionCounts) -> Rates {
    Rates {
        tpr: ratio(counts.tp, counts.actual_positives()),
        fpr: ratio(counts.fp, counts.actual_negatives()),
    }
}

/// Confusion counts at every effective threshold, highest threshold first.
///
/// Equivalent to calling [`confusion_at_threshold`] per member of
/// [`effective_thresholds`], in `O(n log n)`.
pub fn confusion_sweep(dataset: &LabeledDataset) -> Vec<(Threshold, ConfusionCounts)> {
    let mut sorted: Vec<(f64, Label)> = dataset
        .samples()
        .iter()
        .map(|s| (s.probability(), s.label()))
        .collect();
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));

    let positives = dataset.positives();
    let negatives = dataset.n() - positives;
    let mut tp = 0;
    let mut fp = 0;
    let mut next = 0;

    effective_thresholds(dataset)
        .into_iter()
        .map(|t| {
            while next < sorted.len() && sorted[next].0 > t.0 {
                match sorted[next].1 {
                    Label::Positive => tp += 1,
                    Label::Negative => fp += 1,
                }
                next += 1;
            }
            let counts = ConfusionCounts {
                tp,
                tn: negatives - fp,
                fp,
                fn_: positives - tp,
            };
            (t, counts)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RocPoint {
    pub threshold: Threshold,
    pub fpr: f64,
    pub tpr: f64,
    #[serde(skip)]
    tp: usize,
    #[serde(skip)]
    fp: usize,
}

/// A validated ROC curve from (0,0) to (1,1): both rates non-decreasing,
/// consecutive duplicate points collapsed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RocCurve {
    points: Vec<RocPoint>,
    #[serde(skip)]
    positives: usize,
    #[serde(skip)]
    negatives: usize,
}

impl RocCurve {
    pub fn points(&self) -> &[RocPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(fpr, tpr)` pairs in curve order.
    pub fn coordinates(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|p| (p.fpr, p.tpr)).collect()
    }
}

pub fn roc_curve(dataset: &LabeledDataset) -> Result<RocCurve> {
    dataset.require_both_classes()?;
    let positives = dataset.positives();
    let negatives = dataset.n() - positives;
    let point = |threshold: Threshold, tp: usize, fp: usize| RocPoint {
        threshold,
        fpr: fp as f64 / negatives as f64,
        tpr: tp as f64 / positives as f64,
        tp,
        fp,
    };

    let mut points: Vec<RocPoint> = Vec::new();
    for (t, counts) in confusion_sweep(dataset) {
        if points
            .last()
            .is_some_and(|last| last.tp == counts.tp && last.fp == counts.fp)
        {
            continue;
        }
        points.push(point(t, counts.tp, counts.fp));
    }
    // Samples at exactly p = 0 stay negative even at t = 0; close the curve.
    if points
        .last()
        .is_some_and(|last| last.tp != positives || last.fp != negatives)
    {
        points.push(point(Threshold::ZERO, positives, negatives));
    }

    Ok(RocCurve {
        points,
        positives,
        negatives,
    })
}

/// Trapezoid rule over consecutive points:
/// `Σ (fpr₂ − fpr₁)·(tpr₁ + tpr₂)/2`.
///
/// The sum is accumulated on integer counts and divided once, so the result
/// is the correctly rounded value of the exact area.
pub fn auc_trapezoid(curve: &RocCurve) -> f64 {
    let doubled_area: u128 = curve
        .points
        .windows(2)
        .map(|w| ((w[1].fp - w[0].fp) * (w[0].tp + w[1].tp)) as u128)
        .sum();
    doubled_area as f64 / (2 * curve.positives * curve.negatives) as f64
}

/// AUC of the dataset's ROC curve.
pub fn auc(dataset: &LabeledDataset) -> Result<f64> {
    roc_curve(dataset).map(|c| auc_trapezoid(&c))
}

/// Fraction of (positive, negative) pairs ranked correctly, ties counting 1/2.
/// Brute force over all pairs; meant as an independent check.
pub fn auc_pairwise_oracle(dataset: &LabeledDataset) -> Result<f64> {
    let partition = dataset.partition();
    partition.require_both_classes()?;
    let mut doubled_wins: u128 = 0;
    for &p in partition.positives() {
        for &q in partition.negatives() {
            doubled_wins += match p.partial_cmp(&q) {
                Some(Ordering::Greater) => 2,
                Some(Ordering::Equal) => 1,
                _ => 0,
            };
        }
    }
    let pairs = (partition.positives().len() * partition.negatives().len()) as u128;
    Ok(doubled_wins as f64 / (2 * pairs) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Separation {
    /// Some threshold puts every negative at or below it and every positive above.
    PerfectPositive,
    /// Some threshold puts every positive at or below it and every negative above.
    PerfectNegative,
    Mixed,
}

pub fn separation_class(partition: &ClassPartition) -> Result<Separation> {
    partition.require_both_classes()?;
    let (ap_min, ap_max) = (min_of(partition.positives()), max_of(partition.positives()));
    let (an_min, an_max) = (min_of(partition.negatives()), max_of(partition.negatives()));
    Ok(if ap_min > an_max {
        Separation::PerfectPositive
    } else if ap_max < an_min {
        Separation::PerfectNegative
    } else {
        Separation::Mixed
    })
}
