//! Domain types shared by every evaluation routine.

use serde::Serialize;

use crate::error::{Error, Result};

/// Ground-truth class of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "u8")]
pub enum Label {
    Negative,
    Positive,
}

impl Label {
    /// Accepts only the canonical integer encoding, `0` or `1`.
    pub fn from_int(value: i64) -> Option<Self> {
        match value {
            0 => Some(Label::Negative),
            1 => Some(Label::Positive),
            _ => None,
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Label::Negative => 0,
            Label::Positive => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Label::Negative => Label::Positive,
            Label::Positive => Label::Negative,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Label::Positive
    }
}

impl From<Label> for u8 {
    fn from(label: Label) -> u8 {
        label.as_u8()
    }
}

/// One ground-truth label paired with one predicted probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    label: Label,
    probability: f64,
}

impl Sample {
    /// Fails with [`Error::ProbabilityOutOfRange`] (index 0) when the
    /// probability is NaN or outside `[0, 1]`. Exact 0 and 1 are accepted.
    pub fn new(label: Label, probability: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&probability) {
            return Err(Error::ProbabilityOutOfRange {
                index: 0,
                value: probability,
            });
        }
        Ok(Sample { label, probability })
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn probability(&self) -> f64 {
        self.probability
    }
}

/// A non-empty, validated, ordered collection of samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledDataset {
    samples: Vec<Sample>,
}

impl LabeledDataset {
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(LabeledDataset { samples })
    }

    /// Validates raw `(label, probability)` pairs, preserving input order.
    pub fn from_pairs<I>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, f64)>,
    {
        let samples = raw
            .into_iter()
            .enumerate()
            .map(|(index, (label, probability))| {
                let label = Label::from_int(label).ok_or(Error::InvalidLabel { index, label })?;
                Sample::new(label, probability).map_err(|_| Error::ProbabilityOutOfRange {
                    index,
                    value: probability,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(samples)
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    /// Number of samples, always at least one.
    pub fn n(&self) -> usize {
        self.samples.len()
    }

    pub fn positives(&self) -> usize {
        self.samples
            .iter()
            .filter(|s| s.label.is_positive())
            .count()
    }

    pub fn negatives(&self) -> usize {
        self.n() - self.positives()
    }

    pub fn partition(&self) -> ClassPartition {
        let (positives, negatives): (Vec<&Sample>, Vec<&Sample>) =
            self.samples.iter().partition(|s| s.label.is_positive());
        ClassPartition {
            positives: positives.into_iter().map(|s| s.probability).collect(),
            negatives: negatives.into_iter().map(|s| s.probability).collect(),
        }
    }

    /// Errors with [`Error::SingleClassInput`] unless both classes are present.
    pub fn require_both_classes(&self) -> Result<()> {
        let positives = self.positives();
        let negatives = self.n() - positives;
        if positives == 0 || negatives == 0 {
            return Err(Error::SingleClassInput {
                positives,
                negatives,
            });
        }
        Ok(())
    }

    /// Applies `f` to every probability, re-validating the result.
    pub fn map_probabilities(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_pairs(
            self.samples
                .iter()
                .map(|s| (i64::from(s.label.as_u8()), f(s.probability))),
        )
    }

    /// Swaps every label and replaces every probability `p` by `1 - p`.
    pub fn mirrored(&self) -> Self {
        LabeledDataset {
            samples: self
                .samples
                .iter()
                .map(|s| Sample {
                    label: s.label.flipped(),
                    probability: 1.0 - s.probability,
                })
                .collect(),
        }
    }
}

/// Validates raw `(label, probability)` pairs into a [`LabeledDataset`].
pub fn validate_dataset<I>(raw: I) -> Result<LabeledDataset>
where
    I: IntoIterator<Item = (i64, f64)>,
{
    LabeledDataset::from_pairs(raw)
}

/// Probabilities split by ground-truth class. Either side may be empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassPartition {
    positives: Vec<f64>,
    negatives: Vec<f64>,
}

impl ClassPartition {
    pub fn new(positives: Vec<f64>, negatives: Vec<f64>) -> Self {
        ClassPartition {
            positives,
            negatives,
        }
    }

    /// Probabilities of the actual positives.
    pub fn positives(&self) -> &[f64] {
        &self.positives
    }

    /// Probabilities of the actual negatives.
    pub fn negatives(&self) -> &[f64] {
        &self.negatives
    }

    pub fn len(&self) -> usize {
        self.positives.len() + self.negatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn require_both_classes(&self) -> Result<()> {
        if self.positives.is_empty() || self.negatives.is_empty() {
            return Err(Error::SingleClassInput {
                positives: self.positives.len(),
                negatives: self.negatives.len(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ConfusionCounts {
    pub tp: usize,
    pub tn: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl ConfusionCounts {
    pub fn total(&self) -> usize {
        self.tp + self.tn + self.fp + self.fn_
    }

    pub fn actual_positives(&self) -> usize {
        self.tp + self.fn_
    }

    pub fn actual_negatives(&self) -> usize {
        self.fp + self.tn
    }
}

pub(crate) fn max_of(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

pub(crate) fn min_of(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::INFINITY, f64::min)
}
