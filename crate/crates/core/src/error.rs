use thiserror::Error;

use crate::monitor::{Criterion, Split};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input contains no samples")]
    EmptyInput,

    #[error("label {label} at index {index} is not 0 or 1")]
    InvalidLabel { index: usize, label: i64 },

    #[error("probability {value} at index {index} is outside [0, 1]")]
    ProbabilityOutOfRange { index: usize, value: f64 },

    #[error("threshold {0} is outside [0, 1]")]
    ThresholdOutOfRange(f64),

    #[error(
        "both classes are required, got {positives} positive and {negatives} negative samples"
    )]
    SingleClassInput { positives: usize, negatives: usize },

    #[error("class weights must be finite and positive, got ({positive}, {negative})")]
    NonPositiveWeight { positive: f64, negative: f64 },

    #[error("no row reaches tpr >= {min_tpr} with a defined fpr outside the margin")]
    NoFeasibleRow { min_tpr: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("generated probability {value} at index {index} leaves [0, 1]")]
    ProbabilityOverflow { index: usize, value: f64 },

    #[error("all {trials} trials were single-class and skipped")]
    AllTrialsSkipped { trials: usize },

    #[error("epoch {epoch} has more than one {split} record")]
    DuplicateEpochSplit { epoch: u64, split: Split },

    #[error("no validation entry defines the metric for criterion {0}")]
    NoDefinedMetric(Criterion),
}
