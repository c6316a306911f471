//! Binary-classifier evaluation built around exact effective thresholds.
//!
//! The crate constructs ROC curves by evaluating the confusion matrix at the
//! threshold set `{0} ∪ {p_i} ∪ {1}`, integrates them with the trapezoid
//! rule, and augments AUC with two margin coefficients (`alpha`, `beta`) that
//! turn it into a confidence-aware score, cAUC:
//!
//! ```text
//! alpha = max(AP) - min(AN)
//! beta  = min(AP) - max(AN)
//! cAUC  = exp(alpha - 1) * exp(beta - 1) * AUC
//! ```
//!
//! On top of that it offers full per-threshold metric tables, synthetic
//! scenario generators with seeded Monte Carlo, and an offline monitor that
//! replays per-epoch prediction logs and recommends stopping epochs.
//!
//! ```
//! use confauc::{cauc, LabeledDataset};
//!
//! let data = LabeledDataset::from_pairs([(1, 0.9), (0, 0.1)]).unwrap();
//! let result = cauc(&data).unwrap();
//! assert_eq!(result.auc, 1.0);
//! assert!((result.cauc - (-0.4f64).exp()).abs() < 1e-15);
//! ```

pub mod confidence;
mod error;
#[cfg(test)]
mod fixtures;
pub mod model;
pub mod monitor;
pub mod roc;
pub mod scenario;
pub mod table;

pub use confidence::{
    bce, bce_gradient, bce_split_form, cauc, coefficients, correspondence_report, BceValue,
    CaucResult, ClassWeights, ConfidenceCoefficients, Correspondence, CorrespondenceTolerances,
};
pub use error::{Error, Result};
pub use model::{validate_dataset, ClassPartition, ConfusionCounts, Label, LabeledDataset, Sample};
pub use monitor::{
    compare_criteria, compute_trajectory, recommend_stop, CriteriaComparison, Criterion,
    CriterionOutcome, EpochRecord, MetricTrajectory, Split, StopRecommendation, TrajectoryEntry,
};
pub use roc::{
    auc, auc_pairwise_oracle, auc_trapezoid, confusion_at_threshold, effective_thresholds,
    predict_at_threshold, rates, roc_curve, separation_class, Rates, RocCurve, RocPoint,
    Separation, Threshold,
};
pub use scenario::{
    monte_carlo, random_trial, scenario, MonteCarloSummary, RandomTrialConfig, ScenarioFamily,
    ScenarioSpec,
};
pub use table::{
    best_row_at_tpr_floor, build_table, row_metrics, DerivedMetrics, MetricsTable,
    ThresholdMetricsRow,
};
