//! Offline replay of per-epoch prediction logs.
//!
//! Each `(epoch, split)` entry gets BCE, AUC and cAUC. Stop recommendations
//! take the argmax (cAUC, AUC) or argmin (BCE) over the validation split,
//! breaking ties toward the earliest epoch and ignoring undefined values.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::confidence::{self, ClassWeights};
use crate::error::{Error, Result};
use crate::model::LabeledDataset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Validation,
    Test,
}

impl Split {
    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Validation => "validation",
            Split::Test => "test",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Split {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "train" => Ok(Split::Train),
            "validation" => Ok(Split::Validation),
            "test" => Ok(Split::Test),
            other => Err(format!(
                "unknown split {other:?}, expected train, validation or test"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpochRecord {
    pub epoch: u64,
    pub split: Split,
    pub dataset: LabeledDataset,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryEntry {
    pub epoch: u64,
    pub split: Split,
    pub bce: f64,
    /// `None` when the entry's dataset has a single class.
    pub auc: Option<f64>,
    pub cauc: Option<f64>,
}

/// Entries sorted by `(epoch, split)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct MetricTrajectory {
    entries: Vec<TrajectoryEntry>,
}

impl MetricTrajectory {
    pub fn entries(&self) -> &[TrajectoryEntry] {
        &self.entries
    }

    pub fn get(&self, epoch: u64, split: Split) -> Option<&TrajectoryEntry> {
        self.entries
            .iter()
            .find(|e| e.epoch == epoch && e.split == split)
    }

    pub fn split(&self, split: Split) -> impl Iterator<Item = &TrajectoryEntry> {
        self.entries.iter().filter(move |e| e.split == split)
    }
}

pub fn compute_trajectory(
    log: &[EpochRecord],
    weights: Option<ClassWeights>,
) -> Result<MetricTrajectory> {
    if log.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut seen = HashSet::new();
    for record in log {
        if !seen.insert((record.epoch, record.split)) {
            return Err(Error::DuplicateEpochSplit {
                epoch: record.epoch,
                split: record.split,
            });
        }
    }

    let mut entries = log
        .par_iter()
        .map(|record| {
            let bce = confidence::bce(&record.dataset, weights)?.value;
            let scores = confidence::cauc(&record.dataset).ok();
            Ok(TrajectoryEntry {
                epoch: record.epoch,
                split: record.split,
                bce,
                auc: scores.map(|s| s.auc),
                cauc: scores.map(|s| s.cauc),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by_key(|e| (e.epoch, e.split));
    Ok(MetricTrajectory { entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    MaxValCauc,
    MaxValAuc,
    MinValBce,
}

impl Criterion {
    pub const ALL: [Criterion; 3] = [
        Criterion::MaxValCauc,
        Criterion::MaxValAuc,
        Criterion::MinValBce,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::MaxValCauc => "max_val_cauc",
            Criterion::MaxValAuc => "max_val_auc",
            Criterion::MinValBce => "min_val_bce",
        }
    }

    fn metric(self, entry: &TrajectoryEntry) -> Option<f64> {
        match self {
            Criterion::MaxValCauc => entry.cauc,
            Criterion::MaxValAuc => entry.auc,
            Criterion::MinValBce => Some(entry.bce),
        }
    }

    /// Whether `candidate` strictly beats `incumbent`.
    fn improves(self, candidate: f64, incumbent: f64) -> bool {
        match self {
            Criterion::MinValBce => candidate < incumbent,
            _ => candidate > incumbent,
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                format!(
                    "unknown criterion {s:?}, expected max_val_cauc, max_val_auc or min_val_bce"
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StopRecommendation {
    pub criterion: Criterion,
    pub epoch: u64,
    pub value: f64,
    /// Absolute gap to the best value attained at any other epoch; `None`
    /// with a single defined epoch.
    pub margin: Option<f64>,
}

pub fn recommend_stop(
    trajectory: &MetricTrajectory,
    criterion: Criterion,
) -> Result<StopRecommendation> {
    let candidates: Vec<(u64, f64)> = trajectory
        .split(Split::Validation)
        .filter_map(|e| criterion.metric(e).map(|v| (e.epoch, v)))
        .collect();

    // Entries are sorted by epoch, so only a strict improvement moves the pick.
    let (epoch, value) = candidates
        .iter()
        .copied()
        .reduce(|best, next| {
            if criterion.improves(next.1, best.1) {
                next
            } else {
                best
            }
        })
        .ok_or(Error::NoDefinedMetric(criterion))?;

    let runner_up = candidates
        .iter()
        .filter(|&&(e, _)| e != epoch)
        .map(|&(_, v)| v)
        .reduce(|a, b| if criterion.improves(b, a) { b } else { a });

    Ok(StopRecommendation {
        criterion,
        epoch,
        value,
        margin: runner_up.map(|r| (value - r).abs()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub criterion: Criterion,
    pub recommendation: Option<StopRecommendation>,
    /// Test-split metrics at the recommended epoch, when the log has them.
    pub test: Option<TrajectoryEntry>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriteriaComparison {
    pub outcomes: Vec<CriterionOutcome>,
}

impl CriteriaComparison {
    pub fn epoch_for(&self, criterion: Criterion) -> Option<u64> {
        self.outcomes
            .iter()
            .find(|o| o.criterion == criterion)
            .and_then(|o| o.recommendation.map(|r| r.epoch))
    }
}

/// Runs `criteria` independently; a failing criterion is reported in its
/// outcome without affecting the others.
pub fn compare_criteria(
    trajectory: &MetricTrajectory,
    criteria: &[Criterion],
) -> CriteriaComparison {
    let outcomes = criteria
        .iter()
        .map(|&criterion| match recommend_stop(trajectory, criterion) {
            Ok(rec) => CriterionOutcome {
                criterion,
                recommendation: Some(rec),
                test: trajectory.get(rec.epoch, Split::Test).copied(),
                error: None,
            },
            Err(err) => CriterionOutcome {
                criterion,
                recommendation: None,
                test: None,
                error: Some(err.to_string()),
            },
        })
        .collect();
    CriteriaComparison { outcomes }
}
