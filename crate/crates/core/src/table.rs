//! Per-threshold metric tables.
//!
//! One row per effective threshold with the confusion counts and every
//! derived ratio. A ratio with a zero denominator is `None`, never 0.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ConfusionCounts, LabeledDataset};
use crate::roc::{confusion_sweep, ratio};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct DerivedMetrics {
    pub tpr: Option<f64>,
    pub fpr: Option<f64>,
    pub specificity: Option<f64>,
    pub accuracy: Option<f64>,
    pub precision: Option<f64>,
    pub f1: Option<f64>,
}

pub fn row_metrics(counts: &ConfusionCounts) -> DerivedMetrics {
    let tpr = ratio(counts.tp, counts.tp + counts.fn_);
    let precision = ratio(counts.tp, counts.tp + counts.fp);
    let f1 = match (precision, tpr) {
        (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
        _ => None,
    };
    DerivedMetrics {
        tpr,
        fpr: ratio(counts.fp, counts.fp + counts.tn),
        specificity: ratio(counts.tn, counts.tn + counts.fp),
        accuracy: ratio(counts.tp + counts.tn, counts.total()),
        precision,
        f1,
    }
}

/// Field order matches the serialized column order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdMetricsRow {
    pub threshold: f64,
    pub tp: usize,
    pub tn: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tpr: Option<f64>,
    pub fpr: Option<f64>,
    pub specificity: Option<f64>,
    pub accuracy: Option<f64>,
    pub precision: Option<f64>,
    pub f1: Option<f64>,
}

impl ThresholdMetricsRow {
    pub const COLUMNS: [&'static str; 11] = [
        "threshold",
        "tp",
        "tn",
        "fp",
        "fn",
        "tpr",
        "fpr",
        "specificity",
        "accuracy",
        "precision",
        "f1",
    ];

    fn new(threshold: f64, counts: ConfusionCounts) -> Self {
        let m = row_metrics(&counts);
        ThresholdMetricsRow {
            threshold,
            tp: counts.tp,
            tn: counts.tn,
            fp: counts.fp,
            fn_: counts.fn_,
            tpr: m.tpr,
            fpr: m.fpr,
            specificity: m.specificity,
            accuracy: m.accuracy,
            precision: m.precision,
            f1: m.f1,
        }
    }

    pub fn counts(&self) -> ConfusionCounts {
        ConfusionCounts {
            tp: self.tp,
            tn: self.tn,
            fp: self.fp,
            fn_: self.fn_,
        }
    }
}

/// Rows ordered by strictly descending threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct MetricsTable {
    rows: Vec<ThresholdMetricsRow>,
}

impl MetricsTable {
    pub fn rows(&self) -> &[ThresholdMetricsRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row_at(&self, threshold: f64) -> Option<&ThresholdMetricsRow> {
        self.rows.iter().find(|r| r.threshold == threshold)
    }
}

/// Works on single-class data too; the missing class shows up as `None` rates.
pub fn build_table(dataset: &LabeledDataset) -> MetricsTable {
    MetricsTable {
        rows: confusion_sweep(dataset)
            .into_iter()
            .map(|(t, counts)| ThresholdMetricsRow::new(t.value(), counts))
            .collect(),
    }
}

/// Lowest-fpr row among those with `tpr >= min_tpr`, preferring the higher
/// threshold on ties.
///
/// A positive `fpr_margin` skips rows whose fpr lies within `fpr_margin` of
/// the feasible minimum, trading a little specificity for distance from the
/// boundary.
pub fn best_row_at_tpr_floor(
    table: &MetricsTable,
    min_tpr: f64,
    fpr_margin: f64,
) -> Result<ThresholdMetricsRow> {
    let feasible: Vec<(f64, &ThresholdMetricsRow)> = table
        .rows
        .iter()
        .filter_map(|row| match (row.tpr, row.fpr) {
            (Some(tpr), Some(fpr)) if tpr >= min_tpr => Some((fpr, row)),
            _ => None,
        })
        .collect();
    let infimum = feasible
        .iter()
        .map(|&(fpr, _)| fpr)
        .fold(f64::INFINITY, f64::min);

    let mut best: Option<(f64, &ThresholdMetricsRow)> = None;
    for &(fpr, row) in &feasible {
        if fpr - infimum < fpr_margin {
            continue;
        }
        // Rows are visited from the highest threshold down, so strict `<`
        // keeps the higher threshold on ties.
        if best.is_none_or(|(best_fpr, _)| fpr < best_fpr) {
            best = Some((fpr, row));
        }
    }
    best.map(|(_, row)| *row)
        .ok_or(Error::NoFeasibleRow { min_tpr })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::TEN_GRID;
    use crate::model::validate_dataset;

    fn data(pairs: &[(i64, f64)]) -> LabeledDataset {
        validate_dataset(pairs.iter().copied()).unwrap()
    }

    fn counts(tp: usize, tn: usize, fp: usize, fn_: usize) -> ConfusionCounts {
        ConfusionCounts { tp, tn, fp, fn_ }
    }

    #[test]
    fn perfect_row() {
        let m = row_metrics(&counts(1, 1, 0, 0));
        assert_eq!(
            m,
            DerivedMetrics {
                tpr: Some(1.0),
                fpr: Some(0.0),
                specificity: Some(1.0),
                accuracy: Some(1.0),
                precision: Some(1.0),
                f1: Some(1.0),
            }
        );
    }

    #[test]
    fn inverted_row_has_undefined_f1() {
        let m = row_metrics(&counts(0, 0, 1, 1));
        assert_eq!(m.accuracy, Some(0.0));
        assert_eq!(m.tpr, Some(0.0));
        assert_eq!(m.fpr, Some(1.0));
        assert_eq!(m.specificity, Some(0.0));
        assert_eq!(m.precision, Some(0.0));
        assert_eq!(m.f1, None);
    }

    #[test]
    fn no_predicted_positives_leaves_precision_undefined() {
        let m = row_metrics(&counts(0, 2, 0, 1));
        assert_eq!(m.precision, None);
        assert_eq!(m.f1, None);
        assert_eq!(m.accuracy, Some(2.0 / 3.0));
    }

    #[test]
    fn ten_grid_has_one_row_per_threshold() {
        let table = build_table(&data(&TEN_GRID));
        assert_eq!(table.len(), 11);
        let thresholds: Vec<f64> = table.rows().iter().map(|r| r.threshold).collect();
        assert_eq!(
            thresholds,
            [1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1, 0.0]
        );
        for row in table.rows() {
            assert_eq!(row.counts().total(), 10);
        }
    }

    #[test]
    fn two_sample_table() {
        let table = build_table(&data(&[(1, 0.6), (0, 0.4)]));
        assert!(table.row_at(0.5).is_none());
        let row = table.row_at(0.4).unwrap();
        assert_eq!(row.counts(), counts(1, 1, 0, 0));
        assert_eq!(row.accuracy, Some(1.0));
        assert_eq!(row.precision, Some(1.0));
        assert_eq!(row.f1, Some(1.0));
    }

    #[test]
    fn single_class_table_records_undefined_fpr() {
        let table = build_table(&data(&[(1, 0.5)]));
        let row = table.row_at(1.0).unwrap();
        assert_eq!(row.fpr, None);
        assert_eq!(row.specificity, None);
        assert_eq!(row.tpr, Some(0.0));
    }

    #[test]
    fn tpr_floor_selection() {
        let table = build_table(&data(&[(1, 0.6), (0, 0.4)]));
        let row = best_row_at_tpr_floor(&table, 1.0, 0.0).unwrap();
        assert_eq!(row.threshold, 0.4);
        assert_eq!(row.fpr, Some(0.0));

        let row = best_row_at_tpr_floor(&table, 0.0, 0.0).unwrap();
        assert_eq!(row.threshold, 1.0);
    }

    #[test]
    fn lower_auc_model_can_win_at_full_sensitivity() {
        // Descending ranks: P P N N N P N (AUC 9/12) vs N P N P P N N (AUC 7/12).
        let first = data(&[
            (1, 0.9),
            (1, 0.8),
            (0, 0.7),
            (0, 0.6),
            (0, 0.5),
            (1, 0.4),
            (0, 0.3),
        ]);
        let second = data(&[
            (0, 0.9),
            (1, 0.8),
            (0, 0.7),
            (1, 0.6),
            (1, 0.5),
            (0, 0.4),
            (0, 0.3),
        ]);
        assert_eq!(crate::roc::auc(&first).unwrap(), 0.75);
        assert_eq!(crate::roc::auc(&second).unwrap(), 7.0 / 12.0);
        let a = best_row_at_tpr_floor(&build_table(&first), 1.0, 0.0).unwrap();
        let b = best_row_at_tpr_floor(&build_table(&second), 1.0, 0.0).unwrap();
        assert_eq!(a.fpr, Some(0.75));
        assert_eq!(b.fpr, Some(0.5));
    }

    #[test]
    fn margin_moves_away_from_minimum() {
        let table = build_table(&data(&TEN_GRID));
        let tight = best_row_at_tpr_floor(&table, 0.8, 0.0).unwrap();
        // t = 0.5 and t = 0.4 both reach fpr 0.2; the higher threshold wins.
        assert_eq!(tight.threshold, 0.5);
        assert_eq!(tight.fpr, Some(0.2));
        let relaxed = best_row_at_tpr_floor(&table, 0.8, 0.1).unwrap();
        assert_eq!(relaxed.fpr, Some(0.4));
        assert_eq!(relaxed.threshold, 0.3);
    }

    #[test]
    fn infeasible_floor() {
        let table = build_table(&data(&[(1, 0.5)]));
        assert_eq!(
            best_row_at_tpr_floor(&table, 0.5, 0.0),
            Err(Error::NoFeasibleRow { min_tpr: 0.5 })
        );
        let table = build_table(&data(&TEN_GRID));
        assert!(best_row_at_tpr_floor(&table, 0.8, 5.0).is_err());
    }
}
