//! Output rendering. Numbers use the shortest round-trip representation;
//! undefined values are empty CSV fields and JSON nulls.

use confauc::{
    CaucResult, CriteriaComparison, MetricTrajectory, MetricsTable, MonteCarloSummary,
    RandomTrialConfig, RocCurve, ThresholdMetricsRow, TrajectoryEntry,
};
use serde::Serialize;
use serde_json::json;

use crate::Format;

pub(crate) enum Report {
    Auc(f64),
    Cauc(CaucResult),
    Roc(RocCurve),
    Table {
        table: MetricsTable,
        selection: Option<ThresholdMetricsRow>,
    },
    Simulate {
        config: RandomTrialConfig,
        summary: MonteCarloSummary,
    },
    Monitor {
        trajectory: MetricTrajectory,
        comparison: CriteriaComparison,
    },
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

fn line(fields: &[String]) -> String {
    let mut s = fields.join(",");
    s.push('\n');
    s
}

fn table_row(r: &ThresholdMetricsRow) -> String {
    line(&[
        r.threshold.to_string(),
        r.tp.to_string(),
        r.tn.to_string(),
        r.fp.to_string(),
        r.fn_.to_string(),
        opt(r.tpr),
        opt(r.fpr),
        opt(r.specificity),
        opt(r.accuracy),
        opt(r.precision),
        opt(r.f1),
    ])
}

fn table_header() -> String {
    let mut s = ThresholdMetricsRow::COLUMNS.join(",");
    s.push('\n');
    s
}

const TRAJECTORY_HEADER: &str = "epoch,split,bce,auc,cauc\n";
const RECOMMENDATION_HEADER: &str = "criterion,epoch,value,margin,test_bce,test_auc,test_cauc\n";

fn trajectory_row(e: &TrajectoryEntry) -> String {
    line(&[
        e.epoch.to_string(),
        e.split.to_string(),
        e.bce.to_string(),
        opt(e.auc),
        opt(e.cauc),
    ])
}

#[derive(Serialize)]
struct SimulationDoc<'a> {
    #[serde(flatten)]
    config: &'a RandomTrialConfig,
    #[serde(flatten)]
    summary: &'a MonteCarloSummary,
}

impl Report {
    pub(crate) fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Structured => {
                let mut s = self.json().to_string();
                s.push('\n');
                s
            }
        }
    }

    fn csv(&self) -> String {
        match self {
            Report::Auc(auc) => format!("{auc}\n"),
            Report::Cauc(r) => format!(
                "auc,alpha,beta,cauc\n{},{},{},{}\n",
                r.auc, r.coefficients.alpha, r.coefficients.beta, r.cauc
            ),
            Report::Roc(curve) => {
                let mut s = String::from("threshold,fpr,tpr\n");
                for p in curve.points() {
                    s += &line(&[
                        p.threshold.value().to_string(),
                        p.fpr.to_string(),
                        p.tpr.to_string(),
                    ]);
                }
                s
            }
            Report::Table { table, selection } => {
                let mut s = table_header();
                for r in table.rows() {
                    s += &table_row(r);
                }
                if let Some(r) = selection {
                    s.push('\n');
                    s += &table_header();
                    s += &table_row(r);
                }
                s
            }
            Report::Simulate { config, summary } => {
                let mut s = String::from(
                    "n,trials,seed,mean_auc,mean_cauc,auc_std_error,cauc_std_error,trials_completed,trials_skipped\n",
                );
                s += &line(&[
                    config.n().to_string(),
                    config.trials().to_string(),
                    config.seed().to_string(),
                    summary.mean_auc.to_string(),
                    summary.mean_cauc.to_string(),
                    summary.auc_std_error.to_string(),
                    summary.cauc_std_error.to_string(),
                    summary.trials_completed.to_string(),
                    summary.trials_skipped.to_string(),
                ]);
                s
            }
            Report::Monitor {
                trajectory,
                comparison,
            } => {
                let mut s = String::from(TRAJECTORY_HEADER);
                for e in trajectory.entries() {
                    s += &trajectory_row(e);
                }
                s.push('\n');
                s += RECOMMENDATION_HEADER;
                for o in &comparison.outcomes {
                    let rec = o.recommendation.as_ref();
                    s += &line(&[
                        o.criterion.to_string(),
                        rec.map_or_else(String::new, |r| r.epoch.to_string()),
                        opt(rec.map(|r| r.value)),
                        opt(rec.and_then(|r| r.margin)),
                        opt(o.test.map(|t| t.bce)),
                        opt(o.test.and_then(|t| t.auc)),
                        opt(o.test.and_then(|t| t.cauc)),
                    ]);
                }
                s
            }
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Report::Auc(auc) => json!({ "auc": auc }),
            Report::Cauc(r) => json!(r),
            Report::Roc(curve) => json!(curve.points()),
            Report::Table { table, selection } => match selection {
                Some(r) => json!({ "rows": table, "selection": r }),
                None => json!({ "rows": table }),
            },
            Report::Simulate { config, summary } => json!(SimulationDoc { config, summary }),
            Report::Monitor {
                trajectory,
                comparison,
            } => json!({ "trajectory": trajectory, "recommendations": comparison.outcomes }),
        }
    }
}
