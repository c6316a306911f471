//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each operation has a plain Rust form returning a JSON string (tested
//! natively) and a thin `#[wasm_bindgen]` wrapper that turns errors into
//! JavaScript exceptions.

use confauc::{
    build_table, cauc, roc_curve, scenario, separation_class, LabeledDataset, RocPoint,
    ScenarioFamily, ScenarioSpec, Separation, ThresholdMetricsRow,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Sample {
    label: u8,
    prob: f64,
}

#[derive(Serialize)]
struct Analysis<'a> {
    auc: f64,
    alpha: f64,
    beta: f64,
    cauc: f64,
    separation: &'static str,
    roc: &'a [RocPoint],
    table: &'a [ThresholdMetricsRow],
}

#[derive(Serialize)]
struct ScenarioView<'a> {
    samples: Vec<Sample>,
    #[serde(flatten)]
    analysis: Analysis<'a>,
}

#[derive(Serialize)]
struct ShrinkStep {
    scale: f64,
    auc: f64,
    alpha: f64,
    beta: f64,
    cauc: f64,
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string(value).expect("reports contain only plain data")
}

fn dataset(labels: &[u8], probs: &[f64]) -> Result<LabeledDataset, String> {
    if labels.len() != probs.len() {
        return Err(format!(
            "{} labels but {} probabilities",
            labels.len(),
            probs.len()
        ));
    }
    LabeledDataset::from_pairs(
        labels
            .iter()
            .map(|&y| i64::from(y))
            .zip(probs.iter().copied()),
    )
    .map_err(|e| e.to_string())
}

fn separation_name(s: Separation) -> &'static str {
    match s {
        Separation::PerfectPositive => "perfect_positive",
        Separation::PerfectNegative => "perfect_negative",
        Separation::Mixed => "mixed",
    }
}

fn with_analysis<T>(data: &LabeledDataset, f: impl FnOnce(Analysis<'_>) -> T) -> Result<T, String> {
    let err = |e: confauc::Error| e.to_string();
    let result = cauc(data).map_err(err)?;
    let curve = roc_curve(data).map_err(err)?;
    let table = build_table(data);
    let separation = separation_class(&data.partition()).map_err(err)?;
    Ok(f(Analysis {
        auc: result.auc,
        alpha: result.coefficients.alpha,
        beta: result.coefficients.beta,
        cauc: result.cauc,
        separation: separation_name(separation),
        roc: curve.points(),
        table: table.rows(),
    }))
}

/// ROC points, AUC, margin coefficients, cAUC and the metrics table.
pub fn analyze_json(labels: &[u8], probs: &[f64]) -> Result<String, String> {
    let data = dataset(labels, probs)?;
    with_analysis(&data, |a| to_json(&a))
}

pub fn parse_family(name: &str) -> Result<ScenarioFamily, String> {
    match name {
        "auc1" => Ok(ScenarioFamily::PerfectAucOne),
        "auc0" => Ok(ScenarioFamily::PerfectAucZero),
        "flip" => Ok(ScenarioFamily::SingleFlipMixed),
        other => Err(format!(
            "unknown scenario family {other:?}, expected auc1, auc0 or flip"
        )),
    }
}

/// Builds a synthetic dataset from `(p, ε, δ)` and analyses it.
pub fn scenario_json(
    family: &str,
    p: f64,
    epsilon: f64,
    delta: f64,
    ap_count: usize,
    an_count: usize,
) -> Result<String, String> {
    let spec = ScenarioSpec::new(parse_family(family)?, p, epsilon, delta, ap_count, an_count)
        .map_err(|e| e.to_string())?;
    let data = scenario(&spec).map_err(|e| e.to_string())?;
    let samples = data
        .samples()
        .iter()
        .map(|s| Sample {
            label: s.label().as_u8(),
            prob: s.probability(),
        })
        .collect();
    with_analysis(&data, |analysis| {
        to_json(&ScenarioView { samples, analysis })
    })
}

/// Pulls every probability toward 0.5 by `scale` in `steps` even steps from
/// 1 down to 0. AUC is unchanged at every scale > 0; cAUC follows the margins.
pub fn shrink_json(labels: &[u8], probs: &[f64], steps: usize) -> Result<String, String> {
    if steps < 2 {
        return Err("at least two steps are needed".into());
    }
    let data = dataset(labels, probs)?;
    let sweep = (0..steps)
        .map(|i| {
            let scale = 1.0 - i as f64 / (steps - 1) as f64;
            let shrunk = data
                .map_probabilities(|p| 0.5 + scale * (p - 0.5))
                .map_err(|e| e.to_string())?;
            let r = cauc(&shrunk).map_err(|e| e.to_string())?;
            Ok(ShrinkStep {
                scale,
                auc: r.auc,
                alpha: r.coefficients.alpha,
                beta: r.coefficients.beta,
                cauc: r.cauc,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(to_json(&sweep))
}

fn js<T>(r: Result<T, String>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn analyze(labels: &[u8], probs: &[f64]) -> Result<String, JsError> {
    js(analyze_json(labels, probs))
}

#[wasm_bindgen(js_name = exploreScenario)]
pub fn explore_scenario(
    family: &str,
    p: f64,
    epsilon: f64,
    delta: f64,
    ap_count: usize,
    an_count: usize,
) -> Result<String, JsError> {
    js(scenario_json(family, p, epsilon, delta, ap_count, an_count))
}

#[wasm_bindgen(js_name = shrinkSweep)]
pub fn shrink_sweep(labels: &[u8], probs: &[f64], steps: usize) -> Result<String, JsError> {
    js(shrink_json(labels, probs, steps))
}
