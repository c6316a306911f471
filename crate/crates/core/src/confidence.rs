//! Margin coefficients, confidence-weighted AUC and binary cross-entropy.
//!
//! `alpha` is the widest cross-class span and `beta` the narrowest (negative
//! once the classes overlap). cAUC scales AUC by `exp(alpha - 1) * exp(beta - 1)`,
//! so it equals AUC only when positives sit at 1 and negatives at 0, which is
//! also the only configuration where BCE vanishes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{max_of, min_of, ClassPartition, Label, LabeledDataset};
use crate::roc;

/// Probabilities are clipped to `[CLIP_EPS, 1 - CLIP_EPS]` before taking logs.
pub const CLIP_EPS: f64 = 1e-12;

/// BCE at or above this value is reported as divergent.
pub const DIVERGENCE_FLOOR: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfidenceCoefficients {
    pub alpha: f64,
    pub beta: f64,
}

impl ConfidenceCoefficients {
    /// The multiplier applied to AUC.
    pub fn factor(&self) -> f64 {
        (self.alpha - 1.0).exp() * (self.beta - 1.0).exp()
    }
}

pub fn coefficients(partition: &ClassPartition) -> Result<ConfidenceCoefficients> {
    partition.require_both_classes()?;
    let (ap, an) = (partition.positives(), partition.negatives());
    Ok(ConfidenceCoefficients {
        alpha: max_of(ap) - min_of(an),
        beta: min_of(ap) - max_of(an),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaucResult {
    pub auc: f64,
    #[serde(flatten)]
    pub coefficients: ConfidenceCoefficients,
    pub cauc: f64,
}

pub fn cauc(dataset: &LabeledDataset) -> Result<CaucResult> {
    let auc = roc::auc(dataset)?;
    let coefficients = coefficients(&dataset.partition())?;
    Ok(CaucResult {
        auc,
        coefficients,
        cauc: (coefficients.alpha - 1.0).exp() * (coefficients.beta - 1.0).exp() * auc,
    })
}

/// Per-class multipliers for the two BCE terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassWeights {
    pub positive: f64,
    pub negative: f64,
}

impl ClassWeights {
    pub const UNIT: ClassWeights = ClassWeights {
        positive: 1.0,
        negative: 1.0,
    };

    pub fn new(positive: f64, negative: f64) -> Result<Self> {
        let valid = |w: f64| w.is_finite() && w > 0.0;
        if valid(positive) && valid(negative) {
            Ok(ClassWeights { positive, negative })
        } else {
            Err(Error::NonPositiveWeight { positive, negative })
        }
    }

    fn for_label(&self, label: Label) -> f64 {
        match label {
            Label::Positive => self.positive,
            Label::Negative => self.negative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BceValue {
    pub value: f64,
    pub weights: Option<ClassWeights>,
    /// `value >= DIVERGENCE_FLOOR`: the unclipped loss is effectively infinite.
    pub divergent: bool,
}

impl BceValue {
    fn new(value: f64, weights: Option<ClassWeights>) -> Self {
        BceValue {
            value,
            weights,
            divergent: value >= DIVERGENCE_FLOOR,
        }
    }
}

fn clip(p: f64) -> f64 {
    p.clamp(CLIP_EPS, 1.0 - CLIP_EPS)
}

fn checked_weights(weights: Option<ClassWeights>) -> Result<ClassWeights> {
    match weights {
        Some(w) => ClassWeights::new(w.positive, w.negative),
        None => Ok(ClassWeights::UNIT),
    }
}

/// `-(1/N) Σ w_y [y ln p + (1 - y) ln(1 - p)]` evaluated sample by sample.
pub fn bce(dataset: &LabeledDataset, weights: Option<ClassWeights>) -> Result<BceValue> {
    let w = checked_weights(weights)?;
    let sum: f64 = dataset
        .samples()
        .iter()
        .map(|s| {
            let p = clip(s.probability());
            let y = f64::from(s.label().as_u8());
            w.for_label(s.label()) * (y * p.ln() + (1.0 - y) * (1.0 - p).ln())
        })
        .sum();
    Ok(BceValue::new((-sum / dataset.n() as f64).max(0.0), weights))
}

/// The same loss as [`bce`], summed separately over positives (`ln p`) and
/// negatives (`ln(1 - p)`).
pub fn bce_split_form(dataset: &LabeledDataset, weights: Option<ClassWeights>) -> Result<BceValue> {
    let w = checked_weights(weights)?;
    let partition = dataset.partition();
    let positive_term: f64 = partition.positives().iter().map(|&p| clip(p).ln()).sum();
    let negative_term: f64 = partition
        .negatives()
        .iter()
        .map(|&p| (1.0 - clip(p)).ln())
        .sum();
    let total = w.positive * positive_term + w.negative * negative_term;
    Ok(BceValue::new(
        (-total / dataset.n() as f64).max(0.0),
        weights,
    ))
}

/// Partial derivatives of [`bce`] with respect to each sample's probability,
/// in sample order. Exact wherever the probability lies inside the clip band.
pub fn bce_gradient(dataset: &LabeledDataset, weights: Option<ClassWeights>) -> Result<Vec<f64>> {
    let w = checked_weights(weights)?;
    let n = dataset.n() as f64;
    Ok(dataset
        .samples()
        .iter()
        .map(|s| {
            let p = clip(s.probability());
            let d = match s.label() {
                Label::Positive => -1.0 / p,
                Label::Negative => 1.0 / (1.0 - p),
            };
            w.for_label(s.label()) * d / n
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrespondenceTolerances {
    /// Distance from 1 (ideal) or 0 (worst) still counted as an extreme cAUC.
    pub cauc: f64,
    /// Largest BCE still counted as ideal.
    pub bce: f64,
    pub divergence_floor: f64,
}

impl Default for CorrespondenceTolerances {
    fn default() -> Self {
        CorrespondenceTolerances {
            cauc: 1e-9,
            bce: 1e-9,
            divergence_floor: DIVERGENCE_FLOOR,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Correspondence {
    pub auc: f64,
    pub cauc: f64,
    pub bce: f64,
    pub is_ideal: bool,
    pub is_worst: bool,
}

/// Checks whether cAUC and BCE agree on the ideal or the worst extreme.
pub fn correspondence_report(
    dataset: &LabeledDataset,
    tolerances: &CorrespondenceTolerances,
) -> Result<Correspondence> {
    let scores = cauc(dataset)?;
    let loss = bce(dataset, None)?.value;
    Ok(Correspondence {
        auc: scores.auc,
        cauc: scores.cauc,
        bce: loss,
        is_ideal: scores.cauc >= 1.0 - tolerances.cauc && loss <= tolerances.bce,
        is_worst: scores.cauc <= tolerances.cauc && loss >= tolerances.divergence_floor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::TEN_MIXED;
    use crate::model::validate_dataset;

    fn data(pairs: &[(i64, f64)]) -> LabeledDataset {
        validate_dataset(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn ten_mixed_coefficients() {
        let c = coefficients(&data(&TEN_MIXED).partition()).unwrap();
        assert!((c.alpha - 0.5256653).abs() < 1e-7);
        assert!((c.beta - -0.39586047).abs() < 1e-7);
    }

    #[test]
    fn perfect_and_constant_coefficients() {
        let c = coefficients(&data(&[(1, 1.0), (1, 1.0), (0, 0.0)]).partition()).unwrap();
        assert_eq!(
            c,
            ConfidenceCoefficients {
                alpha: 1.0,
                beta: 1.0
            }
        );
        let c = coefficients(&data(&[(1, 0.3), (0, 0.3), (0, 0.3)]).partition()).unwrap();
        assert_eq!(
            c,
            ConfidenceCoefficients {
                alpha: 0.0,
                beta: 0.0
            }
        );
    }

    #[test]
    fn coefficients_need_both_classes() {
        assert!(matches!(
            coefficients(&ClassPartition::new(vec![], vec![0.2])),
            Err(Error::SingleClassInput { .. })
        ));
        assert!(cauc(&data(&[(0, 0.2), (0, 0.4)])).is_err());
    }

    #[test]
    fn cauc_examples() {
        let r = cauc(&data(&TEN_MIXED)).unwrap();
        assert_eq!(r.auc, 0.6666666666666666);
        // Nine-decimal inputs reproduce the reference 0.1027290563696407 to ~1.3e-10.
        assert!((r.cauc - 0.1027290563696407).abs() < 2e-10);

        let r = cauc(&data(&[(1, 1.0), (0, 0.0)])).unwrap();
        assert_eq!(r.cauc, 1.0);

        let r = cauc(&data(&[(1, 0.3), (0, 0.3), (1, 0.3)])).unwrap();
        assert_eq!(r.auc, 0.5);
        assert!((r.cauc - 0.5 * (-2.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn bce_examples() {
        let v = bce(&data(&[(1, 1.0)]), None).unwrap();
        assert!(v.value <= 1e-12);
        assert!(!v.divergent);

        let v = bce(&data(&[(1, 0.5), (0, 0.5)]), None).unwrap();
        assert!((v.value - std::f64::consts::LN_2).abs() < 1e-15);

        let v = bce(&data(&[(1, 0.0), (0, 1.0)]), None).unwrap();
        assert!(v.value >= 20.0);
        assert!(v.divergent);
    }

    #[test]
    fn weighted_bce_scales_each_class() {
        let d = data(&[(1, 0.5), (0, 0.25)]);
        let w = ClassWeights::new(3.0, 0.5).unwrap();
        let v = bce(&d, Some(w)).unwrap();
        let expected = -(3.0 * 0.5f64.ln() + 0.5 * 0.75f64.ln()) / 2.0;
        assert!((v.value - expected).abs() < 1e-15);
        assert_eq!(v.weights, Some(w));
        assert!((bce_split_form(&d, Some(w)).unwrap().value - expected).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_positive_weights() {
        assert!(ClassWeights::new(0.0, 1.0).is_err());
        assert!(ClassWeights::new(1.0, -2.0).is_err());
        assert!(ClassWeights::new(f64::NAN, 1.0).is_err());
        let bad = ClassWeights {
            positive: -1.0,
            negative: 1.0,
        };
        assert_eq!(
            bce(&data(&[(1, 0.5)]), Some(bad)),
            Err(Error::NonPositiveWeight {
                positive: -1.0,
                negative: 1.0
            })
        );
    }

    #[test]
    fn gradient_matches_central_difference() {
        let h = 1e-6;
        for label in [0, 1] {
            for p in [0.2, 0.5, 0.8] {
                let loss = |q: f64| bce(&data(&[(label, q)]), None).unwrap().value;
                let numeric = (loss(p + h) - loss(p - h)) / (2.0 * h);
                let analytic = bce_gradient(&data(&[(label, p)]), None).unwrap()[0];
                assert!((numeric - analytic).abs() < 1e-6, "{label} {p}");
            }
        }
    }

    #[test]
    fn correspondence_examples() {
        let tol = CorrespondenceTolerances::default();
        let r = correspondence_report(&data(&[(1, 1.0), (0, 0.0)]), &tol).unwrap();
        assert!(r.is_ideal && !r.is_worst);
        let r = correspondence_report(&data(&[(1, 0.0), (0, 1.0)]), &tol).unwrap();
        assert!(r.is_worst && !r.is_ideal);
        assert_eq!(r.cauc, 0.0);
        let r = correspondence_report(&data(&TEN_MIXED), &tol).unwrap();
        assert!(!r.is_ideal && !r.is_worst);
    }
}
