//! Synthetic datasets: seeded uniform-random trials with Monte Carlo
//! aggregation, and parametric ε/δ layouts that force AUC = 1, AUC = 0 or a
//! single tied error.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::confidence;
use crate::error::{Error, Result};
use crate::model::{Label, LabeledDataset, Sample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RandomTrialConfig {
    n: usize,
    trials: usize,
    seed: u64,
}

impl RandomTrialConfig {
    pub fn new(n: usize, trials: usize, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidConfig(format!(
                "samples per trial must be at least 2, got {n}"
            )));
        }
        if trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        Ok(RandomTrialConfig { n, trials, seed })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Draws `n` samples with `U[0, 1)` probabilities and fair-coin labels.
/// Deterministic for a given generator state; may be single-class.
pub fn random_trial<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<LabeledDataset> {
    let samples = (0..n)
        .map(|_| {
            let label = if rng.random_bool(0.5) {
                Label::Positive
            } else {
                Label::Negative
            };
            Sample::new(label, rng.random::<f64>())
        })
        .collect::<Result<Vec<_>>>()?;
    LabeledDataset::new(samples)
}

/// Generator for trial `index`: the seed selects the key, the index selects
/// the stream, so trials are independent of scheduling order.
pub fn trial_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloSummary {
    pub mean_auc: f64,
    pub mean_cauc: f64,
    /// Standard error of `mean_auc` (sample standard deviation / sqrt(completed)).
    pub auc_std_error: f64,
    pub cauc_std_error: f64,
    pub trials_completed: usize,
    pub trials_skipped: usize,
}

pub fn monte_carlo(config: &RandomTrialConfig) -> Result<MonteCarloSummary> {
    let outcomes: Vec<Option<(f64, f64)>> = (0..config.trials)
        .into_par_iter()
        .map(|index| {
            let dataset = random_trial(config.n, &mut trial_rng(config.seed, index))
                .expect("random trial sizes are validated by the config");
            confidence::cauc(&dataset).ok().map(|r| (r.auc, r.cauc))
        })
        .collect();

    // Reduce sequentially in trial order so the sums do not depend on
    // thread scheduling.
    let completed: Vec<(f64, f64)> = outcomes.iter().flatten().copied().collect();
    if completed.is_empty() {
        return Err(Error::AllTrialsSkipped {
            trials: config.trials,
        });
    }
    let (mean_auc, auc_std_error) = mean_and_std_error(completed.iter().map(|c| c.0));
    let (mean_cauc, cauc_std_error) = mean_and_std_error(completed.iter().map(|c| c.1));
    Ok(MonteCarloSummary {
        mean_auc,
        mean_cauc,
        auc_std_error,
        cauc_std_error,
        trials_completed: completed.len(),
        trials_skipped: config.trials - completed.len(),
    })
}

fn mean_and_std_error(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let count = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / count;
    if count < 2.0 {
        return (mean, 0.0);
    }
    let variance = values.map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1.0);
    (mean, (variance / count).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScenarioFamily {
    /// Negatives at `p - ε - kδ`, positives at `p + kδ`: AUC = 1.
    PerfectAucOne,
    /// Positives at `p - ε - kδ`, negatives at `p + kδ`: AUC = 0.
    PerfectAucZero,
    /// As `PerfectAucOne` but the highest negative is raised to `p`, tying
    /// the lowest positive.
    SingleFlipMixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScenarioSpec {
    p: f64,
    epsilon: f64,
    delta: f64,
    ap_count: usize,
    an_count: usize,
    family: ScenarioFamily,
}

impl ScenarioSpec {
    pub fn new(
        family: ScenarioFamily,
        p: f64,
        epsilon: f64,
        delta: f64,
        ap_count: usize,
        an_count: usize,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidConfig(msg));
        if !(0.0..=1.0).contains(&p) {
            return invalid(format!("base probability {p} is outside [0, 1]"));
        }
        if !(epsilon > 0.0 && epsilon <= p) {
            return invalid(format!(
                "epsilon {epsilon} must satisfy 0 < epsilon <= p = {p}"
            ));
        }
        if p - epsilon == p {
            return invalid(format!("epsilon {epsilon} vanishes against p = {p}"));
        }
        if !(delta >= 0.0 && delta.is_finite()) {
            return invalid(format!("delta {delta} must be non-negative"));
        }
        if ap_count == 0 || an_count == 0 {
            return invalid("both class counts must be positive".into());
        }
        Ok(ScenarioSpec {
            p,
            epsilon,
            delta,
            ap_count,
            an_count,
            family,
        })
    }

    pub fn family(&self) -> ScenarioFamily {
        self.family
    }

    pub fn ap_count(&self) -> usize {
        self.ap_count
    }

    pub fn an_count(&self) -> usize {
        self.an_count
    }

    /// Sorted `(label, probability)` layout, negatives first.
    fn layout(&self) -> Vec<(Label, f64)> {
        let ScenarioSpec {
            p,
            epsilon,
            delta,
            ap_count,
            an_count,
            family,
        } = *self;
        let below = |count: usize| {
            (0..count)
                .rev()
                .map(move |k| p - epsilon - k as f64 * delta)
        };
        let above = |count: usize| (0..count).map(move |k| p + k as f64 * delta);
        let tag = |label: Label| move |v: f64| (label, v);

        match family {
            ScenarioFamily::PerfectAucOne => below(an_count)
                .map(tag(Label::Negative))
                .chain(above(ap_count).map(tag(Label::Positive)))
                .collect(),
            ScenarioFamily::PerfectAucZero => below(ap_count)
                .map(tag(Label::Positive))
                .chain(above(an_count).map(tag(Label::Negative)))
                .collect(),
            ScenarioFamily::SingleFlipMixed => below(an_count - 1)
                .chain([p])
                .map(tag(Label::Negative))
                .chain(above(ap_count).map(tag(Label::Positive)))
                .collect(),
        }
    }
}

pub fn scenario(spec: &ScenarioSpec) -> Result<LabeledDataset> {
    let samples = spec
        .layout()
        .into_iter()
        .enumerate()
        .map(|(index, (label, value))| {
            Sample::new(label, value).map_err(|_| Error::ProbabilityOverflow { index, value })
        })
        .collect::<Result<Vec<_>>>()?;
    LabeledDataset::new(samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roc::{auc, roc_curve, separation_class, Separation};

    fn spec(family: ScenarioFamily) -> ScenarioSpec {
        ScenarioSpec::new(family, 0.5, 0.1, 0.05, 4, 4).unwrap()
    }

    #[test]
    fn perfect_auc_one_layout() {
        let d = scenario(&spec(ScenarioFamily::PerfectAucOne)).unwrap();
        let probs: Vec<f64> = d.samples().iter().map(|s| s.probability()).collect();
        let expected = [0.25, 0.30, 0.35, 0.4, 0.5, 0.55, 0.6, 0.65];
        for (got, want) in probs.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
        assert_eq!(auc(&d).unwrap(), 1.0);
        assert_eq!(
            separation_class(&d.partition()).unwrap(),
            Separation::PerfectPositive
        );
    }

    #[test]
    fn perfect_auc_zero() {
        let d = scenario(&spec(ScenarioFamily::PerfectAucZero)).unwrap();
        assert_eq!(auc(&d).unwrap(), 0.0);
        assert_eq!(
            separation_class(&d.partition()).unwrap(),
            Separation::PerfectNegative
        );
    }

    #[test]
    fn single_flip_has_both_corner_points() {
        let d = scenario(&spec(ScenarioFamily::SingleFlipMixed)).unwrap();
        let a = auc(&d).unwrap();
        assert!(a > 0.0 && a < 1.0);
        let curve = roc_curve(&d).unwrap().coordinates();
        assert!(curve.contains(&(0.25, 1.0)));
        assert!(curve.contains(&(0.0, 0.75)));
        assert_eq!(a, 1.0 - 0.25 * 0.25 / 2.0);
    }

    #[test]
    fn spec_validation() {
        use ScenarioFamily::PerfectAucOne as F;
        assert!(ScenarioSpec::new(F, 0.5, 0.0, 0.1, 1, 1).is_err());
        assert!(ScenarioSpec::new(F, 0.5, 0.6, 0.1, 1, 1).is_err());
        assert!(ScenarioSpec::new(F, 0.5, 0.5, -0.1, 1, 1).is_err());
        assert!(ScenarioSpec::new(F, 0.5, 0.1, 0.1, 0, 1).is_err());
        assert!(ScenarioSpec::new(F, 1.5, 0.1, 0.1, 1, 1).is_err());
        assert!(ScenarioSpec::new(F, 0.5, 0.5, 0.0, 1, 1).is_ok());
    }

    #[test]
    fn overflow_is_reported() {
        let s = ScenarioSpec::new(ScenarioFamily::PerfectAucOne, 0.9, 0.1, 0.1, 4, 2).unwrap();
        assert!(matches!(
            scenario(&s),
            Err(Error::ProbabilityOverflow { index: 4, .. })
        ));
        let s = ScenarioSpec::new(ScenarioFamily::PerfectAucOne, 0.2, 0.1, 0.1, 1, 3).unwrap();
        assert!(matches!(
            scenario(&s),
            Err(Error::ProbabilityOverflow { index: 0, .. })
        ));
    }

    #[test]
    fn random_trial_is_reproducible() {
        let a = random_trial(10, &mut trial_rng(42, 3)).unwrap();
        let b = random_trial(10, &mut trial_rng(42, 3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n(), 10);
        let c = random_trial(10, &mut trial_rng(42, 4)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn config_validation() {
        assert!(RandomTrialConfig::new(1, 10, 0).is_err());
        assert!(RandomTrialConfig::new(2, 0, 0).is_err());
        assert!(RandomTrialConfig::new(2, 1, 0).is_ok());
    }

    #[test]
    fn single_class_trial_is_skipped() {
        let seed = (0..)
            .find(|&seed| {
                let d = random_trial(2, &mut trial_rng(seed, 0)).unwrap();
                d.positives() == 0 || d.negatives() == 0
            })
            .unwrap();
        let config = RandomTrialConfig::new(2, 1, seed).unwrap();
        assert_eq!(
            monte_carlo(&config),
            Err(Error::AllTrialsSkipped { trials: 1 })
        );
    }

    #[test]
    fn small_n_counts_skips() {
        let config = RandomTrialConfig::new(2, 10, 1).unwrap();
        let summary = monte_carlo(&config).unwrap();
        assert_eq!(summary.trials_completed + summary.trials_skipped, 10);
    }
}
