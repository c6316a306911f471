#![allow(dead_code)]

use confauc::{EpochRecord, LabeledDataset, Split};
use rand::Rng;

pub const TEN_MIXED: [(i64, f64); 10] = [
    (1, 0.803258838),
    (0, 0.517853202),
    (1, 0.639592674),
    (1, 0.303745995),
    (0, 0.699606458),
    (0, 0.318090495),
    (0, 0.277593543),
    (1, 0.421482502),
    (1, 0.556011119),
    (1, 0.548716153),
];

pub const TEN_GRID: [(i64, f64); 10] = [
    (0, 0.1),
    (0, 0.2),
    (0, 0.3),
    (0, 0.4),
    (1, 0.5),
    (1, 0.6),
    (1, 0.7),
    (1, 0.8),
    (0, 0.9),
    (1, 1.0),
];

pub fn dataset(pairs: impl IntoIterator<Item = (i64, f64)>) -> LabeledDataset {
    LabeledDataset::from_pairs(pairs).expect("valid fixture")
}

/// Random two-class dataset with `2..=max_n` samples. With `ties`, roughly a
/// third of the probabilities come from a coarse grid and some are copied
/// from earlier samples.
pub fn random_two_class<R: Rng>(rng: &mut R, max_n: usize, ties: bool) -> LabeledDataset {
    let n = rng.random_range(2..=max_n);
    let mut pairs: Vec<(i64, f64)> = Vec::with_capacity(n);
    for i in 0..n {
        let label = match i {
            0 => 1,
            1 => 0,
            _ => i64::from(rng.random_bool(0.5)),
        };
        let p = if ties && i > 0 && rng.random_bool(0.2) {
            pairs[rng.random_range(0..i)].1
        } else if ties && rng.random_bool(0.3) {
            f64::from(rng.random_range(0..=10u32)) / 10.0
        } else {
            rng.random::<f64>()
        };
        pairs.push((label, p));
    }
    dataset(pairs)
}

fn record(epoch: u64, split: Split, pairs: Vec<(i64, f64)>) -> EpochRecord {
    EpochRecord {
        epoch,
        split,
        dataset: dataset(pairs),
    }
}

/// Well separated validation data whose probabilities shrink toward 0.5 by
/// `scale` per epoch: AUC stays 1, margins narrow.
pub fn shrinking_log(epochs: u64, scale: f64) -> Vec<EpochRecord> {
    let base = [
        (1, 0.95),
        (1, 0.85),
        (1, 0.7),
        (0, 0.3),
        (0, 0.2),
        (0, 0.02),
    ];
    (0..epochs)
        .map(|e| {
            let s = scale.powi(e as i32);
            record(
                e,
                Split::Validation,
                base.iter()
                    .map(|&(y, p)| (y, 0.5 + s * (p - 0.5)))
                    .collect(),
            )
        })
        .collect()
}

fn repeat(label: i64, p: f64, count: usize) -> impl Iterator<Item = (i64, f64)> {
    std::iter::repeat_n((label, p), count)
}

/// Ten epochs where cAUC peaks at epoch 4 while AUC and BCE both favour
/// epoch 7.
///
/// * epoch 4: wide extremes (0.99 / 0.01) and one slight overlap
///   (AP 0.5 < AN 0.52): AUC 143/144, alpha + beta = 0.96.
/// * epoch 7: confident bulk (0.9 / 0.1) plus one negative at 0.89: AUC 1,
///   lowest BCE, but alpha + beta = 0.81.
/// * other epochs: bulk at `a` / `1 - a` with an overlapping pair.
pub fn peaks_log() -> Vec<EpochRecord> {
    let mut log = Vec::new();
    for e in 0..10u64 {
        let validation: Vec<(i64, f64)> = match e {
            4 => repeat(1, 0.8, 10)
                .chain([(1, 0.99), (1, 0.5)])
                .chain(repeat(0, 0.2, 10))
                .chain([(0, 0.01), (0, 0.52)])
                .collect(),
            7 => repeat(1, 0.9, 10)
                .chain(repeat(0, 0.1, 10))
                .chain([(0, 0.89)])
                .collect(),
            _ => {
                let a = 0.6 + 0.015 * e as f64;
                repeat(1, a, 10)
                    .chain([(1, 0.45)])
                    .chain(repeat(0, 1.0 - a, 10))
                    .chain([(0, 0.55)])
                    .collect()
            }
        };
        let train: Vec<(i64, f64)> = validation
            .iter()
            .map(|&(y, p)| {
                (
                    y,
                    if y == 1 {
                        (p + 0.05).min(1.0)
                    } else {
                        (p - 0.05).max(0.0)
                    },
                )
            })
            .collect();
        log.push(record(e, Split::Train, train));
        log.push(record(e, Split::Validation, validation.clone()));
        log.push(record(e, Split::Test, validation));
    }
    log
}
