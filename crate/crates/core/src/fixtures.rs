//! Reference vectors shared by unit tests.

/// Ten uniform-random predictions with a 6/4 class split.
pub(crate) const TEN_MIXED: [(i64, f64); 10] = [
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

/// Probabilities 0.1..=1.0 in steps of 0.1, labels interleaved.
pub(crate) const TEN_GRID: [(i64, f64); 10] = [
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
