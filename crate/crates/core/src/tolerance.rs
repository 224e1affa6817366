use serde::{Deserialize, Serialize};

/// Numerical thresholds used throughout the engine.
///
/// Every threshold is relative: it is multiplied by a norm or a scene scale
/// before comparison, so results do not depend on the units of the input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Singular values below `rank_cutoff * sigma_max` count as zero.
    pub rank_cutoff: f64,
    /// `|(X|X)| <= quadric * |X|^2` places `X` on the Lie quadric.
    pub quadric: f64,
    /// Relative discriminant at or below which a pencil has a double root.
    pub discriminant: f64,
    /// Largest relative 2x2 minor for which two vectors are projectively equal.
    pub projective: f64,
    /// Relative size below which a homogeneous coordinate is treated as zero
    /// (hyperplane and point-sphere classification, points at infinity).
    pub classify: f64,
    /// Relative distance at which two centers are considered coincident.
    pub coincident: f64,
    /// Default pass/fail threshold for verification reports.
    pub verify: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_cutoff: 1e-10,
            quadric: 1e-9,
            discriminant: 1e-12,
            projective: 1e-8,
            classify: 1e-12,
            coincident: 1e-9,
            verify: 1e-8,
        }
    }
}
