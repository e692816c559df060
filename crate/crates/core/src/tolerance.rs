//! Numeric thresholds shared by the verification routines.

use serde::{Deserialize, Serialize};

/// Max-norm tolerance for exact algebraic identities (constructions are exact
/// up to rounding).
pub const IDENTITY_TOL: f64 = 1e-12;

/// Relative singular-value cutoff for kernel rank decisions.
pub const RANK_TOL: f64 = 1e-9;

/// A bilinear vector counts as null when `|Z.Z| <= NULL_TOL * |Z|^2`.
pub const NULL_TOL: f64 = 1e-9;

/// A bilinear vector counts as non-null when `|Z.Z| > NON_NULL_TOL * |Z|^2`.
pub const NON_NULL_TOL: f64 = 1e-6;

/// Field-equation residuals on genuine solutions.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Imaginary residue allowed on real bilinears, relative to the vector norm.
pub const REALITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub identity: f64,
    pub rank: f64,
    pub null: f64,
    pub non_null: f64,
    pub residual: f64,
    pub reality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            identity: IDENTITY_TOL,
            rank: RANK_TOL,
            null: NULL_TOL,
            non_null: NON_NULL_TOL,
            residual: RESIDUAL_TOL,
            reality: REALITY_TOL,
        }
    }
}
