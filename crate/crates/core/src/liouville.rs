//! Coupling parameters of the Liouville theory and the admissibility gate
//! for vertex insertions.
//!
//! From γ ∈ (0,2) and μ > 0 everything else is derived: the background
//! charge Q = 2/γ + γ/2, the central charge c_L = 1 + 6Q², and the conformal
//! weight Δ_α = (α/2)(Q − α/2). A correlator ⟨∏ V_{α_i}(z_i)⟩ is finite and
//! nonzero exactly when Σα_i > 2Q and every α_i < Q, which forces at least
//! three insertions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::ComplexPoint;

/// Margin used by the admissibility gate on both bounds.
pub const SEIBERG_MARGIN: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("gamma must lie in (0, 2), got {0}")]
    GammaOutOfRange(f64),
    #[error("mu must be positive, got {0}")]
    MuOutOfRange(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LiouvilleParams {
    pub gamma: f64,
    pub mu: f64,
    pub q: f64,
    pub central_charge: f64,
}

impl LiouvilleParams {
    pub fn new(gamma: f64, mu: f64) -> Result<LiouvilleParams, ParamError> {
        if !(gamma > 0.0 && gamma < 2.0) {
            return Err(ParamError::GammaOutOfRange(gamma));
        }
        if !(mu > 0.0) {
            return Err(ParamError::MuOutOfRange(mu));
        }
        let q = 2.0 / gamma + gamma / 2.0;
        Ok(LiouvilleParams {
            gamma,
            mu,
            q,
            central_charge: 1.0 + 6.0 * q * q,
        })
    }

    /// Conformal weight Δ_α = (α/2)(Q − α/2).
    pub fn delta(&self, alpha: f64) -> f64 {
        0.5 * alpha * (self.q - 0.5 * alpha)
    }

    /// Zero-mode exponent s = (Σα − 2Q)/γ.
    pub fn s_exponent(&self, alphas: &[f64]) -> f64 {
        (alphas.iter().sum::<f64>() - 2.0 * self.q) / self.gamma
    }
}

/// A weighted vertex insertion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Insertion {
    pub point: ComplexPoint,
    pub alpha: f64,
}

impl Insertion {
    pub fn new(point: ComplexPoint, alpha: f64) -> Insertion {
        Insertion { point, alpha }
    }
}

/// One violated admissibility bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SeibergViolation {
    /// α_i ≥ Q − margin at insertion `index`.
    PointBound { index: usize, alpha: f64, q: f64 },
    /// Σα_i ≤ 2Q + margin.
    SumBound { sum: f64, two_q: f64 },
}

impl std::fmt::Display for SeibergViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeibergViolation::PointBound { index, alpha, q } => {
                write!(f, "insertion {index}: alpha = {alpha} violates alpha < Q = {q}")
            }
            SeibergViolation::SumBound { sum, two_q } => {
                write!(f, "sum of alphas = {sum} violates sum > 2Q = {two_q}")
            }
        }
    }
}

/// Checks the admissibility bounds with margin; violations are data, not
/// errors.
pub fn seiberg_check(params: &LiouvilleParams, alphas: &[f64]) -> Result<(), Vec<SeibergViolation>> {
    let mut violations = Vec::new();
    for (i, &a) in alphas.iter().enumerate() {
        if !(a < params.q - SEIBERG_MARGIN) {
            violations.push(SeibergViolation::PointBound {
                index: i,
                alpha: a,
                q: params.q,
            });
        }
    }
    let sum: f64 = alphas.iter().sum();
    if !(sum > 2.0 * params.q + SEIBERG_MARGIN) {
        violations.push(SeibergViolation::SumBound {
            sum,
            two_q: 2.0 * params.q,
        });
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}
