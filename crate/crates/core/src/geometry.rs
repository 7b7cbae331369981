//! Two-chart geometry of the Riemann sphere and conformal metric densities.
//!
//! The sphere is covered by the charts Z (coordinate z) and W (coordinate
//! w = 1/z). Points carry their native chart; conversion is the exact complex
//! inversion. Conformal metrics are stored as densities per unit Lebesgue
//! area of the native chart, so the round metric
//!
//!   ĝ(z) = 4 (1 + |z|²)⁻²
//!
//! takes the same functional form in both charts (it is inversion
//! symmetric), and the sphere area ∫ ĝ = 4π splits into two identical chart
//! integrals.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::mobius::MobiusMap;

/// Which coordinate patch a point lives in. W is the inverted chart w = 1/z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    Z,
    W,
}

impl Chart {
    pub fn other(self) -> Chart {
        match self {
            Chart::Z => Chart::W,
            Chart::W => Chart::Z,
        }
    }
}

/// A point on the sphere in chart coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
    pub chart: Chart,
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64, chart: Chart) -> Self {
        ComplexPoint { re, im, chart }
    }

    /// Point in chart Z with coordinate z.
    pub fn z(re: f64, im: f64) -> Self {
        ComplexPoint::new(re, im, Chart::Z)
    }

    /// Point in chart W with coordinate w (the sphere point 1/w).
    pub fn w(re: f64, im: f64) -> Self {
        ComplexPoint::new(re, im, Chart::W)
    }

    pub fn coord(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(&self) -> f64 {
        self.coord().norm()
    }

    /// The same sphere point expressed in the other chart (w = 1/z). Exact
    /// complex inversion; the origin of either chart maps to the point at
    /// infinity of the other (coordinate 0 of the other chart is ∞ here, so
    /// converting the origin produces an infinite coordinate — callers keep
    /// points with |coord| ≲ 1 in their native chart).
    pub fn to_other(&self) -> ComplexPoint {
        let inv = self.coord().inv();
        ComplexPoint::new(inv.re, inv.im, self.chart.other())
    }

    /// Chart-Z coordinate of this point (may overflow for w near 0).
    pub fn z_coord(&self) -> Complex64 {
        match self.chart {
            Chart::Z => self.coord(),
            Chart::W => self.coord().inv(),
        }
    }
}

/// Round-metric density 4(1+|ζ|²)⁻² in the native chart of `p`.
///
/// Inversion symmetry makes the expression chart independent: pulling
/// 4(1+|z|²)⁻² through z = 1/w with the |dz/dw|² = |w|⁻⁴ factor reproduces
/// 4(1+|w|²)⁻².
pub fn round_density(p: &ComplexPoint) -> f64 {
    let r2 = p.re * p.re + p.im * p.im;
    4.0 / ((1.0 + r2) * (1.0 + r2))
}

/// A conformal metric, stored as a density evaluator per unit chart area.
#[derive(Debug, Clone)]
pub enum MetricSpec {
    /// The round metric ĝ.
    Round,
    /// Pushforward g_ψ = |ψ'|² g∘ψ of a base metric by a Möbius map.
    PushForward { map: MobiusMap, base: Box<MetricSpec> },
}

impl MetricSpec {
    /// Density g(p) > 0 in the native chart of `p`.
    pub fn density(&self, p: &ComplexPoint) -> f64 {
        match self {
            MetricSpec::Round => round_density(p),
            MetricSpec::PushForward { map, base } => {
                let image = map.apply(p);
                let jac = map.jacobian_norm(p, image.chart);
                jac * jac * base.density(&image)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn chart_conversion_is_an_involution() {
        let pts = [
            ComplexPoint::z(0.3, -0.7),
            ComplexPoint::z(1.0, 0.0),
            ComplexPoint::w(0.2, 0.9),
            ComplexPoint::z(-0.95, 0.05),
        ];
        for p in pts {
            let back = p.to_other().to_other();
            assert_eq!(back.chart, p.chart);
            assert!((back.re - p.re).abs() < 1e-12, "{back:?} vs {p:?}");
            assert!((back.im - p.im).abs() < 1e-12);
        }
    }

    #[test]
    fn round_density_reference_values() {
        assert_relative_eq!(round_density(&ComplexPoint::z(0.0, 0.0)), 4.0);
        assert_relative_eq!(round_density(&ComplexPoint::z(1.0, 0.0)), 1.0);
        // Same sphere point in both charts carries the inversion Jacobian:
        // g_W(w) = g_Z(1/w) |w|⁻⁴.
        let z = ComplexPoint::z(0.4, -0.3);
        let w = z.to_other();
        let jac = z.abs().powi(4); // |dz/dw|² = |w|⁻⁴ = |z|⁴
        assert_relative_eq!(
            round_density(&w),
            round_density(&z) * jac,
            max_relative = 1e-12
        );
    }

    #[test]
    fn pushforward_by_rotation_preserves_round() {
        let rot = MobiusMap::rotation(0.77);
        let g = MetricSpec::PushForward {
            map: rot,
            base: Box::new(MetricSpec::Round),
        };
        for p in [
            ComplexPoint::z(0.0, 0.0),
            ComplexPoint::z(0.5, 0.25),
            ComplexPoint::w(0.6, -0.1),
        ] {
            assert_relative_eq!(
                g.density(&p),
                round_density(&p),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn pushforward_by_inversion_preserves_round() {
        // z ↦ 1/z: 4|z|⁻⁴(1+|z|⁻²)⁻² = 4(1+|z|²)⁻².
        let inv = MobiusMap::inversion_z();
        let g = MetricSpec::PushForward {
            map: inv,
            base: Box::new(MetricSpec::Round),
        };
        for p in [ComplexPoint::z(0.5, 0.25), ComplexPoint::z(-0.9, 0.4)] {
            assert_relative_eq!(g.density(&p), round_density(&p), max_relative = 1e-12);
        }
    }

    #[test]
    fn pushforward_by_identity_is_identity() {
        let g = MetricSpec::PushForward {
            map: MobiusMap::identity(),
            base: Box::new(MetricSpec::Round),
        };
        let p = ComplexPoint::z(0.3, 0.1);
        assert_relative_eq!(g.density(&p), round_density(&p), max_relative = 1e-14);
    }
}
