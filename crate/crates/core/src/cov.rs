//! Closed-form covariance kernels for the Gaussian fields, and their
//! node-covariance matrices.
//!
//! The round-sphere field has
//!
//!   G(z, z') = ln 1/|z−z'| − c(z) − c(z') + C,   c(z) = −½ ln(1+|z|²),
//!   C = −1/2,
//!
//! which is inversion symmetric, so the same expression works in either
//! chart; across charts the distance factor |z − 1/w'| is evaluated through
//! the pole-free form |z w' − 1| (the stray ln|w'| cancels against the c
//! term).
//!
//! The other models are the Dirichlet field on the unit disk,
//! G_D = ln(|1−z z̄'|/|z−z'|), the circle-pinned whole-sphere field
//! G_Φ = ln 1/|z−z'| − k(z) − k(z') with k = ln 1/|ζ| outside the disk, and
//! the Möbius transport G_ψ(z,z') = G(ψz, ψz').
//!
//! Node values represent cell averages, so the matrix diagonal replaces the
//! singular ln 1/|z−z'| by its exact same-cell average ln 1/h + κ₀, where κ₀
//! is minus the mean log-distance between two uniform points of a unit
//! square (computed once, semi-analytically, in [`ln_distance_unit_square`]).

use num_complex::Complex64;
use std::sync::OnceLock;
use thiserror::Error;

use crate::geometry::{Chart, ComplexPoint};
use crate::mobius::MobiusMap;

/// C_ĝ for the round metric.
pub const ROUND_C: f64 = -0.5;

/// c_ĝ(z) = ¼ ln ĝ(z) − ½ ln 2 = −½ ln(1+|z|²), in the native chart.
pub fn round_c(p: &ComplexPoint) -> f64 {
    let r2 = p.re * p.re + p.im * p.im;
    -0.5 * (1.0 + r2).ln()
}

/// ln of the chart-aware distance factor: ln|a − b| within one chart,
/// ln|a·b − 1| across charts. Returns −∞ for the same coordinates.
pub fn ln_chart_distance(p: &ComplexPoint, q: &ComplexPoint) -> f64 {
    let (a, b) = (p.coord(), q.coord());
    if p.chart == q.chart {
        (a - b).norm().ln()
    } else {
        (a * b - Complex64::new(1.0, 0.0)).norm().ln()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CovError {
    #[error("Green function evaluated at coincident points")]
    CoincidentPoints,
    #[error("{model} covariance is only defined on {domain}")]
    OutsideDomain {
        model: &'static str,
        domain: &'static str,
    },
}

/// Covariance kernels with closed-form evaluators.
#[derive(Debug, Clone)]
pub enum CovModel {
    /// Zero-average field in the round metric.
    Round,
    /// Dirichlet field on the chart-Z unit disk.
    DirichletDisk,
    /// Whole-sphere field pinned to zero average on the unit circle.
    CirclePinned,
    /// Field transported by a Möbius map: C(z,z') = G(ψz, ψz').
    PushForward(MobiusMap),
}

impl CovModel {
    pub fn id(&self) -> u8 {
        match self {
            CovModel::Round => 0,
            CovModel::DirichletDisk => 1,
            CovModel::CirclePinned => 2,
            CovModel::PushForward(_) => 3,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CovModel::Round => "round",
            CovModel::DirichletDisk => "dirichlet-disk",
            CovModel::CirclePinned => "circle-pinned",
            CovModel::PushForward(_) => "pushforward",
        }
    }

    fn check_domain(&self, p: &ComplexPoint) -> Result<(), CovError> {
        if let CovModel::DirichletDisk = self {
            if p.chart != Chart::Z || p.abs() >= 1.0 {
                return Err(CovError::OutsideDomain {
                    model: "dirichlet-disk",
                    domain: "the open chart-Z unit disk",
                });
            }
        }
        Ok(())
    }

    /// Closed-form covariance at distinct points.
    pub fn eval(&self, p: &ComplexPoint, q: &ComplexPoint) -> Result<f64, CovError> {
        self.check_domain(p)?;
        self.check_domain(q)?;
        let ln_d = ln_chart_distance(p, q);
        if !ln_d.is_finite() {
            return Err(CovError::CoincidentPoints);
        }
        Ok(self.eval_with_lndist(p, q, ln_d))
    }

    /// Covariance with the ln-distance part supplied by the caller; the cell
    /// averaging of the diagonal enters through this hook.
    fn eval_with_lndist(&self, p: &ComplexPoint, q: &ComplexPoint, ln_d: f64) -> f64 {
        match self {
            CovModel::Round => -ln_d - round_c(p) - round_c(q) + ROUND_C,
            CovModel::DirichletDisk => {
                let z = p.coord();
                let zp = q.coord();
                (Complex64::new(1.0, 0.0) - z * zp.conj()).norm().ln() - ln_d
            }
            CovModel::CirclePinned => -ln_d - circle_pin_k(p) - circle_pin_k(q),
            CovModel::PushForward(map) => {
                let a = map.apply(p);
                let b = map.apply(q);
                // ln|ψ(p)−ψ(q)| = ln-dist(p,q) + ½ ln(|Dψ_p||Dψ_q|) only holds
                // infinitesimally; at separated points evaluate directly.
                let ld = ln_chart_distance(&a, &b);
                CovModel::Round.eval_with_lndist(&a, &b, ld)
            }
        }
    }

    /// Node covariance entry for cells of side `h`: off-diagonal entries are
    /// midpoint values, the diagonal is the exact same-cell average of the
    /// log kernel plus the smooth remainder.
    pub fn node_cov(&self, p: &ComplexPoint, q: &ComplexPoint, h: f64, same_node: bool) -> f64 {
        if !same_node {
            let ln_d = ln_chart_distance(p, q);
            return self.eval_with_lndist(p, q, ln_d);
        }
        match self {
            CovModel::PushForward(map) => {
                // The image cell has effective side h·|Dψ|.
                let image = map.apply(p);
                let jac = map.jacobian_norm(p, image.chart);
                let ln_d = (h * jac).ln() - ln_distance_unit_square();
                CovModel::Round.eval_with_lndist(&image, &image, ln_d)
            }
            _ => {
                let ln_d = h.ln() - ln_distance_unit_square();
                self.eval_with_lndist(p, q, ln_d)
            }
        }
    }

    /// Dense symmetric node-covariance matrix in row-major storage.
    pub fn covariance_matrix(&self, points: &[ComplexPoint], h: f64) -> Vec<f64> {
        let n = points.len();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = self.node_cov(&points[i], &points[j], h, i == j);
                m[i * n + j] = v;
                m[j * n + i] = v;
            }
        }
        m
    }
}

/// k(ζ) = ln 1/|ζ| outside the unit disk, 0 inside, chart aware.
fn circle_pin_k(p: &ComplexPoint) -> f64 {
    match p.chart {
        Chart::Z => {
            let r = p.abs();
            if r >= 1.0 {
                -r.ln()
            } else {
                0.0
            }
        }
        // Chart-W coordinate w corresponds to the point 1/w with |1/w| ≥ 1
        // exactly when |w| ≤ 1.
        Chart::W => {
            let r = p.abs();
            if r <= 1.0 {
                r.ln()
            } else {
                0.0
            }
        }
    }
}

/// κ₀ = −E[ln|U−V|] for U, V independent uniform on a unit square.
///
/// In polar form the radial integral of (1 − r cosθ)(1 − r sinθ) r ln r has a
/// closed antiderivative, leaving one smooth θ integral done by
/// Gauss–Legendre. Cached after the first call.
pub fn ln_distance_unit_square() -> f64 {
    static KAPPA: OnceLock<f64> = OnceLock::new();
    *KAPPA.get_or_init(|| {
        // ∫₀^R rⁿ ln r dr = R^{n+1} (ln R − 1/(n+1)) / (n+1)
        fn radial(n: u32, r: f64) -> f64 {
            let k = (n + 1) as f64;
            r.powi(n as i32 + 1) * (r.ln() - 1.0 / k) / k
        }
        // E = 4 ∫∫_{[0,1]²} (1−x)(1−y) ln r dxdy, split at θ = π/4 where the
        // square boundary R(θ) switches sides; the two halves are equal.
        let gauss = crate::quadrature::gauss_legendre_64();
        let mut integral = 0.0;
        for &(t, wgt) in gauss.iter() {
            let theta = std::f64::consts::FRAC_PI_4 * 0.5 * (t + 1.0);
            let w = std::f64::consts::FRAC_PI_4 * 0.5 * wgt;
            let (s, c) = theta.sin_cos();
            let r_max = 1.0 / c;
            let f = radial(1, r_max) - (c + s) * radial(2, r_max) + c * s * radial(3, r_max);
            integral += w * f;
        }
        let e_ln = 8.0 * integral;
        -e_ln
    })
}
