//! Möbius transformations ψ(z) = (az+b)/(cz+d) of the sphere, normalized to
//! ad − bc = 1, plus the anti-holomorphic reflection θ(z) = 1/z̄ behind a
//! conjugation flag.
//!
//! Everything is evaluated chart-aware and pole-safe: applying ψ to a point
//! near its pole just lands near the origin of chart W, and the four
//! chart-to-chart derivative magnitudes all have stable closed forms.

use num_complex::Complex64;
use thiserror::Error;

use crate::geometry::{Chart, ComplexPoint};

#[derive(Debug, Error, PartialEq)]
pub enum MobiusError {
    #[error("Möbius coefficients are singular: ad − bc = {0}")]
    SingularDeterminant(Complex64),
    #[error("Möbius map applied to a non-finite point")]
    NonFinitePoint,
}

/// ψ(z) = (az+b)/(cz+d) with ad − bc = 1; `conjugate_input` marks an
/// anti-Möbius map acting on z̄ (the reflection θ(z) = 1/z̄ is one).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub conjugate_input: bool,
}

impl MobiusMap {
    /// Builds a map from raw coefficients, rescaling so ad − bc = 1.
    pub fn new(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    ) -> Result<MobiusMap, MobiusError> {
        let det = a * d - b * c;
        if det.norm() < 1e-14 {
            return Err(MobiusError::SingularDeterminant(det));
        }
        let s = det.sqrt().inv();
        Ok(MobiusMap {
            a: a * s,
            b: b * s,
            c: c * s,
            d: d * s,
            conjugate_input: false,
        })
    }

    pub fn identity() -> MobiusMap {
        MobiusMap::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        )
        .unwrap()
    }

    /// z ↦ e^{iθ} z.
    pub fn rotation(theta: f64) -> MobiusMap {
        MobiusMap::new(
            Complex64::from_polar(1.0, theta),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        )
        .unwrap()
    }

    /// z ↦ 1/z (the chart swap; holomorphic).
    pub fn inversion_z() -> MobiusMap {
        MobiusMap::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
        .unwrap()
    }

    /// The circle reflection θ(z) = 1/z̄ as an anti-Möbius map.
    pub fn reflection_theta() -> MobiusMap {
        let mut m = MobiusMap::inversion_z();
        m.conjugate_input = true;
        m
    }

    /// Disk automorphism z ↦ (z − q)/(1 − q̄ z) for |q| < 1.
    pub fn disk_automorphism(q: Complex64) -> MobiusMap {
        MobiusMap::new(
            Complex64::new(1.0, 0.0),
            -q,
            -q.conj(),
            Complex64::new(1.0, 0.0),
        )
        .unwrap()
    }

    /// Composition self ∘ other (apply `other` first).
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        // If self conjugates its input, the coefficients of `other` pass
        // through a conjugation: self(other(z)) = M_s(conj(M_o(z))) =
        // M_s(conj(M_o)(z̄)).
        let (oa, ob, oc, od) = if self.conjugate_input {
            (other.a.conj(), other.b.conj(), other.c.conj(), other.d.conj())
        } else {
            (other.a, other.b, other.c, other.d)
        };
        MobiusMap {
            a: self.a * oa + self.b * oc,
            b: self.a * ob + self.b * od,
            c: self.c * oa + self.d * oc,
            d: self.c * ob + self.d * od,
            conjugate_input: self.conjugate_input ^ other.conjugate_input,
        }
    }

    /// Inverse map. For ad − bc = 1 this is (d, −b, −c, a), conjugated when
    /// the map is anti-holomorphic.
    pub fn inverse(&self) -> MobiusMap {
        if self.conjugate_input {
            MobiusMap {
                a: self.d.conj(),
                b: -self.b.conj(),
                c: -self.c.conj(),
                d: self.a.conj(),
                conjugate_input: true,
            }
        } else {
            MobiusMap {
                a: self.d,
                b: -self.b,
                c: -self.c,
                d: self.a,
                conjugate_input: false,
            }
        }
    }

    fn input_coord(&self, p: &ComplexPoint) -> Complex64 {
        let t = p.coord();
        if self.conjugate_input {
            t.conj()
        } else {
            t
        }
    }

    /// Applies the map, choosing the output chart by magnitude so poles are
    /// never evaluated: ψ(pole) is simply the origin of chart W.
    pub fn apply(&self, p: &ComplexPoint) -> ComplexPoint {
        let t = self.input_coord(p);
        // In chart W the sphere point is 1/w, and ψ(1/w) = (a + bw)/(c + dw).
        let (num, den) = match p.chart {
            Chart::Z => (self.a * t + self.b, self.c * t + self.d),
            Chart::W => (self.a + self.b * t, self.c + self.d * t),
        };
        if num.norm() <= den.norm() {
            let z = num / den;
            ComplexPoint::new(z.re, z.im, Chart::Z)
        } else {
            let w = den / num;
            ComplexPoint::new(w.re, w.im, Chart::W)
        }
    }

    /// Complex derivative ψ'(z) at a chart-Z point, 1/(cz+d)² for the
    /// normalized coefficients.
    pub fn derivative_z(&self, z: Complex64) -> Complex64 {
        let t = if self.conjugate_input { z.conj() } else { z };
        let den = self.c * t + self.d;
        (den * den).inv()
    }

    /// |dψ/d(chart coord)| from the native chart of `p` to `out`: the four
    /// chart combinations each have a pole-free closed form (determinant 1):
    ///   Z→Z: |cz+d|⁻²   Z→W: |az+b|⁻²   W→Z: |c+dw|⁻²   W→W: |a+bw|⁻².
    pub fn jacobian_norm(&self, p: &ComplexPoint, out: Chart) -> f64 {
        let t = self.input_coord(p);
        let den = match (p.chart, out) {
            (Chart::Z, Chart::Z) => self.c * t + self.d,
            (Chart::Z, Chart::W) => self.a * t + self.b,
            (Chart::W, Chart::Z) => self.c + self.d * t,
            (Chart::W, Chart::W) => self.a + self.b * t,
        };
        den.norm_sqr().recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn assert_points_close(a: &ComplexPoint, b: &ComplexPoint) {
        let (za, zb) = if a.chart == b.chart {
            (a.coord(), b.coord())
        } else {
            (a.coord(), b.to_other().coord())
        };
        assert!((za - zb).norm() < 1e-12, "{a:?} vs {b:?}");
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let m = MobiusMap::new(
            Complex64::new(2.0, 1.0),
            Complex64::new(0.3, 0.0),
            Complex64::new(-0.5, 0.2),
            Complex64::new(1.0, -0.4),
        )
        .unwrap();
        let id = m.compose(&m.inverse());
        let p = ComplexPoint::z(0.3, -0.2);
        assert_points_close(&id.apply(&p), &p);

        let theta = MobiusMap::reflection_theta();
        let p2 = ComplexPoint::z(0.6, 0.1);
        assert_points_close(&theta.compose(&theta.inverse()).apply(&p2), &p2);
    }

    #[test]
    fn reflection_theta_is_one_over_conjugate() {
        let theta = MobiusMap::reflection_theta();
        let p = ComplexPoint::z(0.5, 0.5);
        let img = theta.apply(&p);
        // 1/z̄ for z = 0.5+0.5i is 1+i, which lives in chart W.
        assert_eq!(img.chart, Chart::W);
        let expect = p.coord().conj().inv();
        assert!((img.to_other().coord() - expect).norm() < 1e-12);
    }

    #[test]
    fn apply_at_pole_lands_at_chart_w_origin() {
        // ψ(z) = 1/(z - 0.5) has its pole at z = 0.5.
        let m = MobiusMap::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(-0.5, 0.0),
        )
        .unwrap();
        let img = m.apply(&ComplexPoint::z(0.5, 0.0));
        assert_eq!(img.chart, Chart::W);
        assert!(img.abs() < 1e-14);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let m = MobiusMap::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(-0.2, 0.1),
            Complex64::new(-0.2, -0.1),
            Complex64::new(1.0, 0.0),
        )
        .unwrap();
        let z = Complex64::new(0.3, 0.4);
        let h = 1e-6;
        let f = |t: Complex64| (m.a * t + m.b) / (m.c * t + m.d);
        let fd = (f(z + Complex64::new(h, 0.0)) - f(z - Complex64::new(h, 0.0)))
            / Complex64::new(2.0 * h, 0.0);
        let an = m.derivative_z(z);
        assert!((fd - an).norm() < 1e-8);
        assert_relative_eq!(
            m.jacobian_norm(&ComplexPoint::z(z.re, z.im), Chart::Z),
            an.norm(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn cross_chart_jacobians_chain_correctly() {
        // For any map, |Dψ|(Z→W) should equal |Dψ|(Z→Z) · |d(1/ζ)/dζ| at the
        // image: |ψ'(z)| / |ψ(z)|².
        let m = MobiusMap::disk_automorphism(Complex64::new(0.3, 0.0));
        let p = ComplexPoint::z(2.0, 1.5); // image will be large-ish
        let zz = m.jacobian_norm(&p, Chart::Z);
        let zw = m.jacobian_norm(&p, Chart::W);
        let image = (m.a * p.coord() + m.b) / (m.c * p.coord() + m.d);
        assert_relative_eq!(zw, zz / image.norm_sqr(), max_relative = 1e-12);
    }
}
