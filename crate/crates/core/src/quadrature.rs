//! Deterministic quadratures: sphere areas, and the double-integral
//! representation of the round Green function used as an independent oracle
//! for the closed form.
//!
//! The oracle assembles
//!
//!   G(z,z') = −ln|z−z'| + m(z) + m(z') − D₂,
//!   m(p)  = (1/4π) ∫ ln|p−u| ĝ(u) dA(u),
//!   D₂    = (1/4π)² ∫∫ ln|u−v| ĝ(u) ĝ(v) dA dA,
//!
//! entirely in chart-Z terms, integrating the |z| > 1 region through chart W
//! with the substituted kernels (ln|zw−1| − ln|w| and friends). All log
//! kernels, singular or not, go through one recursive cell integrator for an
//! affine argument, plus a translation-invariant table of exact-ish cell-pair
//! averages for the near-diagonal of D₂.

use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::geometry::{Chart, ComplexPoint, MetricSpec};
use crate::grid::{CellSelect, GridChart};

/// Gauss–Legendre nodes and weights on [−1, 1], computed by Newton iteration
/// on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-like initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0f64, x);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((-x, w));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

pub fn gauss_legendre_64() -> &'static [(f64, f64)] {
    static G: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    G.get_or_init(|| gauss_legendre(64))
}

/// Total area of a conformal metric: per-chart polar quadrature over the two
/// unit disks. Exact decomposition of the sphere, no cell jaggedness, so the
/// round metric integrates to 4π at machine-level accuracy.
pub fn sphere_area(metric: &MetricSpec) -> f64 {
    let gauss = gauss_legendre_64();
    let n_theta = 128;
    let mut total = 0.0;
    for chart in [Chart::Z, Chart::W] {
        for &(t, w_r) in gauss {
            let r = 0.5 * (t + 1.0);
            let w_r = 0.5 * w_r;
            let mut ring = 0.0;
            for k in 0..n_theta {
                let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / n_theta as f64;
                let p = ComplexPoint::new(r * theta.cos(), r * theta.sin(), chart);
                ring += metric.density(&p);
            }
            total += w_r * r * ring * 2.0 * std::f64::consts::PI / n_theta as f64;
        }
    }
    total
}

/// ∫_cell ln|aζ + b| f(ζ) dA over a square cell, with recursive subdivision
/// near the zero of the affine argument and an equal-area-disk core where the
/// zero falls inside the deepest subcell. `f` must be smooth.
fn cell_log_affine<F>(cx: f64, cy: f64, h: f64, a: Complex64, b: Complex64, f: &F, depth: u32) -> f64
where
    F: Fn(f64, f64) -> f64,
{
    let area = h * h;
    let ln_a = a.norm().ln();
    if a.norm() < 1e-300 {
        return (b.norm().ln()) * f(cx, cy) * area;
    }
    let zero = -b / a;
    let d = (Complex64::new(cx, cy) - zero).norm();
    if d > 1.5 * h {
        // Midpoint is fine away from the singularity; one 2×2 Gauss level in
        // a middle band suppresses curvature error.
        if d > 6.0 * h {
            return (a * Complex64::new(cx, cy) + b).norm().ln() * f(cx, cy) * area;
        }
        let g = 0.5 / 3.0f64.sqrt();
        let mut s = 0.0;
        for (sx, sy) in [(-g, -g), (-g, g), (g, -g), (g, g)] {
            let (x, y) = (cx + sx * h, cy + sy * h);
            s += (a * Complex64::new(x, y) + b).norm().ln() * f(x, y);
        }
        return 0.25 * s * area;
    }
    if depth == 0 {
        // ∫_{B_ρ} ln|ζ−ζ₀| dA = πρ²(ln ρ − ½) for the equal-area disk.
        let rho = (area / std::f64::consts::PI).sqrt();
        return f(cx, cy) * area * (ln_a + rho.ln() - 0.5);
    }
    let q = h / 4.0;
    let mut s = 0.0;
    for (sx, sy) in [(-q, -q), (-q, q), (q, -q), (q, q)] {
        s += cell_log_affine(cx + sx, cy + sy, h / 2.0, a, b, f, depth - 1);
    }
    s
}

fn round_density_xy(x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    4.0 / ((1.0 + r2) * (1.0 + r2))
}

/// m(p) = (1/4π) ∫_ℂ ln|p − u| ĝ(u) dA(u), assembled over both charts with
/// the chart-W substitution ln|p − 1/w| = ln|pw − 1| − ln|w|. `p` is a
/// chart-Z coordinate; for chart-W query points use [`oracle_m`].
fn m_integral(z: Complex64, oracle_cells: &GridChart, depth: u32) -> f64 {
    let h = oracle_cells.h;
    let one = Complex64::new(1.0, 0.0);
    let mut sum = 0.0;
    for cell in &oracle_cells.cells {
        // Chart Z block: ln|u − z| ĝ(u).
        sum += cell_log_affine(cell.x, cell.y, h, one, -z, &round_density_xy, depth);
        // Chart W block: (ln|zw − 1| − ln|w|) ĝ_W(w); the same cell layout
        // serves both charts.
        sum += cell_log_affine(cell.x, cell.y, h, z, -one, &round_density_xy, depth);
        sum -= cell_log_affine(cell.x, cell.y, h, one, Complex64::new(0.0, 0.0), &round_density_xy, depth);
    }
    sum / (4.0 * std::f64::consts::PI)
}

/// m for a point in either chart, in the chart-Z bookkeeping: for a chart-W
/// point w the identity ln|1/w − u| = ln|wu − 1| − ln|w| pulls out a −ln|w|.
fn oracle_m(p: &ComplexPoint, cells: &GridChart, depth: u32) -> f64 {
    match p.chart {
        Chart::Z => m_integral(p.coord(), cells, depth),
        Chart::W => {
            // ∫ln|1/w − u|ĝ = ∫ln|wu−1|ĝ − ln|w|·4π; the first term is
            // m_integral with the roles of the affine coefficients swapped,
            // which is exactly m_integral(z = 1/w̄-free form): reuse by noting
            // ln|wu−1| = ln|w| + ln|u − 1/w| is unstable; instead evaluate
            // directly with a = w.
            let w = p.coord();
            let one = Complex64::new(1.0, 0.0);
            let h = cells.h;
            let mut sum = 0.0;
            for cell in &cells.cells {
                // chart-Z block of u: ln|wu − 1| ĝ(u)
                sum += cell_log_affine(cell.x, cell.y, h, w, -one, &round_density_xy, depth);
                // chart-W block (u = 1/v): ln|w/v − 1| − ln... the sphere
                // distance factor between two chart-W coordinates w,v in
                // chart-Z terms: ln|1/w − 1/v| = ln|w − v| − ln|w| − ln|v|.
                sum += cell_log_affine(cell.x, cell.y, h, one, -w, &round_density_xy, depth);
                sum -= cell_log_affine(cell.x, cell.y, h, one, Complex64::new(0.0, 0.0), &round_density_xy, depth);
            }
            sum / (4.0 * std::f64::consts::PI) - w.norm().ln()
        }
    }
}

/// Mean of ln|u−v| for u, v uniform in two unit squares with center offset
/// (i, j), by the same recursive integrator (outer cell subdivided, inner
/// integral exact-ish). Scales to side h as value + ln h.
fn ln_pair_offset_unit(i: i32, j: i32) -> f64 {
    if i == 0 && j == 0 {
        return -crate::cov::ln_distance_unit_square();
    }
    let one = Complex64::new(1.0, 0.0);
    let unit = |_: f64, _: f64| 1.0;
    // Subdivide the outer unit cell 8×8 and integrate the inner log exactly.
    let m = 8;
    let mut sum = 0.0;
    for oy in 0..m {
        for ox in 0..m {
            let x = (ox as f64 + 0.5) / m as f64 - 0.5;
            let y = (oy as f64 + 0.5) / m as f64 - 0.5;
            let b = -Complex64::new(x + i as f64, y + j as f64);
            sum += cell_log_affine(i as f64, j as f64, 1.0, one, b, &unit, 5) / (m * m) as f64;
        }
    }
    sum
}

fn ln_pair_table() -> &'static HashMap<(i32, i32), f64> {
    static TABLE: OnceLock<HashMap<(i32, i32), f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = HashMap::new();
        let k = 4i32;
        for i in -k..=k {
            for j in -k..=k {
                t.insert((i, j), ln_pair_offset_unit(i, j));
            }
        }
        t
    })
}

/// D₂ = (1/4π)² ∫∫ ln|u−v| ĝĝ over the sphere, by cell sums on an n×n
/// two-chart layout. Cached per n.
fn d2_constant(n: u32) -> f64 {
    static CACHE: OnceLock<Mutex<HashMap<u32, f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return *v;
    }

    let grid = GridChart::new(Chart::Z, n, 1.0, CellSelect::SphereOwned);
    let h = grid.h;
    let area = h * h;
    let table = ln_pair_table();
    let k_near = 4i32;
    let cells = &grid.cells;
    let nc = cells.len();

    // Precompute ĝ-masses; the two charts have identical layouts, so one
    // pass covers the four chart-pair blocks by symmetry.
    let gmass: Vec<f64> = cells.iter().map(|c| round_density_xy(c.x, c.y) * area).collect();
    let total_mass: f64 = gmass.iter().sum::<f64>() * 2.0;

    // Block ZZ (and by inversion symmetry WW equals it): ln|u−v|.
    let mut zz = 0.0;
    for i in 0..nc {
        let ci = &cells[i];
        for j in 0..i {
            let cj = &cells[j];
            let di = ci.ix as i32 - cj.ix as i32;
            let dj = ci.iy as i32 - cj.iy as i32;
            let ln_d = if di.abs() <= k_near && dj.abs() <= k_near {
                table[&(di, dj)] + h.ln()
            } else {
                let (dx, dy) = (ci.x - cj.x, ci.y - cj.y);
                0.5 * (dx * dx + dy * dy).ln()
            };
            zz += 2.0 * gmass[i] * gmass[j] * ln_d;
        }
        zz += gmass[i] * gmass[i] * (h.ln() - crate::cov::ln_distance_unit_square());
    }

    // Block ZW: ln|u − 1/w| = ln|uw − 1| − ln|w|, u and w over the same
    // layout. |uw − 1| never vanishes on the owned cells (that needs
    // |u||w| ≥ 1 with both ≤ 1, i.e. the shared circle), so midpoint plus a
    // one-level refinement near the circle suffices; the −ln|w| part is a
    // separable singular single integral.
    let one = Complex64::new(1.0, 0.0);
    let unit = |_: f64, _: f64| 1.0;
    let mut zw_pair = 0.0;
    for i in 0..nc {
        let u = Complex64::new(cells[i].x, cells[i].y);
        let gi = gmass[i];
        for j in 0..nc {
            let w = Complex64::new(cells[j].x, cells[j].y);
            let v = (u * w - one).norm();
            let ln_d = if v > 3.0 * h {
                v.ln()
            } else {
                cell_log_affine(cells[j].x, cells[j].y, h, u, -one, &unit, 4) / area
            };
            zw_pair += gi * gmass[j] * ln_d;
        }
    }
    let mut ln_w_single = 0.0;
    for c in cells {
        ln_w_single += cell_log_affine(c.x, c.y, h, one, Complex64::new(0.0, 0.0), &round_density_xy, 5);
    }
    let half_mass: f64 = gmass.iter().sum();
    let _ = total_mass;
    // Four blocks: ZZ and (by inversion symmetry of layout and masses) the
    // ln|w−w'| part of WW give 2·zz; WW additionally carries −2 ln|w|
    // singles from ln|1/w − 1/w'| = ln|w−w'| − ln|w| − ln|w'|; ZW and WZ give
    // 2·(zw_pair − S·half_mass).
    let total = 2.0 * zz - 2.0 * ln_w_single * half_mass + 2.0 * (zw_pair - ln_w_single * half_mass);
    let d2 = total / (16.0 * std::f64::consts::PI * std::f64::consts::PI);

    cache.lock().unwrap().insert(n, d2);
    d2
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureOutcome {
    pub value: f64,
    pub est_error: f64,
}

/// The quadrature oracle for the round Green function at distinct points:
/// independent of the closed-form constants. Error is estimated from the
/// refinement ladder (depth and base-resolution sensitivity).
pub fn green_round_quadrature(p: &ComplexPoint, q: &ComplexPoint) -> QuadratureOutcome {
    let n = 96u32;
    let cells = GridChart::new(Chart::Z, n, 1.0, CellSelect::SphereOwned);
    let cells_coarse = GridChart::new(Chart::Z, 64, 1.0, CellSelect::SphereOwned);

    let ln_dist_z = |a: &ComplexPoint, b: &ComplexPoint| -> f64 {
        match (a.chart, b.chart) {
            (Chart::Z, Chart::Z) => (a.coord() - b.coord()).norm().ln(),
            (Chart::Z, Chart::W) => {
                (a.coord() * b.coord() - Complex64::new(1.0, 0.0)).norm().ln() - b.abs().ln()
            }
            (Chart::W, Chart::Z) => {
                (a.coord() * b.coord() - Complex64::new(1.0, 0.0)).norm().ln() - a.abs().ln()
            }
            (Chart::W, Chart::W) => {
                (a.coord() - b.coord()).norm().ln() - a.abs().ln() - b.abs().ln()
            }
        }
    };

    let m_p = oracle_m(p, &cells, 4);
    let m_q = oracle_m(q, &cells, 4);
    let m_p_c = oracle_m(p, &cells_coarse, 3);
    let m_q_c = oracle_m(q, &cells_coarse, 3);
    let d2 = d2_constant(n);
    let d2_c = d2_constant(64);

    let value = -ln_dist_z(p, q) + m_p + m_q - d2;
    let coarse = -ln_dist_z(p, q) + m_p_c + m_q_c - d2_c;
    QuadratureOutcome {
        value,
        est_error: (value - coarse).abs(),
    }
}
