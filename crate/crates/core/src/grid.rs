//! Regular cell grids on the coordinate charts and the two-chart sphere
//! partition.
//!
//! A [`GridChart`] is an n×n grid of square cells over [−extent, extent]² in
//! one chart; field values live at cell centers and represent cell averages.
//! The sphere grid pairs one chart-Z grid with one chart-W grid and assigns
//! each sphere region to exactly one chart: a cell is owned by chart Z when
//! its center has |z| ≤ 1, by chart W when |w| < 1 (i.e. |z| > 1). For even n
//! no center lands exactly on |z| = 1, so the ownership rule is a partition
//! and the sphere integral is the plain two-chart sum.

use serde::{Deserialize, Serialize};

use crate::geometry::{Chart, ComplexPoint};

/// One active cell: integer grid index plus center coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub ix: u32,
    pub iy: u32,
    pub x: f64,
    pub y: f64,
}

/// Which cells of the n×n square are active.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CellSelect {
    /// All n² cells.
    Square,
    /// Cells whose center lies in |ζ| ≤ r.
    Disk { r: f64 },
    /// Sphere-partition ownership: |ζ| ≤ 1 on chart Z, |ζ| < 1 on chart W.
    SphereOwned,
}

/// Regular grid on one chart.
#[derive(Debug, Clone)]
pub struct GridChart {
    pub chart: Chart,
    pub n: u32,
    pub extent: f64,
    /// Cell side; the spec calls this the mesh.
    pub h: f64,
    pub select: CellSelect,
    pub cells: Vec<Cell>,
}

impl GridChart {
    pub fn new(chart: Chart, n: u32, extent: f64, select: CellSelect) -> GridChart {
        assert!(n >= 2 && extent > 0.0);
        let h = 2.0 * extent / n as f64;
        let keep = |x: f64, y: f64| -> bool {
            let r2 = x * x + y * y;
            match select {
                CellSelect::Square => true,
                CellSelect::Disk { r } => r2 <= r * r,
                CellSelect::SphereOwned => match chart {
                    Chart::Z => r2 <= 1.0,
                    Chart::W => r2 < 1.0,
                },
            }
        };
        let mut cells = Vec::new();
        for iy in 0..n {
            let y = -extent + (iy as f64 + 0.5) * h;
            for ix in 0..n {
                let x = -extent + (ix as f64 + 0.5) * h;
                if keep(x, y) {
                    cells.push(Cell { ix, iy, x, y });
                }
            }
        }
        GridChart {
            chart,
            n,
            extent,
            h,
            select,
            cells,
        }
    }

    pub fn cell_area(&self) -> f64 {
        self.h * self.h
    }

    pub fn point(&self, cell: &Cell) -> ComplexPoint {
        ComplexPoint::new(cell.x, cell.y, self.chart)
    }

    /// Index into `cells` of the cell containing (x, y), if active.
    pub fn cell_at(&self, x: f64, y: f64) -> Option<usize> {
        let fx = (x + self.extent) / self.h;
        let fy = (y + self.extent) / self.h;
        if fx < 0.0 || fy < 0.0 {
            return None;
        }
        let (ix, iy) = (fx.floor() as u32, fy.floor() as u32);
        if ix >= self.n || iy >= self.n {
            return None;
        }
        // Active cells are stored row-major, so binary search works.
        self.cells
            .binary_search_by(|c| (c.iy, c.ix).cmp(&(iy, ix)))
            .ok()
    }
}

/// One grid per chart, chart Z cells first in the global node order.
#[derive(Debug, Clone)]
pub struct TwoChartGrid {
    pub charts: Vec<GridChart>,
}

impl TwoChartGrid {
    /// The default sphere partition: n×n cells per chart over [−1,1]².
    pub fn sphere(n: u32) -> TwoChartGrid {
        TwoChartGrid {
            charts: vec![
                GridChart::new(Chart::Z, n, 1.0, CellSelect::SphereOwned),
                GridChart::new(Chart::W, n, 1.0, CellSelect::SphereOwned),
            ],
        }
    }

    /// Single-chart local grid (all cells active).
    pub fn local_square(n: u32, extent: f64) -> TwoChartGrid {
        TwoChartGrid {
            charts: vec![GridChart::new(Chart::Z, n, extent, CellSelect::Square)],
        }
    }

    /// Single-chart disk grid: cells with center in |z| ≤ r over [−e, e]².
    pub fn local_disk(n: u32, extent: f64, r: f64) -> TwoChartGrid {
        TwoChartGrid {
            charts: vec![GridChart::new(Chart::Z, n, extent, CellSelect::Disk { r })],
        }
    }

    pub fn node_count(&self) -> usize {
        self.charts.iter().map(|c| c.cells.len()).sum()
    }

    /// Global node order: charts in storage order, cells row-major.
    pub fn points(&self) -> Vec<ComplexPoint> {
        let mut out = Vec::with_capacity(self.node_count());
        for ch in &self.charts {
            for cell in &ch.cells {
                out.push(ch.point(cell));
            }
        }
        out
    }

    /// (chart grid, cell, global node index) iterator.
    pub fn iter_cells(&self) -> impl Iterator<Item = (&GridChart, &Cell, usize)> {
        self.charts
            .iter()
            .flat_map(|ch| ch.cells.iter().map(move |c| (ch, c)))
            .enumerate()
            .map(|(i, (ch, c))| (ch, c, i))
    }

    /// Stable 64-bit content hash: layout, extents, and selects.
    pub fn hash(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64; // FNV-1a
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        for ch in &self.charts {
            eat(&[match ch.chart {
                Chart::Z => 0u8,
                Chart::W => 1u8,
            }]);
            eat(&ch.n.to_le_bytes());
            eat(&ch.extent.to_bits().to_le_bytes());
            let sel: u8 = match ch.select {
                CellSelect::Square => 0,
                CellSelect::Disk { .. } => 1,
                CellSelect::SphereOwned => 2,
            };
            eat(&[sel]);
            if let CellSelect::Disk { r } = ch.select {
                eat(&r.to_bits().to_le_bytes());
            }
        }
        h
    }
}

/// Integration / moment regions, membership by cell center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Region {
    /// Everything (the whole sphere for sphere grids).
    All,
    /// Chart-Z disk |z − c| ≤ r.
    Disk { cx: f64, cy: f64, r: f64 },
    /// The chart-Z unit disk.
    UnitDiskZ,
}

impl Region {
    pub fn contains(&self, chart: Chart, x: f64, y: f64) -> bool {
        match self {
            Region::All => true,
            Region::Disk { cx, cy, r } => {
                chart == Chart::Z && {
                    let (dx, dy) = (x - cx, y - cy);
                    dx * dx + dy * dy <= r * r
                }
            }
            Region::UnitDiskZ => chart == Chart::Z && x * x + y * y <= 1.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_partition_counts_and_ownership() {
        let g = TwoChartGrid::sphere(64);
        // Each chart owns roughly π/4 of its 64² cells.
        for ch in &g.charts {
            let frac = ch.cells.len() as f64 / 4096.0;
            assert!((frac - std::f64::consts::FRAC_PI_4).abs() < 0.01, "{frac}");
            for c in &ch.cells {
                assert!(c.x * c.x + c.y * c.y <= 1.0 + 1e-12);
            }
        }
        // Both charts have identical layouts (inversion symmetry of the
        // partition), and no cell center sits exactly on |z| = 1.
        assert_eq!(g.charts[0].cells.len(), g.charts[1].cells.len());
        for c in &g.charts[0].cells {
            assert!((c.x * c.x + c.y * c.y - 1.0).abs() > 1e-9);
        }
    }

    #[test]
    fn cell_lookup_agrees_with_centers() {
        let g = GridChart::new(Chart::Z, 16, 1.0, CellSelect::SphereOwned);
        for (i, c) in g.cells.iter().enumerate() {
            assert_eq!(g.cell_at(c.x, c.y), Some(i));
        }
        assert_eq!(g.cell_at(0.999, 0.999), None); // corner outside the disk
        assert_eq!(g.cell_at(-1.5, 0.0), None);
    }

    #[test]
    fn grid_hash_distinguishes_layouts() {
        let a = TwoChartGrid::sphere(64);
        let b = TwoChartGrid::sphere(48);
        let c = TwoChartGrid::local_square(64, 0.6);
        assert_ne!(a.hash(), b.hash());
        assert_ne!(a.hash(), c.hash());
        assert_eq!(a.hash(), TwoChartGrid::sphere(64).hash());
    }

    #[test]
    fn region_membership_by_center() {
        let r = Region::Disk {
            cx: 0.0,
            cy: 0.0,
            r: 0.5,
        };
        assert!(r.contains(Chart::Z, 0.3, 0.3));
        assert!(!r.contains(Chart::Z, 0.5, 0.3));
        assert!(!r.contains(Chart::W, 0.1, 0.1));
    }
}
