//! Rasterization of a curve complex and decomposition of its complement
//! into connected domains.
//!
//! Convention: 4-connectivity for complement flood fill, 8-adjacency for
//! frontier contact between free cells and K cells. This pairing keeps a
//! rasterized curve from leaking across diagonals.

use crate::error::{Error, Result};
use crate::geom::{dist_point_seg, Point, Rect};
use crate::set_model::CurveComplex;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};

/// How a cell is classified as belonging to K.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum RasterRule {
    /// Cell is K iff its center lies within h of some piece (default).
    #[default]
    CenterWithin,
    /// Cell is K iff its square touches some piece.
    CellCoverage,
}

/// Rasterized plane: bbox of the source complex padded by 4h, cells flagged
/// K or FREE.
#[derive(Debug, Clone)]
pub struct Grid {
    pub origin: Point,
    pub h: f64,
    pub cols: usize,
    pub rows: usize,
    k: Vec<bool>,
}

impl Grid {
    pub fn idx(&self, row: usize, col: usize) -> usize {
        row * self.cols + col
    }

    pub fn cell_center(&self, row: usize, col: usize) -> Point {
        Point::new(
            self.origin.x + (col as f64 + 0.5) * self.h,
            self.origin.y + (row as f64 + 0.5) * self.h,
        )
    }

    /// Cell containing the point, when inside the grid.
    pub fn cell_of(&self, p: Point) -> Option<(usize, usize)> {
        let c = ((p.x - self.origin.x) / self.h).floor();
        let r = ((p.y - self.origin.y) / self.h).floor();
        if r < 0.0 || c < 0.0 {
            return None;
        }
        let (r, c) = (r as usize, c as usize);
        if r >= self.rows || c >= self.cols {
            return None;
        }
        Some((r, c))
    }

    pub fn is_k(&self, row: usize, col: usize) -> bool {
        self.k[self.idx(row, col)]
    }

    pub fn k_cell_count(&self) -> usize {
        self.k.iter().filter(|&&b| b).count()
    }

    pub fn neighbors4(&self, row: usize, col: usize) -> impl Iterator<Item = (usize, usize)> {
        let (rows, cols) = (self.rows, self.cols);
        let deltas = [(-1i64, 0i64), (0, -1), (0, 1), (1, 0)];
        deltas.into_iter().filter_map(move |(dr, dc)| {
            let (r, c) = (row as i64 + dr, col as i64 + dc);
            (r >= 0 && c >= 0 && (r as usize) < rows && (c as usize) < cols)
                .then_some((r as usize, c as usize))
        })
    }

    pub fn neighbors8(&self, row: usize, col: usize) -> impl Iterator<Item = (usize, usize)> {
        let (rows, cols) = (self.rows, self.cols);
        let deltas = [
            (-1i64, -1i64),
            (-1, 0),
            (-1, 1),
            (0, -1),
            (0, 1),
            (1, -1),
            (1, 0),
            (1, 1),
        ];
        deltas.into_iter().filter_map(move |(dr, dc)| {
            let (r, c) = (row as i64 + dr, col as i64 + dc);
            (r >= 0 && c >= 0 && (r as usize) < rows && (c as usize) < cols)
                .then_some((r as usize, c as usize))
        })
    }
}

/// Labeled complement: per-FREE-cell domain id (0 marks K cells), domain
/// sizes, and the unbounded flag.
#[derive(Debug, Clone)]
pub struct ComplementDecomposition {
    pub labels: Vec<u32>,
    pub domains: Vec<DomainInfo>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DomainInfo {
    pub id: u32,
    pub cell_count: usize,
    pub unbounded: bool,
}

impl ComplementDecomposition {
    pub fn domain_count(&self) -> usize {
        self.domains.len()
    }

    pub fn label(&self, grid: &Grid, row: usize, col: usize) -> u32 {
        self.labels[grid.idx(row, col)]
    }

    pub fn unbounded_id(&self) -> u32 {
        self.domains
            .iter()
            .find(|d| d.unbounded)
            .map(|d| d.id)
            .expect("exactly one unbounded domain")
    }

    /// Smallest bounded domain id, when one exists.
    pub fn bounded_id(&self) -> Option<u32> {
        self.domains.iter().find(|d| !d.unbounded).map(|d| d.id)
    }
}

pub fn rasterize(complex: &CurveComplex, h: f64) -> Result<Grid> {
    rasterize_with(complex, h, RasterRule::CenterWithin)
}

pub fn rasterize_with(complex: &CurveComplex, h: f64, rule: RasterRule) -> Result<Grid> {
    if !(h > 0.0) {
        return Err(Error::ScaleError(format!("grid spacing must be positive, got {h}")));
    }
    if h <= complex.glue_tol() {
        return Err(Error::ScaleError(format!(
            "grid spacing {h} at or below gluing tolerance {}",
            complex.glue_tol()
        )));
    }
    let bbox = complex.bbox();
    let extents: Vec<f64> = [bbox.width(), bbox.height()]
        .into_iter()
        .filter(|&e| e > 0.0)
        .collect();
    let min_extent = extents
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if extents.is_empty() || h >= min_extent / 8.0 {
        return Err(Error::ScaleError(format!(
            "grid spacing {h} too coarse for bbox {} x {}",
            bbox.width(),
            bbox.height()
        )));
    }

    let origin = Point::new(bbox.min.x - 4.0 * h, bbox.min.y - 4.0 * h);
    let cols = ((bbox.width() + 8.0 * h) / h).ceil() as usize;
    let rows = ((bbox.height() + 8.0 * h) / h).ceil() as usize;
    let mut grid = Grid {
        origin,
        h,
        cols,
        rows,
        k: vec![false; rows * cols],
    };

    // Offset within which a cell counts as K, measured center-to-set.
    let reach = match rule {
        RasterRule::CenterWithin => h,
        // Square of side h touches the set iff the center is within the
        // square's half-diagonal of it (conservative circumscribed test).
        RasterRule::CellCoverage => h * std::f64::consts::FRAC_1_SQRT_2,
    };

    for pl in complex.pieces() {
        for (a, b) in pl.segments() {
            let seg_bb = Rect::of_points([a, b].iter()).pad(reach + h);
            let c0 = (((seg_bb.min.x - origin.x) / h).floor().max(0.0)) as usize;
            let r0 = (((seg_bb.min.y - origin.y) / h).floor().max(0.0)) as usize;
            let c1 = ((((seg_bb.max.x - origin.x) / h).ceil()) as usize).min(cols - 1);
            let r1 = ((((seg_bb.max.y - origin.y) / h).ceil()) as usize).min(rows - 1);
            for r in r0..=r1 {
                for c in c0..=c1 {
                    let i = r * cols + c;
                    if !grid.k[i] && dist_point_seg(grid.cell_center(r, c), a, b) <= reach {
                        grid.k[i] = true;
                    }
                }
            }
        }
    }
    Ok(grid)
}

/// 4-connected flood labeling of FREE cells in row-major discovery order.
/// The border ring is free by the padding invariant, so domain 1 is always
/// the unbounded one.
pub fn complement_components(grid: &Grid) -> ComplementDecomposition {
    let n = grid.rows * grid.cols;
    let mut labels = vec![0u32; n];
    let mut domains = Vec::new();
    let mut next = 1u32;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if grid.k[start] || labels[start] != 0 {
            continue;
        }
        let id = next;
        next += 1;
        let mut count = 0usize;
        let mut touches_border = false;
        labels[start] = id;
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            count += 1;
            let (r, c) = (i / grid.cols, i % grid.cols);
            if r == 0 || c == 0 || r == grid.rows - 1 || c == grid.cols - 1 {
                touches_border = true;
            }
            for (nr, nc) in grid.neighbors4(r, c) {
                let j = grid.idx(nr, nc);
                if !grid.k[j] && labels[j] == 0 {
                    labels[j] = id;
                    queue.push_back(j);
                }
            }
        }
        domains.push(DomainInfo {
            id,
            cell_count: count,
            unbounded: touches_border,
        });
    }
    debug_assert_eq!(domains.iter().filter(|d| d.unbounded).count(), 1);
    ComplementDecomposition { labels, domains }
}

/// All K-cells 8-adjacent to at least one cell of the domain.
pub fn frontier_cells(
    grid: &Grid,
    decomp: &ComplementDecomposition,
    domain_id: u32,
) -> Result<BTreeSet<(usize, usize)>> {
    if !decomp.domains.iter().any(|d| d.id == domain_id) {
        return Err(Error::UnknownDomain(domain_id));
    }
    let mut out = BTreeSet::new();
    for r in 0..grid.rows {
        for c in 0..grid.cols {
            if !grid.is_k(r, c) {
                continue;
            }
            if grid
                .neighbors8(r, c)
                .any(|(nr, nc)| decomp.labels[grid.idx(nr, nc)] == domain_id)
            {
                out.insert((r, c));
            }
        }
    }
    Ok(out)
}

/// PGM (P2) text dump: K cells 0, domain ids 1..N scaled to gray levels.
pub fn write_pgm(grid: &Grid, decomp: &ComplementDecomposition) -> String {
    let maxval = decomp.domains.len().max(1);
    let mut s = format!("P2\n{} {}\n{}\n", grid.cols, grid.rows, maxval);
    for r in (0..grid.rows).rev() {
        let mut row = Vec::with_capacity(grid.cols);
        for c in 0..grid.cols {
            row.push(decomp.labels[grid.idx(r, c)].to_string());
        }
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_model::{make_fixture, FixtureSpec};

    #[test]
    fn circle_annulus_cell_count_matches_distance_oracle() {
        let h = 0.02;
        let complex = make_fixture(FixtureSpec::Circle { radius: 1.0 }, 0.005).unwrap();
        let grid = rasterize(&complex, h).unwrap();
        let impl_count = grid.k_cell_count();
        // Oracle: count centers within h of the analytic circle |p| = 1.
        let mut oracle = 0usize;
        let mut boundary_margin = 0usize;
        let chord_err = 0.005f64;
        for r in 0..grid.rows {
            for c in 0..grid.cols {
                let d = (grid.cell_center(r, c).dist(Point::new(0.0, 0.0)) - 1.0).abs();
                if d <= h {
                    oracle += 1;
                }
                if (d - h).abs() <= 2.0 * chord_err {
                    boundary_margin += 1;
                }
            }
        }
        let diff = (impl_count as i64 - oracle as i64).unsigned_abs() as usize;
        assert!(
            diff <= boundary_margin,
            "impl {impl_count} oracle {oracle} margin {boundary_margin}"
        );
        assert!(impl_count > 0);
    }

    #[test]
    fn segment_strip_is_thin() {
        let complex = make_fixture(FixtureSpec::Segment { length: 1.0 }, 0.01).unwrap();
        let grid = rasterize(&complex, 0.02).unwrap();
        // Count K cells per column crossing the strip; expect 1..=3 rows.
        let mut max_thick = 0usize;
        for c in 0..grid.cols {
            let thick = (0..grid.rows).filter(|&r| grid.is_k(r, c)).count();
            max_thick = max_thick.max(thick);
        }
        assert!((1..=3).contains(&max_thick), "strip thickness {max_thick}");
    }

    #[test]
    fn coarse_h_rejected() {
        let complex = make_fixture(FixtureSpec::Circle { radius: 1.0 }, 0.01).unwrap();
        assert!(matches!(
            rasterize(&complex, 0.3),
            Err(Error::ScaleError(_))
        ));
    }

    #[test]
    fn h_at_glue_tol_rejected() {
        let complex = make_fixture(FixtureSpec::Circle { radius: 1.0 }, 0.01).unwrap();
        let tol = complex.glue_tol();
        assert!(matches!(rasterize(&complex, tol), Err(Error::ScaleError(_))));
    }

    #[test]
    fn circle_complement_has_two_domains() {
        let complex = make_fixture(FixtureSpec::Circle { radius: 1.0 }, 0.005).unwrap();
        let grid = rasterize(&complex, 0.02).unwrap();
        let decomp = complement_components(&grid);
        assert_eq!(decomp.domain_count(), 2);
        assert_eq!(decomp.domains.iter().filter(|d| d.unbounded).count(), 1);
        assert_eq!(decomp.unbounded_id(), 1);
    }

    #[test]
    fn figure_eight_has_three_domains_at_two_resolutions() {
        let complex = make_fixture(FixtureSpec::FigureEight { radius: 0.5 }, 0.005).unwrap();
        for h in [0.02, 0.01] {
            let grid = rasterize(&complex, h).unwrap();
            let decomp = complement_components(&grid);
            assert_eq!(decomp.domain_count(), 3, "h={h}");
        }
    }

    #[test]
    fn segment_does_not_separate() {
        let complex = make_fixture(FixtureSpec::Segment { length: 1.0 }, 0.01).unwrap();
        let grid = rasterize(&complex, 0.02).unwrap();
        assert_eq!(complement_components(&grid).domain_count(), 1);
    }

    #[test]
    fn circle_frontiers_cover_all_k_cells() {
        let complex = make_fixture(FixtureSpec::Circle { radius: 1.0 }, 0.005).unwrap();
        let grid = rasterize(&complex, 0.02).unwrap();
        let decomp = complement_components(&grid);
        let unb = decomp.unbounded_id();
        let bnd = decomp.bounded_id().unwrap();
        let fu = frontier_cells(&grid, &decomp, unb).unwrap();
        let fb = frontier_cells(&grid, &decomp, bnd).unwrap();
        let all: BTreeSet<(usize, usize)> = (0..grid.rows)
            .flat_map(|r| (0..grid.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| grid.is_k(r, c))
            .collect();
        let union: BTreeSet<_> = fu.union(&fb).copied().collect();
        assert_eq!(union, all, "frontier union misses K cells");
        // Inner ring lies inside the circle, outer ring outside.
        for &(r, c) in &fb {
            assert!(grid.cell_center(r, c).dist(Point::new(0.0, 0.0)) < 1.0 + 2.0 * grid.h);
        }
        for &(r, c) in &fu {
            assert!(grid.cell_center(r, c).dist(Point::new(0.0, 0.0)) > 1.0 - 2.0 * grid.h);
        }
    }

    #[test]
    fn dot_cells_belong_to_exactly_one_frontier() {
        let complex = make_fixture(FixtureSpec::CircleWithDots { radius: 1.0 }, 0.01).unwrap();
        let grid = rasterize(&complex, 0.02).unwrap();
        let decomp = complement_components(&grid);
        assert_eq!(decomp.domain_count(), 2);
        let fu = frontier_cells(&grid, &decomp, decomp.unbounded_id()).unwrap();
        let fb = frontier_cells(&grid, &decomp, decomp.bounded_id().unwrap()).unwrap();
        // Cells of the inner dot: near the origin, far from the circle.
        let inner_dot: Vec<(usize, usize)> = (0..grid.rows)
            .flat_map(|r| (0..grid.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| {
                grid.is_k(r, c) && grid.cell_center(r, c).dist(Point::new(0.0, 0.0)) < 0.2
            })
            .collect();
        assert!(!inner_dot.is_empty(), "inner dot rasterized away");
        for cell in &inner_dot {
            assert!(fb.contains(cell) && !fu.contains(cell));
        }
        let outer_dot: Vec<(usize, usize)> = (0..grid.rows)
            .flat_map(|r| (0..grid.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| {
                grid.is_k(r, c) && grid.cell_center(r, c).dist(Point::new(1.5, 0.0)) < 0.2
            })
            .collect();
        assert!(!outer_dot.is_empty());
        for cell in &outer_dot {
            assert!(fu.contains(cell) && !fb.contains(cell));
        }
    }

    #[test]
    fn unknown_domain_is_an_error() {
        let complex = make_fixture(FixtureSpec::Circle { radius: 1.0 }, 0.01).unwrap();
        let grid = rasterize(&complex, 0.02).unwrap();
        let decomp = complement_components(&grid);
        assert!(matches!(
            frontier_cells(&grid, &decomp, 99),
            Err(Error::UnknownDomain(99))
        ));
    }

    #[test]
    fn circle_domains_never_4_touch() {
        let complex = make_fixture(FixtureSpec::Circle { radius: 1.0 }, 0.005).unwrap();
        let grid = rasterize(&complex, 0.02).unwrap();
        let decomp = complement_components(&grid);
        for r in 0..grid.rows {
            for c in 0..grid.cols {
                let l = decomp.labels[grid.idx(r, c)];
                if l == 0 {
                    continue;
                }
                for (nr, nc) in grid.neighbors4(r, c) {
                    let m = decomp.labels[grid.idx(nr, nc)];
                    assert!(m == 0 || m == l, "domains {l} and {m} touch at 4-adjacency");
                }
            }
        }
    }

    #[test]
    fn halving_h_never_decreases_domain_count_when_resolved() {
        let cases: Vec<(FixtureSpec, f64)> = vec![
            (FixtureSpec::Circle { radius: 1.0 }, 0.02),
            (FixtureSpec::Segment { length: 1.0 }, 0.02),
            (FixtureSpec::FigureEight { radius: 0.5 }, 0.02),
            (FixtureSpec::Comb { n: 2 }, 0.02),
            (FixtureSpec::CombArc { n: 3 }, 0.02),
            (FixtureSpec::Posc { n: 4 }, 0.005),
        ];
        for (spec, h) in cases {
            let step = match spec {
                FixtureSpec::Posc { .. } => 0.0025,
                FixtureSpec::Comb { n } | FixtureSpec::CombArc { n } => {
                    0.25f64.powi(n as i32).min(0.01)
                }
                _ => 0.01,
            };
            let complex = make_fixture(spec, step).unwrap();
            let coarse = complement_components(&rasterize(&complex, h).unwrap()).domain_count();
            let fine = complement_components(&rasterize(&complex, h / 2.0).unwrap()).domain_count();
            assert!(fine >= coarse, "{spec}: {coarse} -> {fine}");
        }
    }

    #[test]
    fn pgm_dump_shape() {
        let complex = make_fixture(FixtureSpec::Circle { radius: 1.0 }, 0.01).unwrap();
        let grid = rasterize(&complex, 0.05).unwrap();
        let decomp = complement_components(&grid);
        let pgm = write_pgm(&grid, &decomp);
        let mut lines = pgm.lines();
        assert_eq!(lines.next(), Some("P2"));
        assert_eq!(
            lines.next(),
            Some(format!("{} {}", grid.cols, grid.rows).as_str())
        );
        assert_eq!(lines.next(), Some("2"));
        assert_eq!(pgm.lines().count(), 3 + grid.rows);
    }

    #[test]
    fn coverage_rule_marks_no_more_than_center_rule_misses() {
        let complex = make_fixture(FixtureSpec::Segment { length: 1.0 }, 0.01).unwrap();
        let a = rasterize_with(&complex, 0.02, RasterRule::CenterWithin).unwrap();
        let b = rasterize_with(&complex, 0.02, RasterRule::CellCoverage).unwrap();
        // Coverage reach is smaller, so its K set is a subset.
        for r in 0..a.rows {
            for c in 0..a.cols {
                if b.is_k(r, c) {
                    assert!(a.is_k(r, c));
                }
            }
        }
        assert!(b.k_cell_count() > 0);
    }
}
