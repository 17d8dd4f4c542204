//! Low-level planar geometry helpers: distances, intersections, hulls.

use serde::{Deserialize, Serialize};

/// A point of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(&self, other: Point) -> f64 {
        let (dx, dy) = (self.x - other.x, self.y - other.y);
        (dx * dx + dy * dy).sqrt()
    }

    pub fn dist_sq(&self, other: Point) -> f64 {
        let (dx, dy) = (self.x - other.x, self.y - other.y);
        dx * dx + dy * dy
    }

    pub fn lerp(&self, other: Point, t: f64) -> Point {
        Point::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Axis-aligned rectangle, `min` component-wise below `max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub fn empty() -> Self {
        Rect {
            min: Point::new(f64::INFINITY, f64::INFINITY),
            max: Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    pub fn of_points<'a>(pts: impl Iterator<Item = &'a Point>) -> Self {
        let mut r = Rect::empty();
        for p in pts {
            r.expand(*p);
        }
        r
    }

    pub fn expand(&mut self, p: Point) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn union(&self, other: &Rect) -> Rect {
        Rect {
            min: Point::new(self.min.x.min(other.min.x), self.min.y.min(other.min.y)),
            max: Point::new(self.max.x.max(other.max.x), self.max.y.max(other.max.y)),
        }
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn diag(&self) -> f64 {
        self.min.dist(self.max)
    }

    pub fn pad(&self, m: f64) -> Rect {
        Rect {
            min: Point::new(self.min.x - m, self.min.y - m),
            max: Point::new(self.max.x + m, self.max.y + m),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn contains_strict(&self, p: Point) -> bool {
        p.x > self.min.x && p.x < self.max.x && p.y > self.min.y && p.y < self.max.y
    }

    pub fn intersects(&self, other: &Rect) -> bool {
        self.min.x <= other.max.x
            && other.min.x <= self.max.x
            && self.min.y <= other.max.y
            && other.min.y <= self.max.y
    }
}

/// Parameter of the closest point to `p` on segment `a`-`b`, clamped to [0, 1].
pub fn closest_param_on_seg(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len_sq = dx * dx + dy * dy;
    if len_sq == 0.0 {
        return 0.0;
    }
    let t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len_sq;
    t.clamp(0.0, 1.0)
}

pub fn dist_point_seg(p: Point, a: Point, b: Point) -> f64 {
    let t = closest_param_on_seg(p, a, b);
    p.dist(a.lerp(b, t))
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// True when the open interiors of the two segments cross transversally.
pub fn segs_properly_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Minimum distance between two closed segments.
pub fn seg_seg_dist(a: Point, b: Point, c: Point, d: Point) -> f64 {
    if segs_properly_intersect(a, b, c, d) {
        return 0.0;
    }
    dist_point_seg(a, c, d)
        .min(dist_point_seg(b, c, d))
        .min(dist_point_seg(c, a, b))
        .min(dist_point_seg(d, a, b))
}

/// Length of the overlap of two collinear-within-`tol` segments; 0 when they
/// are not collinear or do not overlap.
pub fn collinear_overlap_len(a: Point, b: Point, c: Point, d: Point, tol: f64) -> f64 {
    let (ux, uy) = (b.x - a.x, b.y - a.y);
    let len = (ux * ux + uy * uy).sqrt();
    if len == 0.0 {
        return 0.0;
    }
    // Both endpoints of cd must sit on the supporting line of ab.
    let perp = |p: Point| ((p.x - a.x) * uy - (p.y - a.y) * ux).abs() / len;
    if perp(c) > tol || perp(d) > tol {
        return 0.0;
    }
    let proj = |p: Point| ((p.x - a.x) * ux + (p.y - a.y) * uy) / len;
    let (s0, s1) = (proj(c).min(proj(d)), proj(c).max(proj(d)));
    let lo = s0.max(0.0);
    let hi = s1.min(len);
    (hi - lo).max(0.0)
}

/// Parameters t in (0, 1) where segment `a`-`b` crosses the circle of radius
/// `r` about `center`, in increasing order.
pub fn seg_circle_params(a: Point, b: Point, center: Point, r: f64) -> Vec<f64> {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let (fx, fy) = (a.x - center.x, a.y - center.y);
    let qa = dx * dx + dy * dy;
    let qb = 2.0 * (fx * dx + fy * dy);
    let qc = fx * fx + fy * fy - r * r;
    let mut out = Vec::new();
    if qa == 0.0 {
        return out;
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc <= 0.0 {
        return out;
    }
    let sq = disc.sqrt();
    for t in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
        if t > 1e-12 && t < 1.0 - 1e-12 {
            out.push(t);
        }
    }
    out.sort_by(|p, q| p.partial_cmp(q).unwrap());
    out.dedup_by(|p, q| (*p - *q).abs() < 1e-12);
    out
}

/// Parameters t in (0, 1) where segment `a`-`b` crosses the boundary of `rect`.
pub fn seg_rect_params(a: Point, b: Point, rect: &Rect) -> Vec<f64> {
    let mut out = Vec::new();
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let mut push = |t: f64, p: Point| {
        // Keep only crossings that actually lie on the rectangle boundary.
        if t > 1e-12 && t < 1.0 - 1e-12 && rect.pad(1e-12).contains(p) {
            out.push(t);
        }
    };
    if dx != 0.0 {
        for xc in [rect.min.x, rect.max.x] {
            let t = (xc - a.x) / dx;
            push(t, a.lerp(b, t));
        }
    }
    if dy != 0.0 {
        for yc in [rect.min.y, rect.max.y] {
            let t = (yc - a.y) / dy;
            push(t, a.lerp(b, t));
        }
    }
    out.sort_by(|p, q| p.partial_cmp(q).unwrap());
    out.dedup_by(|p, q| (*p - *q).abs() < 1e-12);
    out
}

/// Andrew monotone-chain convex hull; returns hull vertices in CCW order.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * n);
    for &p in pts.iter() {
        while hull.len() >= 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Diameter (max pairwise distance) of a point set.
pub fn diameter(points: &[Point]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let hull = convex_hull(points);
    let mut best = 0.0f64;
    for i in 0..hull.len() {
        for j in (i + 1)..hull.len() {
            best = best.max(hull[i].dist(hull[j]));
        }
    }
    best
}

/// Uniform hash grid over segment indices, used to find candidate pairs of
/// nearby segments without quadratic scans.
pub struct SegmentGrid {
    cell: f64,
    map: std::collections::HashMap<(i64, i64), Vec<u32>>,
}

impl SegmentGrid {
    pub fn new(cell: f64) -> Self {
        SegmentGrid {
            cell: cell.max(1e-12),
            map: std::collections::HashMap::new(),
        }
    }

    fn key(&self, x: f64, y: f64) -> (i64, i64) {
        ((x / self.cell).floor() as i64, (y / self.cell).floor() as i64)
    }

    pub fn insert(&mut self, idx: u32, a: Point, b: Point) {
        let (k0, k1) = (self.key(a.x.min(b.x), a.y.min(b.y)), self.key(a.x.max(b.x), a.y.max(b.y)));
        for kx in k0.0..=k1.0 {
            for ky in k0.1..=k1.1 {
                self.map.entry((kx, ky)).or_default().push(idx);
            }
        }
    }

    /// Indices of segments whose cells overlap the query segment's cells,
    /// expanded by one ring. Sorted and deduplicated.
    pub fn query(&self, a: Point, b: Point) -> Vec<u32> {
        let (k0, k1) = (self.key(a.x.min(b.x), a.y.min(b.y)), self.key(a.x.max(b.x), a.y.max(b.y)));
        let mut out = Vec::new();
        for kx in (k0.0 - 1)..=(k1.0 + 1) {
            for ky in (k0.1 - 1)..=(k1.1 + 1) {
                if let Some(v) = self.map.get(&(kx, ky)) {
                    out.extend_from_slice(v);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}
