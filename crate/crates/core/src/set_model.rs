//! Geometric representation of compact plane sets as finite unions of
//! polylines, plus generators for the example-set family and clipping.

use crate::error::{Error, Result};
use crate::geom::{
    dist_point_seg, seg_circle_params, seg_rect_params, seg_seg_dist, segs_properly_intersect,
    collinear_overlap_len, Point, Rect, SegmentGrid,
};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Open disc U_eps(center).
#[derive(Debug, Clone, Copy)]
pub struct Disc {
    pub center: Point,
    pub radius: f64,
}

impl Disc {
    pub fn new(center: Point, radius: f64) -> Self {
        assert!(radius > 0.0, "disc radius must be positive");
        Disc { center, radius }
    }

    pub fn contains(&self, p: Point) -> bool {
        p.dist(self.center) < self.radius
    }
}

/// An ordered chain of at least two vertices. `simple` records whether the
/// realized curve is free of self-intersections.
#[derive(Debug, Clone)]
pub struct Polyline {
    vertices: Vec<Point>,
    simple: bool,
}

impl Polyline {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::DegeneratePiece);
        }
        for w in vertices.windows(2) {
            if w[0].dist(w[1]) == 0.0 {
                return Err(Error::DegeneratePiece);
            }
        }
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::DegeneratePiece);
        }
        let simple = check_simple(&vertices);
        Ok(Polyline { vertices, simple })
    }

    /// Construct without re-running the self-intersection scan. Used for
    /// sub-polylines of pieces whose flag is already known.
    pub(crate) fn trusted(vertices: Vec<Point>, simple: bool) -> Self {
        debug_assert!(vertices.len() >= 2);
        Polyline { vertices, simple }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    /// Closed means first and last vertex coincide exactly.
    pub fn is_closed(&self) -> bool {
        let f = self.vertices[0];
        let l = *self.vertices.last().unwrap();
        f.x == l.x && f.y == l.y
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn length(&self) -> f64 {
        self.segments().map(|(a, b)| a.dist(b)).sum()
    }

    pub fn bbox(&self) -> Rect {
        Rect::of_points(self.vertices.iter())
    }

    /// Point at arc length `t` from the start, clamped to the curve.
    pub fn point_at(&self, t: f64) -> Point {
        let mut rest = t.max(0.0);
        for (a, b) in self.segments() {
            let l = a.dist(b);
            if rest <= l {
                return a.lerp(b, rest / l);
            }
            rest -= l;
        }
        *self.vertices.last().unwrap()
    }

    pub fn dist_to(&self, p: Point) -> f64 {
        self.segments()
            .map(|(a, b)| dist_point_seg(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn reversed(&self) -> Polyline {
        let mut v = self.vertices.clone();
        v.reverse();
        Polyline::trusted(v, self.simple)
    }
}

/// Self-intersection scan. Non-adjacent segments must not touch; closed
/// chains treat the first and last segment as adjacent.
fn check_simple(verts: &[Point]) -> bool {
    let closed = verts[0] == *verts.last().unwrap() && verts.len() > 2;
    let nseg = verts.len() - 1;
    if nseg < 2 {
        return true;
    }
    let bbox = Rect::of_points(verts.iter());
    let tol = 1e-13 * bbox.diag().max(1.0);
    let max_len = verts
        .windows(2)
        .map(|w| w[0].dist(w[1]))
        .fold(0.0f64, f64::max);
    let mut grid = SegmentGrid::new(max_len.max(tol));
    for i in 0..nseg {
        grid.insert(i as u32, verts[i], verts[i + 1]);
    }
    let adjacent = |i: usize, j: usize| {
        let (lo, hi) = (i.min(j), i.max(j));
        hi - lo == 1 || (closed && lo == 0 && hi == nseg - 1)
    };
    for i in 0..nseg {
        for j in grid.query(verts[i], verts[i + 1]) {
            let j = j as usize;
            if j <= i || adjacent(i, j) {
                continue;
            }
            let (a, b, c, d) = (verts[i], verts[i + 1], verts[j], verts[j + 1]);
            if segs_properly_intersect(a, b, c, d)
                || seg_seg_dist(a, b, c, d) <= tol
                || collinear_overlap_len(a, b, c, d, tol) > tol
            {
                return false;
            }
        }
    }
    true
}

/// Result of projecting a point onto a complex.
#[derive(Debug, Clone, Copy)]
pub struct Projection {
    pub dist: f64,
    pub point: Point,
    pub piece: usize,
    /// Arc length along the piece at the closest point.
    pub t: f64,
}

/// A compact plane set as a finite union of polylines with a gluing
/// tolerance. Boundedness is inherited from the finite vertex list.
#[derive(Debug, Clone)]
pub struct CurveComplex {
    pieces: Vec<Polyline>,
    glue_tol: f64,
    bbox: Rect,
}

/// Stores the pieces unmodified; gluing is deferred to connectivity queries.
pub fn build_complex(pieces: Vec<Polyline>, glue_tol: f64) -> Result<CurveComplex> {
    if pieces.is_empty() {
        return Err(Error::EmptyComplex);
    }
    if pieces.iter().any(|p| p.vertices().len() < 2) {
        return Err(Error::DegeneratePiece);
    }
    if !(glue_tol > 0.0) {
        return Err(Error::ScaleError(format!(
            "glue tolerance must be positive, got {glue_tol}"
        )));
    }
    let bbox = pieces
        .iter()
        .map(|p| p.bbox())
        .fold(Rect::empty(), |acc, b| acc.union(&b));
    Ok(CurveComplex {
        pieces,
        glue_tol,
        bbox,
    })
}

impl CurveComplex {
    pub fn pieces(&self) -> &[Polyline] {
        &self.pieces
    }

    pub fn glue_tol(&self) -> f64 {
        self.glue_tol
    }

    pub fn bbox(&self) -> Rect {
        self.bbox
    }

    pub fn diag(&self) -> f64 {
        self.bbox.diag()
    }

    pub fn total_length(&self) -> f64 {
        self.pieces.iter().map(|p| p.length()).sum()
    }

    pub fn dist_to(&self, p: Point) -> f64 {
        self.project(p).dist
    }

    pub fn project(&self, p: Point) -> Projection {
        let mut best = Projection {
            dist: f64::INFINITY,
            point: p,
            piece: 0,
            t: 0.0,
        };
        for (pi, pl) in self.pieces.iter().enumerate() {
            let mut cum = 0.0;
            for (a, b) in pl.segments() {
                let l = a.dist(b);
                let t = crate::geom::closest_param_on_seg(p, a, b);
                let q = a.lerp(b, t);
                let d = p.dist(q);
                if d < best.dist {
                    best = Projection {
                        dist: d,
                        point: q,
                        piece: pi,
                        t: cum + t * l,
                    };
                }
                cum += l;
            }
        }
        best
    }

    pub fn to_json(&self) -> String {
        let file = ComplexFile {
            glue_tol: self.glue_tol,
            pieces: self
                .pieces
                .iter()
                .map(|p| p.vertices().iter().map(|v| [v.x, v.y]).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("complex serializes")
    }

    pub fn from_json(s: &str) -> Result<CurveComplex> {
        let file: ComplexFile = serde_json::from_str(s)
            .map_err(|e| Error::ScaleError(format!("bad complex file: {e}")))?;
        let mut pieces = Vec::with_capacity(file.pieces.len());
        for raw in file.pieces {
            let verts = raw.into_iter().map(|[x, y]| Point::new(x, y)).collect();
            pieces.push(Polyline::new(verts)?);
        }
        build_complex(pieces, file.glue_tol)
    }
}

/// On-disk curve-complex format.
#[derive(Serialize, Deserialize)]
struct ComplexFile {
    glue_tol: f64,
    pieces: Vec<Vec<[f64; 2]>>,
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

/// The generator family: a circle, a circle with one isolated dot per
/// complementary domain, the oscillating two-strand curve on [1/n, 1], the
/// dyadic comb (optionally capped by a semicircular arc), a figure eight,
/// and a bare segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixtureSpec {
    Circle { radius: f64 },
    CircleWithDots { radius: f64 },
    Posc { n: u32 },
    Comb { n: u32 },
    CombArc { n: u32 },
    FigureEight { radius: f64 },
    Segment { length: f64 },
}

impl FixtureSpec {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            FixtureSpec::Circle { radius } | FixtureSpec::CircleWithDots { radius } => radius > 0.0,
            // The oscillating family needs a nonempty domain [1/n, 1].
            FixtureSpec::Posc { n } => (2..=64).contains(&n),
            // Tooth count doubles per level; cap the family at 4096 teeth.
            FixtureSpec::Comb { n } | FixtureSpec::CombArc { n } => (1..=12).contains(&n),
            FixtureSpec::FigureEight { radius } => radius > 0.0,
            FixtureSpec::Segment { length } => length > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BadFixtureSpec(format!("{self}")))
        }
    }
}

impl fmt::Display for FixtureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FixtureSpec::Circle { radius } => write!(f, "circle:{radius}"),
            FixtureSpec::CircleWithDots { radius } => write!(f, "circle_with_dots:{radius}"),
            FixtureSpec::Posc { n } => write!(f, "posc:{n}"),
            FixtureSpec::Comb { n } => write!(f, "comb:{n}"),
            FixtureSpec::CombArc { n } => write!(f, "comb_arc:{n}"),
            FixtureSpec::FigureEight { radius } => write!(f, "figure_eight:{radius}"),
            FixtureSpec::Segment { length } => write!(f, "segment:{length}"),
        }
    }
}

impl FromStr for FixtureSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let real = |default: f64| -> Result<f64> {
            match param {
                None => Ok(default),
                Some(p) => p
                    .parse::<f64>()
                    .map_err(|_| Error::BadFixtureSpec(s.to_string())),
            }
        };
        let int = || -> Result<u32> {
            match param {
                None => Err(Error::BadFixtureSpec(s.to_string())),
                Some(p) => p
                    .parse::<u32>()
                    .map_err(|_| Error::BadFixtureSpec(s.to_string())),
            }
        };
        let spec = match name {
            "circle" => FixtureSpec::Circle { radius: real(1.0)? },
            "circle_with_dots" => FixtureSpec::CircleWithDots { radius: real(1.0)? },
            "posc" => FixtureSpec::Posc { n: int()? },
            "comb" => FixtureSpec::Comb { n: int()? },
            "comb_arc" => FixtureSpec::CombArc { n: int()? },
            "figure_eight" => FixtureSpec::FigureEight { radius: real(0.5)? },
            "segment" => FixtureSpec::Segment { length: real(1.0)? },
            _ => return Err(Error::BadFixtureSpec(s.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn default_glue_tol(pieces: &[Polyline]) -> f64 {
    let bbox = pieces
        .iter()
        .map(|p| p.bbox())
        .fold(Rect::empty(), |acc, b| acc.union(&b));
    1e-6 * bbox.diag().max(1e-9)
}

/// Closed circle chain with chord length about `step`; start vertex at
/// `start_angle` is copied exactly to the end.
fn circle_polyline(center: Point, r: f64, step: f64, start_angle: f64) -> Polyline {
    let nseg = ((2.0 * PI * r / step).ceil() as usize).max(8);
    let mut verts = Vec::with_capacity(nseg + 1);
    for k in 0..nseg {
        let a = start_angle + 2.0 * PI * (k as f64) / (nseg as f64);
        verts.push(Point::new(center.x + r * a.cos(), center.y + r * a.sin()));
    }
    verts.push(verts[0]);
    Polyline::trusted(verts, true)
}

/// Adaptive sample of the graph of `f` on [x0, x1]: chords no longer than
/// `step`, mid-point deviation below `tol`, and no interval spanning more
/// than a quarter turn of the sin(pi/x) phase.
fn sample_graph<F: Fn(f64) -> f64>(f: &F, x0: f64, x1: f64, step: f64, tol: f64) -> Vec<Point> {
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        x0: f64,
        p0: Point,
        x1: f64,
        p1: Point,
        step: f64,
        tol: f64,
        out: &mut Vec<Point>,
        depth: u32,
    ) {
        let phase_ok = (x1 - x0) <= 0.5 * x0 * x1;
        let xm = 0.5 * (x0 + x1);
        let pm = Point::new(xm, f(xm));
        let flat = dist_point_seg(pm, p0, p1) <= tol;
        let short = p0.dist(p1) <= step;
        if (phase_ok && flat && short) || depth > 40 || (x1 - x0) < 1e-12 {
            out.push(p1);
            return;
        }
        rec(f, x0, p0, xm, pm, step, tol, out, depth + 1);
        rec(f, xm, pm, x1, p1, step, tol, out, depth + 1);
    }
    let p0 = Point::new(x0, f(x0));
    let p1 = Point::new(x1, f(x1));
    let mut out = vec![p0];
    rec(f, x0, p0, x1, p1, step, tol, &mut out, 0);
    out
}

/// Tooth abscissas of the depth-n dyadic comb on [0, 1], sorted.
pub fn comb_teeth(n: u32) -> Vec<f64> {
    fn rec(level: u32, a: f64, b: f64, out: &mut Vec<f64>) {
        if level == 1 {
            out.push(a);
            out.push(b);
        } else {
            let l = (b - a) / 4.0;
            rec(level - 1, a, a + l, out);
            rec(level - 1, b - l, b, out);
        }
    }
    let mut out = Vec::with_capacity(1 << n);
    rec(n, 0.0, 1.0, &mut out);
    out
}

/// Generation of each gap between consecutive teeth (in-order): the middle
/// gap is generation 1, and each recursion level adds one.
pub fn comb_gap_generations(n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![1];
    }
    let sub: Vec<u32> = comb_gap_generations(n - 1).iter().map(|g| g + 1).collect();
    let mut out = sub.clone();
    out.push(1);
    out.extend_from_slice(&sub);
    out
}

fn make_comb_pieces(n: u32) -> Vec<Polyline> {
    let teeth = comb_teeth(n);
    let gens = comb_gap_generations(n);
    let mut pieces = Vec::new();
    for &c in &teeth {
        pieces.push(Polyline::trusted(
            vec![Point::new(c, 0.0), Point::new(c, 1.0)],
            true,
        ));
    }
    for (i, &g) in gens.iter().enumerate() {
        let (a, b) = (teeth[i], teeth[i + 1]);
        // Odd generations close at the bottom, even at the top.
        let y = if g % 2 == 1 { 0.0 } else { 1.0 };
        pieces.push(Polyline::trusted(
            vec![Point::new(a, y), Point::new(b, y)],
            true,
        ));
    }
    pieces
}

/// Semicircle over [0, 1] bulging upward from (1, 1) to (0, 1).
fn comb_cap_arc(step: f64) -> Polyline {
    let r = 0.5;
    let c = Point::new(0.5, 1.0);
    let nseg = ((PI * r / step).ceil() as usize).max(8);
    let mut verts = Vec::with_capacity(nseg + 1);
    verts.push(Point::new(1.0, 1.0));
    for k in 1..nseg {
        let a = PI * (k as f64) / (nseg as f64);
        verts.push(Point::new(c.x + r * a.cos(), c.y + r * a.sin()));
    }
    verts.push(Point::new(0.0, 1.0));
    Polyline::trusted(verts, true)
}

/// Builds the named fixture, sampling analytic arcs so that the chord error
/// stays below `sampling_step`.
pub fn make_fixture(spec: FixtureSpec, sampling_step: f64) -> Result<CurveComplex> {
    spec.validate()?;
    if !(sampling_step > 0.0) {
        return Err(Error::ScaleError(format!(
            "sampling step must be positive, got {sampling_step}"
        )));
    }
    let step = sampling_step;
    let pieces: Vec<Polyline> = match spec {
        FixtureSpec::Circle { radius } => {
            if step >= radius {
                return Err(Error::UnresolvableScale {
                    what: spec.to_string(),
                    step,
                    feature: radius,
                });
            }
            vec![circle_polyline(Point::new(0.0, 0.0), radius, step, 0.0)]
        }
        FixtureSpec::CircleWithDots { radius } => {
            if step >= radius {
                return Err(Error::UnresolvableScale {
                    what: spec.to_string(),
                    step,
                    feature: radius,
                });
            }
            let dot = |c: Point| {
                Polyline::trusted(
                    vec![
                        Point::new(c.x - step / 2.0, c.y),
                        Point::new(c.x + step / 2.0, c.y),
                    ],
                    true,
                )
            };
            vec![
                circle_polyline(Point::new(0.0, 0.0), radius, step, 0.0),
                dot(Point::new(0.0, 0.0)),
                dot(Point::new(1.5 * radius, 0.0)),
            ]
        }
        FixtureSpec::Posc { n } => {
            let nf = n as f64;
            // Finest feature: half-period of sin(pi/x) next to x = 1/n.
            let feature = 1.0 / (2.0 * nf * (nf + 1.0));
            if step > feature {
                return Err(Error::UnresolvableScale {
                    what: spec.to_string(),
                    step,
                    feature,
                });
            }
            let f2 = |x: f64| (PI / x).sin() - (PI * x).sin();
            let f3 = |x: f64| (PI / x).sin() + (PI * x).sin();
            let x0 = 1.0 / nf;
            let tol = step.min(1.0 / (16.0 * nf * nf));
            let k2 = Polyline::new(sample_graph(&f2, x0, 1.0, step, tol))?;
            let k3 = Polyline::new(sample_graph(&f3, x0, 1.0, step, tol))?;
            let closing = Polyline::trusted(
                vec![Point::new(x0, f2(x0)), Point::new(x0, f3(x0))],
                true,
            );
            vec![k2, k3, closing]
        }
        FixtureSpec::Comb { n } | FixtureSpec::CombArc { n } => {
            let feature = 0.25f64.powi(n as i32);
            if step > feature {
                return Err(Error::UnresolvableScale {
                    what: spec.to_string(),
                    step,
                    feature,
                });
            }
            let mut pieces = make_comb_pieces(n);
            if matches!(spec, FixtureSpec::CombArc { .. }) {
                pieces.push(comb_cap_arc(step));
            }
            pieces
        }
        FixtureSpec::FigureEight { radius } => {
            if step >= radius {
                return Err(Error::UnresolvableScale {
                    what: spec.to_string(),
                    step,
                    feature: radius,
                });
            }
            let mut right = circle_polyline(Point::new(radius, 0.0), radius, step, PI);
            let mut left = circle_polyline(Point::new(-radius, 0.0), radius, step, 0.0);
            // Snap the tangency vertex of both loops to the exact origin.
            for pl in [&mut right, &mut left] {
                let last = pl.vertices.len() - 1;
                pl.vertices[0] = Point::new(0.0, 0.0);
                pl.vertices[last] = Point::new(0.0, 0.0);
            }
            vec![right, left]
        }
        FixtureSpec::Segment { length } => vec![Polyline::trusted(
            vec![Point::new(0.0, 0.0), Point::new(length, 0.0)],
            true,
        )],
    };
    let tol = default_glue_tol(&pieces);
    build_complex(pieces, tol)
}

// ---------------------------------------------------------------------------
// Clipping
// ---------------------------------------------------------------------------

/// A maximal sub-polyline of a source piece inside a clip region, together
/// with its arc-length interval on that piece. `wrapped` marks the seam-run
/// of a closed piece, whose interval is [t0, len] followed by [0, t1].
#[derive(Debug, Clone)]
pub struct ClippedPiece {
    pub pl: Polyline,
    pub src: usize,
    pub t0: f64,
    pub t1: f64,
    pub wrapped: bool,
}

impl ClippedPiece {
    /// Whether arc-length position `t` (on the source piece of total length
    /// `src_len`) falls inside this clip interval, with slack `eps`.
    pub fn covers(&self, t: f64, src_len: f64, eps: f64) -> bool {
        if self.wrapped {
            t >= self.t0 - eps || t <= self.t1 + eps
        } else {
            let _ = src_len;
            t >= self.t0 - eps && t <= self.t1 + eps
        }
    }
}

fn clip_piece_runs(
    pl: &Polyline,
    src: usize,
    inside: &dyn Fn(Point) -> bool,
    crossings: &dyn Fn(Point, Point) -> Vec<f64>,
) -> Vec<ClippedPiece> {
    let mut runs: Vec<(Vec<Point>, f64, f64)> = Vec::new();
    let mut current: Option<(Vec<Point>, f64)> = None;
    let mut cum = 0.0;
    let total: f64 = pl.length();

    let close = |cur: &mut Option<(Vec<Point>, f64)>, t_end: f64, runs: &mut Vec<(Vec<Point>, f64, f64)>| {
        if let Some((pts, t0)) = cur.take() {
            if pts.len() >= 2 {
                runs.push((pts, t0, t_end));
            }
        }
    };

    for (a, b) in pl.segments() {
        let seg_len = a.dist(b);
        let mut bounds = vec![0.0];
        bounds.extend(crossings(a, b));
        bounds.push(1.0);
        for w in bounds.windows(2) {
            let (ta, tb) = (w[0], w[1]);
            if tb - ta < 1e-15 {
                continue;
            }
            let mid = a.lerp(b, 0.5 * (ta + tb));
            let p0 = if ta == 0.0 { a } else { a.lerp(b, ta) };
            let p1 = if tb == 1.0 { b } else { a.lerp(b, tb) };
            if inside(mid) {
                match current {
                    None => current = Some((vec![p0, p1], cum + ta * seg_len)),
                    Some((ref mut pts, _)) => {
                        if pts.last().map(|q| q.dist(p0) > 1e-12).unwrap_or(true) {
                            pts.push(p0);
                        }
                        if pts.last().map(|q| q.dist(p1) > 1e-12).unwrap_or(true) {
                            pts.push(p1);
                        }
                    }
                }
            } else {
                close(&mut current, cum + ta * seg_len, &mut runs);
            }
        }
        cum += seg_len;
    }
    close(&mut current, total, &mut runs);

    // A closed piece whose start lies inside produces a split seam run; glue
    // the two halves back into one contiguous (wrapped) interval.
    let mut wrapped_flags = vec![false; runs.len()];
    if pl.is_closed() && runs.len() >= 2 {
        let first_at_start = runs[0].1 <= 1e-12;
        let last_at_end = (runs[runs.len() - 1].2 - total).abs() <= 1e-12;
        if first_at_start && last_at_end {
            let (first_pts, first_t0, first_t1) = runs.remove(0);
            let _ = first_t0;
            let last = runs.len() - 1;
            let (ref mut pts, _, _) = runs[last];
            for p in first_pts {
                if pts.last().map(|q| q.dist(p) > 1e-12).unwrap_or(true) {
                    pts.push(p);
                }
            }
            runs[last].2 = first_t1;
            wrapped_flags = vec![false; runs.len()];
            wrapped_flags[last] = true;
        }
    }

    runs.into_iter()
        .zip(wrapped_flags)
        .filter(|((pts, _, _), _)| pts.len() >= 2)
        .map(|((pts, t0, t1), wrapped)| {
            let sub = if pl.is_simple() {
                Polyline::trusted(pts, true)
            } else {
                Polyline::new(pts).expect("clipped run has >= 2 distinct vertices")
            };
            ClippedPiece {
                pl: sub,
                src,
                t0,
                t1,
                wrapped,
            }
        })
        .collect()
}

/// Maximal sub-polylines of every piece lying inside the open disc;
/// segment-circle intersection points are inserted as new vertices.
pub fn clip_to_disc(complex: &CurveComplex, disc: &Disc) -> Vec<ClippedPiece> {
    let inside = |p: Point| disc.contains(p);
    let crossings = |a: Point, b: Point| seg_circle_params(a, b, disc.center, disc.radius);
    let mut out = Vec::new();
    for (i, pl) in complex.pieces().iter().enumerate() {
        // Cheap reject: piece bbox entirely outside the disc's bbox.
        let bb = pl.bbox();
        let disc_bb = Rect {
            min: Point::new(disc.center.x - disc.radius, disc.center.y - disc.radius),
            max: Point::new(disc.center.x + disc.radius, disc.center.y + disc.radius),
        };
        if !bb.intersects(&disc_bb) {
            continue;
        }
        out.extend(clip_piece_runs(pl, i, &inside, &crossings));
    }
    out
}

/// Maximal sub-polylines inside the open rectangle.
pub fn clip_to_rect(complex: &CurveComplex, rect: &Rect) -> Vec<ClippedPiece> {
    let inside = |p: Point| rect.contains_strict(p);
    let crossings = |a: Point, b: Point| seg_rect_params(a, b, rect);
    let mut out = Vec::new();
    for (i, pl) in complex.pieces().iter().enumerate() {
        if !pl.bbox().intersects(rect) {
            continue;
        }
        out.extend(clip_piece_runs(pl, i, &inside, &crossings));
    }
    out
}
