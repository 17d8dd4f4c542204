//! Discrete end-cuts, cross-cuts, accessible sets, and the ladder
//! construction that synthesizes an end-cut from accessibility of nearby
//! neighborhood components.

use crate::connectivity::component_pieces;
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::lc_topology::ScaleLadder;
use crate::raster::{ComplementDecomposition, Grid};
use crate::set_model::{CurveComplex, Polyline};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

/// A simple arc meeting K only at its first vertex; the rest runs through
/// one complementary domain. `scale` is the finest neighborhood radius at
/// which the cut still has an initial arc inside U_scale(target).
#[derive(Debug, Clone)]
pub struct EndCut {
    pub path: Polyline,
    pub target: Point,
    pub domain_id: u32,
    pub scale: f64,
}

/// A simple arc with both endpoints on K and interior inside one domain.
#[derive(Debug, Clone)]
pub struct CrossCut {
    pub path: Polyline,
    pub endpoints: (Point, Point),
    pub domain_id: u32,
}

/// Per-point accessibility verdicts; `Some(end_cut)` is the witness.
#[derive(Debug, Clone)]
pub struct AccessRecord {
    pub point: Point,
    pub by_domain: BTreeMap<u32, Option<EndCut>>,
}

impl AccessRecord {
    pub fn accessible_from(&self, domain_id: u32) -> bool {
        matches!(self.by_domain.get(&domain_id), Some(Some(_)))
    }
}

fn check_domain(decomp: &ComplementDecomposition, domain_id: u32) -> Result<()> {
    if decomp.domains.iter().any(|d| d.id == domain_id) {
        Ok(())
    } else {
        Err(Error::UnknownDomain(domain_id))
    }
}

/// K-cells standing in for the point x: cells flagged K whose center lies
/// within 2h of x. (A rasterized band can be three cells wide with x's own
/// cell in the middle; anchoring on the whole local cluster keeps such
/// points reachable.)
fn anchor_cells(grid: &Grid, x: Point) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let reach = 2.0 * grid.h;
    let c0 = (((x.x - reach - grid.origin.x) / grid.h).floor().max(0.0)) as usize;
    let r0 = (((x.y - reach - grid.origin.y) / grid.h).floor().max(0.0)) as usize;
    let c1 = ((((x.x + reach - grid.origin.x) / grid.h).ceil()) as usize)
        .min(grid.cols.saturating_sub(1));
    let r1 = ((((x.y + reach - grid.origin.y) / grid.h).ceil()) as usize)
        .min(grid.rows.saturating_sub(1));
    for r in r0..=r1 {
        for c in c0..=c1 {
            if grid.is_k(r, c) && grid.cell_center(r, c).dist(x) <= reach {
                out.push((r, c));
            }
        }
    }
    out
}

/// Domain cells 8-adjacent to any anchor cell of x, sorted (row, col).
fn seed_cells(
    grid: &Grid,
    decomp: &ComplementDecomposition,
    domain_id: u32,
    x: Point,
) -> Vec<usize> {
    let mut seeds = BTreeSet::new();
    for (r, c) in anchor_cells(grid, x) {
        for (nr, nc) in grid.neighbors8(r, c) {
            let j = grid.idx(nr, nc);
            if decomp.labels[j] == domain_id {
                seeds.insert(j);
            }
        }
    }
    seeds.into_iter().collect()
}

/// Breadth-first search over 4-connected cells of one domain. Sources must
/// already satisfy `allowed`. Returns the cell path from a source to the
/// first dequeued target, or None.
fn bfs_path(
    grid: &Grid,
    decomp: &ComplementDecomposition,
    domain_id: u32,
    sources: &[usize],
    mut is_target: impl FnMut(usize) -> bool,
    mut allowed: impl FnMut(usize) -> bool,
) -> Option<Vec<usize>> {
    // Sparse parents: searches usually visit a tiny patch of the grid.
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &s in sources {
        if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(s) {
            e.insert(s);
            queue.push_back(s);
        }
    }
    while let Some(i) = queue.pop_front() {
        if is_target(i) {
            let mut path = vec![i];
            let mut cur = i;
            while parent[&cur] != cur {
                cur = parent[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        let (r, c) = (i / grid.cols, i % grid.cols);
        for (nr, nc) in grid.neighbors4(r, c) {
            let j = grid.idx(nr, nc);
            if decomp.labels[j] == domain_id && !parent.contains_key(&j) && allowed(j) {
                parent.insert(j, i);
                queue.push_back(j);
            }
        }
    }
    None
}

/// Searches for a simple cell path from a domain cell at distance at least
/// `probe_radius` from x down to a cell adjacent to x's K-cells, then
/// appends the straight hop to x. Absent when no such path exists at this
/// resolution.
pub fn find_end_cut(
    complex: &CurveComplex,
    grid: &Grid,
    decomp: &ComplementDecomposition,
    x: Point,
    domain_id: u32,
    probe_radius: f64,
) -> Result<Option<EndCut>> {
    check_domain(decomp, domain_id)?;
    if probe_radius < 2.0 * grid.h {
        return Err(Error::ScaleError(format!(
            "probe radius {probe_radius} below 2h = {}",
            2.0 * grid.h
        )));
    }
    let proj = complex.project(x);
    if proj.dist > grid.h {
        return Err(Error::NotOnSet {
            x: x.x,
            y: x.y,
            tol: grid.h,
        });
    }
    let seeds = seed_cells(grid, decomp, domain_id, x);
    if seeds.is_empty() {
        return Ok(None);
    }
    let path = bfs_path(
        grid,
        decomp,
        domain_id,
        &seeds,
        |i| {
            let (r, c) = (i / grid.cols, i % grid.cols);
            grid.cell_center(r, c).dist(x) >= probe_radius
        },
        |_| true,
    );
    Ok(path.map(|cells| {
        let mut verts = Vec::with_capacity(cells.len() + 1);
        verts.push(x);
        verts.extend(
            cells
                .iter()
                .map(|&i| grid.cell_center(i / grid.cols, i % grid.cols)),
        );
        let scale = verts[1].dist(x);
        EndCut {
            path: Polyline::trusted(verts, true),
            target: x,
            domain_id,
            scale,
        }
    }))
}

/// Applies `find_end_cut` to every sample for one domain.
pub fn accessible_set(
    complex: &CurveComplex,
    grid: &Grid,
    decomp: &ComplementDecomposition,
    domain_id: u32,
    samples: &[Point],
    probe_radius: f64,
) -> Result<Vec<AccessRecord>> {
    let mut out = Vec::with_capacity(samples.len());
    for &p in samples {
        let cut = find_end_cut(complex, grid, decomp, p, domain_id, probe_radius)?;
        let mut by_domain = BTreeMap::new();
        by_domain.insert(domain_id, cut);
        out.push(AccessRecord {
            point: p,
            by_domain,
        });
    }
    Ok(out)
}

/// Chronological loop erasure: the output visits no element twice and keeps
/// both endpoints.
pub fn loop_erase<T: Eq + std::hash::Hash + Clone>(path: &[T]) -> Vec<T> {
    loop_erase_indexed(path).0
}

/// Loop erasure that also reports, for each surviving element, its position
/// in the input walk.
pub fn loop_erase_indexed<T: Eq + std::hash::Hash + Clone>(path: &[T]) -> (Vec<T>, Vec<usize>) {
    let mut out: Vec<T> = Vec::new();
    let mut pos: Vec<usize> = Vec::new();
    let mut where_in_out: HashMap<T, usize> = HashMap::new();
    for (i, item) in path.iter().enumerate() {
        if let Some(&k) = where_in_out.get(item) {
            for dropped in out.drain(k + 1..) {
                where_in_out.remove(&dropped);
            }
            pos.truncate(k + 1);
        } else {
            where_in_out.insert(item.clone(), out.len());
            out.push(item.clone());
            pos.push(i);
        }
    }
    (out, pos)
}

fn cell_of_vertex(grid: &Grid, v: Point) -> usize {
    let (r, c) = grid.cell_of(v).expect("path vertex inside grid");
    grid.idx(r, c)
}

/// Truncation index: last vertex of the maximal initial run of interior
/// vertices staying strictly inside U_eps1(x). 0 means only the target fits.
fn truncation_index(ec: &EndCut, x: Point, eps1: f64) -> usize {
    let verts = ec.path.vertices();
    let mut j = 0;
    for (i, v) in verts.iter().enumerate().skip(1) {
        if v.dist(x) < eps1 {
            j = i;
        } else {
            break;
        }
    }
    j
}

/// Builds a simple cross-cut through the domain joining the targets of the
/// two end-cuts: each cut is truncated at its last vertex inside U_eps1(x),
/// the truncation tips are joined by a shortest cell path inside
/// domain ∩ U_eps1(x), and the walk is loop-erased. The result contains the
/// initial arc of both end-cuts and stays inside U_eps1(x).
pub fn build_cross_cut(
    grid: &Grid,
    decomp: &ComplementDecomposition,
    x: Point,
    eps: f64,
    eps1: f64,
    ec1: &EndCut,
    ec2: &EndCut,
) -> Result<CrossCut> {
    if !(eps1 > eps) {
        return Err(Error::ScaleError(format!(
            "outer radius {eps1} must exceed inner radius {eps}"
        )));
    }
    check_domain(decomp, ec1.domain_id)?;
    if ec1.domain_id != ec2.domain_id {
        // Continuum-wise both cuts live in one complementary domain that the
        // grid has fragmented at this resolution.
        return Err(Error::NoConnection(format!(
            "end-cuts lie in different raster domains {} and {}",
            ec1.domain_id, ec2.domain_id
        )));
    }
    let domain_id = ec1.domain_id;
    for t in [ec1.target, ec2.target] {
        if t.dist(x) >= eps1 {
            return Err(Error::NoConnection(format!(
                "end-cut target ({}, {}) outside the outer disc",
                t.x, t.y
            )));
        }
    }
    let j1 = truncation_index(ec1, x, eps1);
    let j2 = truncation_index(ec2, x, eps1);
    if j1 == 0 || j2 == 0 {
        return Err(Error::NoConnection(
            "an end-cut has no interior vertex inside the outer disc".into(),
        ));
    }
    let cells1: Vec<usize> = ec1.path.vertices()[1..=j1]
        .iter()
        .map(|&v| cell_of_vertex(grid, v))
        .collect();
    let cells2: Vec<usize> = ec2.path.vertices()[1..=j2]
        .iter()
        .map(|&v| cell_of_vertex(grid, v))
        .collect();
    let tip1 = *cells1.last().unwrap();
    let tip2 = *cells2.last().unwrap();
    let within = |i: usize| {
        let (r, c) = (i / grid.cols, i % grid.cols);
        grid.cell_center(r, c).dist(x) < eps1
    };
    let bridge = bfs_path(grid, decomp, domain_id, &[tip1], |i| i == tip2, within).ok_or_else(
        || {
            Error::NoConnection(format!(
                "truncation tips fall in different components of domain {domain_id} \
                 within the outer disc at this resolution"
            ))
        },
    )?;

    let mut walk: Vec<usize> = cells1;
    for &c in bridge.iter().skip(1) {
        walk.push(c);
    }
    for &c in cells2.iter().rev().skip(1) {
        walk.push(c);
    }
    let simple_cells = loop_erase(&walk);

    let mut verts = Vec::with_capacity(simple_cells.len() + 2);
    verts.push(ec1.target);
    verts.extend(
        simple_cells
            .iter()
            .map(|&i| grid.cell_center(i / grid.cols, i % grid.cols)),
    );
    verts.push(ec2.target);
    Ok(CrossCut {
        path: Polyline::trusted(verts, true),
        endpoints: (ec1.target, ec2.target),
        domain_id,
    })
}

/// Bookkeeping from the ladder construction, used to verify tail
/// containment independently of the returned cut.
#[derive(Debug, Clone)]
pub struct SynthesisTrace {
    /// Raw cell-center walk from the deep end toward the target, before
    /// loop erasure.
    pub walk: Vec<Point>,
    /// (radius bound, walk index): every walk element at or after the index
    /// stays within the bound of the target.
    pub stage_starts: Vec<(f64, usize)>,
    /// The direct search succeeded and no construction ran.
    pub direct: bool,
}

/// Returns the directly-found end-cut when the point is already accessible,
/// otherwise runs the ladder construction.
pub fn synthesize_end_cut(
    complex: &CurveComplex,
    grid: &Grid,
    decomp: &ComplementDecomposition,
    x: Point,
    domain_id: u32,
    ladder: &ScaleLadder,
    probe_radius: f64,
) -> Result<EndCut> {
    synthesize_end_cut_traced(complex, grid, decomp, x, domain_id, ladder, probe_radius, false)
        .map(|(ec, _)| ec)
}

/// Ladder construction: pick accessible points x_i in shrinking
/// neighborhood components of x, join consecutive picks by cross-cuts
/// beta_i inside U_{eps_{i-1}}(x), walk the chain down to x, and loop-erase
/// into a simple end-cut. `force_construction` skips the direct shortcut.
#[allow(clippy::too_many_arguments)]
pub fn synthesize_end_cut_traced(
    complex: &CurveComplex,
    grid: &Grid,
    decomp: &ComplementDecomposition,
    x: Point,
    domain_id: u32,
    ladder: &ScaleLadder,
    probe_radius: f64,
    force_construction: bool,
) -> Result<(EndCut, SynthesisTrace)> {
    check_domain(decomp, domain_id)?;
    ladder.validate(grid.h)?;
    let proj = complex.project(x);
    if proj.dist > grid.h {
        return Err(Error::NotOnSet {
            x: x.x,
            y: x.y,
            tol: grid.h,
        });
    }
    let x = proj.point;

    if !force_construction {
        if let Some(ec) = find_end_cut(complex, grid, decomp, x, domain_id, probe_radius)? {
            return Ok((
                ec,
                SynthesisTrace {
                    walk: Vec::new(),
                    stage_starts: Vec::new(),
                    direct: true,
                },
            ));
        }
    }

    let epsilons = &ladder.epsilons;
    let m = epsilons.len();
    let mut picks: Vec<(Point, EndCut)> = Vec::with_capacity(m);
    let mut closest = f64::INFINITY;
    for &eps_i in epsilons {
        let eff = eps_i.min(closest * (1.0 - 1e-9));
        let mut found = None;
        if eff > 0.0 {
            let comp = component_pieces(complex, x, eff)?;
            'pieces: for cp in &comp {
                let len = cp.pl.length();
                let sp = (2.0 * grid.h).max(eff / 16.0);
                let mut t = sp * 0.5;
                while t < len {
                    let cand = cp.pl.point_at(t);
                    t += sp;
                    if cand.dist(x) < 3.0 * grid.h {
                        continue;
                    }
                    if let Some(ec) =
                        find_end_cut(complex, grid, decomp, cand, domain_id, probe_radius)?
                    {
                        found = Some((cand, ec));
                        break 'pieces;
                    }
                }
            }
        }
        match found {
            Some((p, ec)) => {
                closest = closest.min(p.dist(x));
                picks.push((p, ec));
            }
            None => return Err(Error::HypothesisFailed { eps: eps_i }),
        }
    }

    let mut walk: Vec<usize> = Vec::new();
    let mut stage_starts: Vec<(f64, usize)> = Vec::new();

    // Deep part: the first end-cut reversed, down to its first interior
    // vertex (the junction shared with the first cross-cut).
    let alpha1 = &picks[0].1;
    for v in alpha1.path.vertices().iter().skip(1).rev() {
        walk.push(cell_of_vertex(grid, *v));
    }

    for i in 0..m.saturating_sub(1) {
        let eps_hi = if i == 0 { 2.0 * epsilons[0] } else { epsilons[i - 1] };
        let cc = build_cross_cut(
            grid,
            decomp,
            x,
            epsilons[i],
            eps_hi,
            &picks[i].1,
            &picks[i + 1].1,
        )?;
        stage_starts.push((eps_hi, walk.len() - 1));
        // Interior cells of the cross-cut; the first one is already the
        // current walk end (stub preservation).
        let n = cc.path.vertices().len();
        let interior = &cc.path.vertices()[1..n - 1];
        debug_assert_eq!(cell_of_vertex(grid, interior[0]), *walk.last().unwrap());
        for v in interior.iter().skip(1) {
            walk.push(cell_of_vertex(grid, *v));
        }
    }

    // Final approach: from the last junction to a cell adjacent to x,
    // staying within the tightest completed scale.
    let final_bound = if m >= 2 { epsilons[m - 2] } else { 2.0 * epsilons[0] };
    stage_starts.push((final_bound, walk.len() - 1));
    let target_cells: BTreeSet<usize> = anchor_cells(grid, x)
        .iter()
        .flat_map(|&(r, c)| grid.neighbors8(r, c))
        .map(|(r, c)| grid.idx(r, c))
        .filter(|&j| decomp.labels[j] == domain_id)
        .collect();
    if target_cells.is_empty() {
        return Err(Error::NoConnection(format!(
            "no domain-{domain_id} cell adjacent to the target at this resolution"
        )));
    }
    let start = *walk.last().unwrap();
    let within = |i: usize| {
        let (r, c) = (i / grid.cols, i % grid.cols);
        grid.cell_center(r, c).dist(x) < final_bound
    };
    let tail = bfs_path(
        grid,
        decomp,
        domain_id,
        &[start],
        |i| target_cells.contains(&i),
        within,
    )
    .ok_or_else(|| {
        Error::NoConnection(format!(
            "cannot reach the target's adjacent cells inside radius {final_bound}"
        ))
    })?;
    for &c in tail.iter().skip(1) {
        walk.push(c);
    }

    let trace_walk: Vec<Point> = walk
        .iter()
        .map(|&i| grid.cell_center(i / grid.cols, i % grid.cols))
        .collect();

    let (cells, _) = loop_erase_indexed(&walk);
    let mut verts = Vec::with_capacity(cells.len() + 1);
    verts.push(x);
    verts.extend(
        cells
            .iter()
            .rev()
            .map(|&i| grid.cell_center(i / grid.cols, i % grid.cols)),
    );
    let ec = EndCut {
        path: Polyline::trusted(verts, true),
        target: x,
        domain_id,
        scale: epsilons[m - 1],
    };
    Ok((
        ec,
        SynthesisTrace {
            walk: trace_walk,
            stage_starts,
            direct: false,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lc_topology::ScaleLadder;
    use crate::raster::{complement_components, rasterize};
    use crate::set_model::{make_fixture, FixtureSpec};

    fn setup(
        spec: FixtureSpec,
        step: f64,
        h: f64,
    ) -> (CurveComplex, Grid, ComplementDecomposition) {
        let complex = make_fixture(spec, step).unwrap();
        let grid = rasterize(&complex, h).unwrap();
        let decomp = complement_components(&grid);
        (complex, grid, decomp)
    }

    /// Interior vertices in the domain, endpoints on K, no repeated cells.
    fn assert_valid_end_cut(
        grid: &Grid,
        decomp: &ComplementDecomposition,
        complex: &CurveComplex,
        ec: &EndCut,
    ) {
        let verts = ec.path.vertices();
        assert!(verts[0].dist(ec.target) == 0.0);
        assert!(complex.dist_to(ec.target) <= grid.h + 1e-12);
        let mut seen = std::collections::HashSet::new();
        for v in &verts[1..] {
            let (r, c) = grid.cell_of(*v).unwrap();
            assert_eq!(decomp.labels[grid.idx(r, c)], ec.domain_id);
            assert!(seen.insert((r, c)), "cell repeated");
        }
    }

    #[test]
    fn circle_point_accessible_from_both_sides() {
        let (complex, grid, decomp) = setup(FixtureSpec::Circle { radius: 1.0 }, 0.005, 0.02);
        let x = Point::new(1.0, 0.0);
        for d in [decomp.unbounded_id(), decomp.bounded_id().unwrap()] {
            let ec = find_end_cut(&complex, &grid, &decomp, x, d, 0.2)
                .unwrap()
                .expect("circle point accessible");
            assert_valid_end_cut(&grid, &decomp, &complex, &ec);
            // Deep end actually reached the probe depth.
            assert!(ec.path.vertices().last().unwrap().dist(x) >= 0.2);
        }
    }

    #[test]
    fn inner_dot_inaccessible_from_unbounded_domain() {
        let (complex, grid, decomp) =
            setup(FixtureSpec::CircleWithDots { radius: 1.0 }, 0.01, 0.02);
        assert_eq!(decomp.domain_count(), 2);
        let dot = Point::new(0.0, 0.0);
        let unb = decomp.unbounded_id();
        let bnd = decomp.bounded_id().unwrap();
        assert!(find_end_cut(&complex, &grid, &decomp, dot, unb, 0.2)
            .unwrap()
            .is_none());
        assert!(find_end_cut(&complex, &grid, &decomp, dot, bnd, 0.2)
            .unwrap()
            .is_some());
        // Independent oracle: no cell of the unbounded domain is 8-adjacent
        // to any K cell near the dot.
        for (r, c) in super::anchor_cells(&grid, dot) {
            for (nr, nc) in grid.neighbors8(r, c) {
                assert_ne!(decomp.labels[grid.idx(nr, nc)], unb);
            }
        }
    }

    #[test]
    fn off_set_point_is_rejected() {
        let (complex, grid, decomp) = setup(FixtureSpec::Circle { radius: 1.0 }, 0.01, 0.02);
        let r = find_end_cut(
            &complex,
            &grid,
            &decomp,
            Point::new(0.5, 0.5),
            decomp.unbounded_id(),
            0.2,
        );
        assert!(matches!(r, Err(Error::NotOnSet { .. })));
    }

    #[test]
    fn loop_erase_cases() {
        assert_eq!(loop_erase(&['a', 'b', 'c', 'b', 'd']), vec!['a', 'b', 'd']);
        assert_eq!(loop_erase(&[1, 2, 3]), vec![1, 2, 3]);
        let (out, pos) = loop_erase_indexed(&[1, 2, 3, 2, 4, 1, 5]);
        assert_eq!(out, vec![1, 5]);
        assert_eq!(pos, vec![0, 6]);
    }

    #[test]
    fn loop_erase_random_walk_properties() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        // Random 4-connected walk on a 20x20 grid from corner toward corner.
        let mut walk = vec![(0i32, 0i32)];
        let mut cur = (0i32, 0i32);
        while cur != (19, 19) {
            let dirs = [(0, 1), (1, 0), (0, -1), (-1, 0)];
            let (dx, dy) = dirs[rng.gen_range(0..4)];
            let nxt = ((cur.0 + dx).clamp(0, 19), (cur.1 + dy).clamp(0, 19));
            if nxt != cur {
                cur = nxt;
                walk.push(cur);
            }
        }
        let out = loop_erase(&walk);
        // Simple, endpoints preserved, subset of input cells.
        let mut seen = std::collections::HashSet::new();
        for c in &out {
            assert!(seen.insert(*c));
            assert!(walk.contains(c));
        }
        assert_eq!(out[0], (0, 0));
        assert_eq!(*out.last().unwrap(), (19, 19));
        for w in out.windows(2) {
            let d = (w[0].0 - w[1].0).abs() + (w[0].1 - w[1].1).abs();
            assert_eq!(d, 1, "loop-erased path must stay 4-connected");
        }
    }

    #[test]
    fn cross_cut_on_circle_contains_stubs_and_stays_inside() {
        let (complex, grid, decomp) = setup(FixtureSpec::Circle { radius: 1.0 }, 0.005, 0.005);
        let x = Point::new(1.0, 0.0);
        let bnd = decomp.bounded_id().unwrap();
        let (eps, eps1) = (0.2, 0.3);
        let y1 = Point::new((0.08f64).cos(), (0.08f64).sin());
        let y2 = Point::new((0.08f64).cos(), -(0.08f64).sin());
        let ec1 = find_end_cut(&complex, &grid, &decomp, y1, bnd, 0.05)
            .unwrap()
            .unwrap();
        let ec2 = find_end_cut(&complex, &grid, &decomp, y2, bnd, 0.05)
            .unwrap()
            .unwrap();
        let cc = build_cross_cut(&grid, &decomp, x, eps, eps1, &ec1, &ec2).unwrap();
        let verts = cc.path.vertices();
        assert_eq!(verts[0], y1);
        assert_eq!(*verts.last().unwrap(), y2);
        for v in verts {
            assert!(v.dist(x) < eps1 + 1e-12, "vertex escapes the outer disc");
        }
        // Initial stubs of both end-cuts are the first and last edges.
        assert_eq!(verts[1], ec1.path.vertices()[1]);
        assert_eq!(verts[verts.len() - 2], ec2.path.vertices()[1]);
        // Interior in the domain, no repeated cell.
        let mut seen = std::collections::HashSet::new();
        for v in &verts[1..verts.len() - 1] {
            let (r, c) = grid.cell_of(*v).unwrap();
            assert_eq!(decomp.labels[grid.idx(r, c)], bnd);
            assert!(seen.insert((r, c)));
        }
    }

    #[test]
    fn cross_cut_scale_guard() {
        let (complex, grid, decomp) = setup(FixtureSpec::Circle { radius: 1.0 }, 0.005, 0.01);
        let bnd = decomp.bounded_id().unwrap();
        let y1 = Point::new(1.0, 0.0);
        let ec = find_end_cut(&complex, &grid, &decomp, y1, bnd, 0.05)
            .unwrap()
            .unwrap();
        let r = build_cross_cut(&grid, &decomp, y1, 0.3, 0.2, &ec, &ec);
        assert!(matches!(r, Err(Error::ScaleError(_))));
    }

    #[test]
    fn synthesize_trivial_shortcut_returns_direct_cut() {
        let (complex, grid, decomp) = setup(FixtureSpec::Circle { radius: 1.0 }, 0.005, 0.01);
        let bnd = decomp.bounded_id().unwrap();
        let ladder = ScaleLadder::geometric(0.4, 0.05, 2.0).unwrap();
        let x = Point::new(0.0, 1.0);
        let (ec, trace) =
            synthesize_end_cut_traced(&complex, &grid, &decomp, x, bnd, &ladder, 0.1, false)
                .unwrap();
        assert!(trace.direct);
        assert_valid_end_cut(&grid, &decomp, &complex, &ec);
    }

    #[test]
    fn synthesize_forced_construction_on_circle_has_contained_tail() {
        let (complex, grid, decomp) = setup(FixtureSpec::Circle { radius: 1.0 }, 0.005, 0.005);
        let bnd = decomp.bounded_id().unwrap();
        let ladder = ScaleLadder::geometric(0.4, 0.05, 2.0).unwrap();
        let x = Point::new(0.0, 1.0);
        let (ec, trace) =
            synthesize_end_cut_traced(&complex, &grid, &decomp, x, bnd, &ladder, 0.1, true)
                .unwrap();
        assert!(!trace.direct);
        assert_valid_end_cut(&grid, &decomp, &complex, &ec);
        assert_eq!(ec.scale, 0.05);
        // Independent tail scan over the raw walk: after each stage start,
        // the walk stays within the stage bound.
        assert!(!trace.stage_starts.is_empty());
        for &(bound, idx) in &trace.stage_starts {
            for p in &trace.walk[idx..] {
                let d = p.dist(ec.target);
                assert!(
                    d <= bound + 1e-9,
                    "walk escapes U_{bound} after stage start: {d}"
                );
            }
        }
        // The final path ends at the target and approaches it.
        assert_eq!(ec.path.vertices()[0], ec.target);
        assert!(ec.path.vertices()[1].dist(ec.target) <= 3.0 * grid.h);
    }

    #[test]
    fn synthesize_agrees_with_find_on_circle_samples() {
        let (complex, grid, decomp) = setup(FixtureSpec::Circle { radius: 1.0 }, 0.005, 0.01);
        let bnd = decomp.bounded_id().unwrap();
        let unb = decomp.unbounded_id();
        let ladder = ScaleLadder::geometric(0.4, 0.05, 2.0).unwrap();
        for k in 0..24 {
            let a = 2.0 * std::f64::consts::PI * (k as f64) / 24.0;
            let x = Point::new(a.cos(), a.sin());
            for d in [bnd, unb] {
                let direct = find_end_cut(&complex, &grid, &decomp, x, d, 0.1)
                    .unwrap()
                    .is_some();
                let synth =
                    synthesize_end_cut(&complex, &grid, &decomp, x, d, &ladder, 0.1).is_ok();
                assert_eq!(direct, synth, "verdict mismatch at angle {a} domain {d}");
            }
        }
    }
}
