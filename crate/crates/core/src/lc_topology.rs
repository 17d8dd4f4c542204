//! Neighborhood components, sufficient density, d-set and simple-set
//! verdicts, zero-dimensionality at scale, and the relative distance whose
//! balls sandwich neighborhood components.

use crate::accessibility::accessible_set;
use crate::connectivity::{component_pieces, epsilon_components, piece_components};
use crate::error::{Error, Result};
use crate::geom::{diameter, Point, Rect};
use crate::raster::{frontier_cells, ComplementDecomposition, Grid};
use crate::set_model::{clip_to_rect, ClippedPiece, CurveComplex};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};

/// Strictly decreasing inspection scales with a floor relative to the grid
/// spacing: below a few cells the model carries no information.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScaleLadder {
    pub epsilons: Vec<f64>,
    pub floor_ratio: f64,
}

pub const DEFAULT_FLOOR_RATIO: f64 = 5.0;

impl ScaleLadder {
    pub fn new(epsilons: Vec<f64>, floor_ratio: f64) -> Result<Self> {
        if epsilons.is_empty() {
            return Err(Error::ScaleError("empty scale ladder".into()));
        }
        for w in epsilons.windows(2) {
            if !(w[1] < w[0]) {
                return Err(Error::ScaleError("ladder must strictly decrease".into()));
            }
        }
        if !(epsilons[epsilons.len() - 1] > 0.0) {
            return Err(Error::ScaleError("ladder scales must be positive".into()));
        }
        Ok(ScaleLadder {
            epsilons,
            floor_ratio,
        })
    }

    /// Scales eps_max, eps_max/ratio, ... down to eps_min.
    pub fn geometric(eps_max: f64, eps_min: f64, ratio: f64) -> Result<Self> {
        if !(ratio > 1.0) || !(eps_min > 0.0) || !(eps_max >= eps_min) {
            return Err(Error::ScaleError(format!(
                "bad geometric ladder ({eps_max}, {eps_min}, {ratio})"
            )));
        }
        let mut eps = eps_max;
        let mut v = Vec::new();
        while eps >= eps_min * (1.0 - 1e-9) {
            v.push(eps);
            eps /= ratio;
        }
        ScaleLadder::new(v, DEFAULT_FLOOR_RATIO)
    }

    /// The 1, 1/2, ..., 1/n sequence.
    pub fn harmonic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ScaleError("harmonic ladder needs n >= 1".into()));
        }
        ScaleLadder::new(
            (1..=n).map(|k| 1.0 / k as f64).collect(),
            DEFAULT_FLOOR_RATIO,
        )
    }

    pub fn min_eps(&self) -> f64 {
        *self.epsilons.last().unwrap()
    }

    pub fn max_eps(&self) -> f64 {
        self.epsilons[0]
    }

    pub fn validate(&self, h: f64) -> Result<()> {
        if self.min_eps() < self.floor_ratio * h {
            return Err(Error::ScaleError(format!(
                "ladder floor {} below {} x h = {}",
                self.min_eps(),
                self.floor_ratio,
                self.floor_ratio * h
            )));
        }
        Ok(())
    }
}

/// The glued component of `center` in the set clipped to U_eps(center).
#[derive(Debug, Clone)]
pub struct NeighborhoodComponent {
    pub center: Point,
    pub eps: f64,
    pub pieces: Vec<ClippedPiece>,
}

impl NeighborhoodComponent {
    pub fn contains_point(&self, p: Point, tol: f64) -> bool {
        self.pieces.iter().any(|cp| cp.pl.dist_to(p) <= tol)
    }

    pub fn total_length(&self) -> f64 {
        self.pieces.iter().map(|cp| cp.pl.length()).sum()
    }
}

/// Clip to the open disc, glue, and keep the block containing x.
pub fn neighborhood_component(
    complex: &CurveComplex,
    x: Point,
    eps: f64,
) -> Result<NeighborhoodComponent> {
    if !(eps > 0.0) {
        return Err(Error::ScaleError(format!("eps must be positive, got {eps}")));
    }
    let pieces = component_pieces(complex, x, eps)?;
    Ok(NeighborhoodComponent {
        center: x,
        eps,
        pieces,
    })
}

/// Verdict of a sufficient-density scan; `witnesses` lists the (sample,
/// eps) pairs whose neighborhood component misses the subset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityVerdict {
    pub subset_name: String,
    pub pass: bool,
    pub witnesses: Vec<DensityWitness>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DensityWitness {
    pub x: Point,
    pub eps: f64,
}

/// For each sample x and ladder scale eps, the component of x at scale eps
/// must contain a point of R within the gluing tolerance.
pub fn is_sufficiently_dense(
    complex: &CurveComplex,
    subset_name: &str,
    r_points: &[Point],
    ladder: &ScaleLadder,
    samples: &[Point],
) -> Result<DensityVerdict> {
    let tol = complex.glue_tol().max(1e-12);
    let mut witnesses = Vec::new();
    for &x in samples {
        for &eps in &ladder.epsilons {
            let comp = component_pieces(complex, x, eps)?;
            let found = r_points
                .iter()
                .any(|&r| r.dist(x) < eps + tol && comp.iter().any(|cp| cp.pl.dist_to(r) <= tol));
            if !found {
                witnesses.push(DensityWitness { x, eps });
            }
        }
    }
    Ok(DensityVerdict {
        subset_name: subset_name.to_string(),
        pass: witnesses.is_empty(),
        witnesses,
    })
}

/// d-set verdict: both accessible sets sufficiently dense.
pub fn d_set_check(
    complex: &CurveComplex,
    grid: &Grid,
    decomp: &ComplementDecomposition,
    ladder: &ScaleLadder,
    samples: &[Point],
    probe_radius: f64,
) -> Result<(bool, Vec<DensityVerdict>)> {
    if decomp.domain_count() != 2 {
        return Err(Error::NotTwoSided(decomp.domain_count()));
    }
    let mut verdicts = Vec::with_capacity(2);
    for (i, dom) in decomp.domains.iter().enumerate() {
        let records = accessible_set(complex, grid, decomp, dom.id, samples, probe_radius)?;
        let accessible: Vec<Point> = records
            .iter()
            .filter(|r| r.accessible_from(dom.id))
            .map(|r| r.point)
            .collect();
        let name = format!("A_{}", i + 1);
        verdicts.push(is_sufficiently_dense(
            complex,
            &name,
            &accessible,
            ladder,
            samples,
        )?);
    }
    let pass = verdicts.iter().all(|v| v.pass);
    Ok((pass, verdicts))
}

/// Outcome of the simple-set check: metric density of both accessible sets
/// plus the common-frontier condition at raster scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimpleSetOutcome {
    pub simple: bool,
    pub metric_density_pass: Vec<bool>,
    pub density_witnesses: Vec<Point>,
    pub frontier_ok: bool,
    pub frontier_witnesses: Vec<(usize, usize)>,
}

/// Metric density of A_1, A_2 in the samples at resolution max(2h, tau),
/// plus the discrete common-frontier condition: every K cell within two
/// cells (Chebyshev) of both domain frontiers. (A rasterized band is 2-3
/// cells thick, so literal per-cell frontier equality cannot hold; the
/// proximity form is the scale-h reading of "common frontier".)
pub fn simple_set_check(
    complex: &CurveComplex,
    grid: &Grid,
    decomp: &ComplementDecomposition,
    samples: &[Point],
    probe_radius: f64,
) -> Result<SimpleSetOutcome> {
    if decomp.domain_count() != 2 {
        return Err(Error::NotTwoSided(decomp.domain_count()));
    }
    let res = (2.0 * grid.h).max(complex.glue_tol());
    let mut metric_density_pass = Vec::with_capacity(2);
    let mut density_witnesses = Vec::new();
    for dom in &decomp.domains {
        let records = accessible_set(complex, grid, decomp, dom.id, samples, probe_radius)?;
        let accessible: Vec<Point> = records
            .iter()
            .filter(|r| r.accessible_from(dom.id))
            .map(|r| r.point)
            .collect();
        let mut pass = true;
        for &x in samples {
            let near = accessible.iter().any(|&a| a.dist(x) <= res);
            if !near {
                pass = false;
                density_witnesses.push(x);
            }
        }
        metric_density_pass.push(pass);
    }

    let ids: Vec<u32> = decomp.domains.iter().map(|d| d.id).collect();
    let fronts: Vec<BTreeSet<(usize, usize)>> = ids
        .iter()
        .map(|&id| frontier_cells(grid, decomp, id))
        .collect::<Result<_>>()?;
    let mut frontier_witnesses = Vec::new();
    let cheb = 2i64;
    for r in 0..grid.rows {
        for c in 0..grid.cols {
            if !grid.is_k(r, c) {
                continue;
            }
            for front in &fronts {
                let mut near = false;
                'scan: for dr in -cheb..=cheb {
                    for dc in -cheb..=cheb {
                        let (nr, nc) = (r as i64 + dr, c as i64 + dc);
                        if nr < 0 || nc < 0 || nr as usize >= grid.rows || nc as usize >= grid.cols
                        {
                            continue;
                        }
                        if front.contains(&(nr as usize, nc as usize)) {
                            near = true;
                            break 'scan;
                        }
                    }
                }
                if !near {
                    frontier_witnesses.push((r, c));
                }
            }
        }
    }
    let frontier_ok = frontier_witnesses.is_empty();
    let simple = metric_density_pass.iter().all(|&b| b) && frontier_ok;
    Ok(SimpleSetOutcome {
        simple,
        metric_density_pass,
        density_witnesses,
        frontier_ok,
        frontier_witnesses,
    })
}

/// Zero-dimensional at scale delta: no block of the delta-chain partition
/// stretches to diameter delta or more.
pub fn zero_dim_at_scale(points: &[Point], delta: f64) -> bool {
    assert!(delta > 0.0);
    let parts = epsilon_components(points, delta);
    for block in &parts.blocks {
        let pts: Vec<Point> = block.iter().map(|&i| points[i]).collect();
        if diameter(&pts) >= delta {
            return false;
        }
    }
    true
}

/// Number of glued components of the complex clipped to the open rectangle:
/// a lower bound on the size of any sufficiently dense subset.
pub fn density_lower_bound(complex: &CurveComplex, rect: &Rect) -> usize {
    let clipped = clip_to_rect(complex, rect);
    if clipped.is_empty() {
        return 0;
    }
    let pls: Vec<&crate::set_model::Polyline> = clipped.iter().map(|c| &c.pl).collect();
    piece_components(&pls, complex.glue_tol()).len()
}

// ---------------------------------------------------------------------------
// Relative distance
// ---------------------------------------------------------------------------

/// Bracket on the relative distance: lo <= rho_r <= hi, exact when the
/// search completed within its node budget.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DistanceBracket {
    pub lo: f64,
    pub hi: f64,
    pub exact: bool,
}

/// Vertex graph of a complex: polyline vertices merged within the gluing
/// tolerance, chain edges along pieces, and junction edges where a vertex
/// sits on another segment's interior.
#[derive(Debug, Clone)]
pub struct VertexGraph {
    pub nodes: Vec<Point>,
    pub adj: Vec<Vec<usize>>,
    /// node id of each (piece, vertex) after merging
    vertex_node: Vec<Vec<usize>>,
}

impl VertexGraph {
    pub fn build(complex: &CurveComplex) -> Self {
        let tol = complex.glue_tol().max(1e-12);
        let mut nodes: Vec<Point> = Vec::new();
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        let cell = tol.max(1e-9);
        let key = move |p: Point| ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64);
        let mut vertex_node: Vec<Vec<usize>> = Vec::new();

        let node_for = |p: Point,
                            nodes: &mut Vec<Point>,
                            buckets: &mut HashMap<(i64, i64), Vec<usize>>|
         -> usize {
            let (kx, ky) = key(p);
            for dx in -1..=1 {
                for dy in -1..=1 {
                    if let Some(cands) = buckets.get(&(kx + dx, ky + dy)) {
                        for &id in cands {
                            if nodes[id].dist(p) <= tol {
                                return id;
                            }
                        }
                    }
                }
            }
            let id = nodes.len();
            nodes.push(p);
            buckets.entry((kx, ky)).or_default().push(id);
            id
        };

        for pl in complex.pieces() {
            let ids: Vec<usize> = pl
                .vertices()
                .iter()
                .map(|&v| node_for(v, &mut nodes, &mut buckets))
                .collect();
            vertex_node.push(ids);
        }

        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        fn add_edge(adj: &mut [Vec<usize>], a: usize, b: usize) {
            if a != b && !adj[a].contains(&b) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for ids in &vertex_node {
            for w in ids.windows(2) {
                add_edge(&mut adj, w[0], w[1]);
            }
        }

        // Junctions where a node touches a segment's interior: link to the
        // segment's endpoints, keeping graph connectivity aligned with
        // set-distance gluing for T-shaped contacts. Nodes already
        // chain-adjacent to an endpoint are skipped: a curve leaving a
        // junction at a steep angle hugs the neighboring segment within the
        // gluing tolerance, and re-linking it would inflate degrees.
        let coarse = (complex.diag() / 64.0).max(1e-9);
        let ckey = |p: Point| ((p.x / coarse).floor() as i64, (p.y / coarse).floor() as i64);
        let mut node_grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (nid, &p) in nodes.iter().enumerate() {
            node_grid.entry(ckey(p)).or_default().push(nid);
        }
        for (pi, pl) in complex.pieces().iter().enumerate() {
            for (si, (a, b)) in pl.segments().enumerate() {
                let (na, nb) = (vertex_node[pi][si], vertex_node[pi][si + 1]);
                let seg_bb = Rect::of_points([a, b].iter()).pad(tol);
                let k0 = ckey(seg_bb.min);
                let k1 = ckey(seg_bb.max);
                for kx in k0.0..=k1.0 {
                    for ky in k0.1..=k1.1 {
                        let Some(cands) = node_grid.get(&(kx, ky)) else {
                            continue;
                        };
                        for &nid in cands {
                            if nid == na || nid == nb {
                                continue;
                            }
                            let p = nodes[nid];
                            if !seg_bb.contains(p) {
                                continue;
                            }
                            if adj[nid].contains(&na) || adj[nid].contains(&nb) {
                                continue;
                            }
                            if crate::geom::dist_point_seg(p, a, b) <= tol {
                                add_edge(&mut adj, nid, na);
                                add_edge(&mut adj, nid, nb);
                            }
                        }
                    }
                }
            }
        }

        VertexGraph {
            nodes,
            adj,
            vertex_node,
        }
    }

    fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a].retain(|&x| x != b);
        self.adj[b].retain(|&x| x != a);
    }

    fn add_edge_pub(&mut self, a: usize, b: usize) {
        if a != b && !self.adj[a].contains(&b) {
            self.adj[a].push(b);
            self.adj[b].push(a);
        }
    }

    /// Attach query points by splitting their host segments, preserving
    /// vertex degrees. Returns one node id per point.
    pub fn attach(&mut self, complex: &CurveComplex, points: &[Point]) -> Vec<usize> {
        let tol = complex.glue_tol().max(1e-12);
        // (piece, seg) -> [(t_in_seg, node)]
        let mut pending: HashMap<(usize, usize), Vec<(f64, usize)>> = HashMap::new();
        let mut out = Vec::with_capacity(points.len());
        for &p in points {
            let proj = complex.project(p);
            let q = proj.point;
            // Locate the host segment by arc length.
            let pl = &complex.pieces()[proj.piece];
            let mut rest = proj.t;
            let mut seg_idx = 0;
            let mut t_seg = 1.0;
            for (i, (a, b)) in pl.segments().enumerate() {
                let l = a.dist(b);
                seg_idx = i;
                if rest <= l {
                    t_seg = if l > 0.0 { (rest / l).clamp(0.0, 1.0) } else { 0.0 };
                    break;
                }
                rest -= l;
                t_seg = 1.0;
            }
            let (na, nb) = (
                self.vertex_node[proj.piece][seg_idx],
                self.vertex_node[proj.piece][seg_idx + 1],
            );
            if q.dist(self.nodes[na]) <= tol {
                out.push(na);
                continue;
            }
            if q.dist(self.nodes[nb]) <= tol {
                out.push(nb);
                continue;
            }
            // Reuse a node already attached at the same spot.
            if let Some(v) = pending.get(&(proj.piece, seg_idx)) {
                if let Some(&(_, id)) = v.iter().find(|&&(_, id)| self.nodes[id].dist(q) <= tol) {
                    out.push(id);
                    continue;
                }
            }
            let id = self.nodes.len();
            self.nodes.push(q);
            self.adj.push(Vec::new());
            pending
                .entry((proj.piece, seg_idx))
                .or_default()
                .push((t_seg, id));
            out.push(id);
        }
        let mut keys: Vec<(usize, usize)> = pending.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let mut inserts = pending.remove(&key).unwrap();
            inserts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            let (pi, si) = key;
            let (na, nb) = (self.vertex_node[pi][si], self.vertex_node[pi][si + 1]);
            self.remove_edge(na, nb);
            let mut prev = na;
            for &(_, id) in &inserts {
                self.add_edge_pub(prev, id);
                prev = id;
            }
            self.add_edge_pub(prev, nb);
        }
        out
    }

    pub fn connected(&self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut q = VecDeque::new();
        seen[a] = true;
        q.push_back(a);
        while let Some(i) = q.pop_front() {
            if i == b {
                return true;
            }
            for &j in &self.adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    q.push_back(j);
                }
            }
        }
        false
    }

    fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }
}

/// Minimum over simple na->nb paths of the path's vertex-set diameter.
/// Returns (best, exact); `exact` is false when the node budget ran out.
pub fn min_diameter_path(g: &VertexGraph, na: usize, nb: usize, node_budget: u64) -> (f64, bool) {
    if na == nb {
        return (0.0, true);
    }
    // Chain/cycle fast path: at most two simple paths exist.
    if g.max_degree() <= 2 {
        let mut best = f64::INFINITY;
        for &first in &g.adj[na] {
            let mut pts = vec![g.nodes[na]];
            let (mut prev, mut cur) = (na, first);
            loop {
                pts.push(g.nodes[cur]);
                if cur == nb {
                    best = best.min(diameter(&pts));
                    break;
                }
                let next = g.adj[cur].iter().copied().find(|&x| x != prev);
                match next {
                    Some(n) if n != na => {
                        prev = cur;
                        cur = n;
                    }
                    _ => break,
                }
            }
        }
        return (best, true);
    }

    // Branch and bound over simple paths, seeded by the min-hop path.
    let mut best = f64::INFINITY;
    if let Some(seed) = min_hop_path(g, na, nb) {
        let pts: Vec<Point> = seed.iter().map(|&i| g.nodes[i]).collect();
        best = diameter(&pts);
    }
    let mut on_path = vec![false; g.nodes.len()];
    let mut path_pts: Vec<Point> = Vec::new();
    let mut expansions: u64 = 0;
    let mut exact = true;

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        g: &VertexGraph,
        cur: usize,
        nb: usize,
        diam: f64,
        on_path: &mut Vec<bool>,
        path_pts: &mut Vec<Point>,
        best: &mut f64,
        expansions: &mut u64,
        budget: u64,
        exact: &mut bool,
    ) {
        if cur == nb {
            if diam < *best {
                *best = diam;
            }
            return;
        }
        if *expansions >= budget {
            *exact = false;
            return;
        }
        let mut nexts: Vec<(f64, usize)> = Vec::new();
        for &n in &g.adj[cur] {
            if on_path[n] {
                continue;
            }
            let p = g.nodes[n];
            let mut nd = diam;
            for q in path_pts.iter() {
                nd = nd.max(p.dist(*q));
            }
            if nd < *best {
                nexts.push((nd, n));
            }
        }
        nexts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        for (nd, n) in nexts {
            if nd >= *best {
                continue;
            }
            *expansions += 1;
            on_path[n] = true;
            path_pts.push(g.nodes[n]);
            dfs(g, n, nb, nd, on_path, path_pts, best, expansions, budget, exact);
            path_pts.pop();
            on_path[n] = false;
        }
    }

    on_path[na] = true;
    path_pts.push(g.nodes[na]);
    dfs(
        g,
        na,
        nb,
        0.0,
        &mut on_path,
        &mut path_pts,
        &mut best,
        &mut expansions,
        node_budget,
        &mut exact,
    );
    (best, exact)
}

fn min_hop_path(g: &VertexGraph, na: usize, nb: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.nodes.len()];
    let mut q = VecDeque::new();
    parent[na] = na;
    q.push_back(na);
    while let Some(i) = q.pop_front() {
        if i == nb {
            let mut path = vec![i];
            let mut cur = i;
            while parent[cur] != cur {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &j in &g.adj[i] {
            if parent[j] == usize::MAX {
                parent[j] = i;
                q.push_back(j);
            }
        }
    }
    None
}

/// Bracket on rho_r(a, b) = inf over connected subsets containing both of
/// the subset diameter, searched among simple paths on the vertex graph.
pub fn relative_distance(
    complex: &CurveComplex,
    a: Point,
    b: Point,
    node_budget: u64,
) -> Result<DistanceBracket> {
    if a.dist(b) == 0.0 {
        return Ok(DistanceBracket {
            lo: 0.0,
            hi: 0.0,
            exact: true,
        });
    }
    let mut g = VertexGraph::build(complex);
    let ids = g.attach(complex, &[a, b]);
    let (na, nb) = (ids[0], ids[1]);
    if !g.connected(na, nb) {
        return Err(Error::Disconnected);
    }
    let (best, exact) = min_diameter_path(&g, na, nb, node_budget);
    let euclid = a.dist(b);
    if exact {
        Ok(DistanceBracket {
            lo: best.max(euclid),
            hi: best,
            exact: true,
        })
    } else {
        Ok(DistanceBracket {
            lo: euclid,
            hi: best,
            exact: false,
        })
    }
}

/// One violation found by the sandwich check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SandwichViolation {
    pub y: Point,
    pub lo: f64,
    pub hi: f64,
    pub member: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SandwichReport {
    pub pass: bool,
    pub checked: usize,
    pub witnesses: Vec<SandwichViolation>,
}

/// Checks, for each sample y, the two inclusions relating relative-distance
/// balls and the neighborhood component of x at scale eps: rho_r(x,y) below
/// eps/3 forces membership, and membership forces rho_r(x,y) below 3 eps.
pub fn sandwich_check(
    complex: &CurveComplex,
    x: Point,
    eps: f64,
    samples: &[Point],
    node_budget: u64,
) -> Result<SandwichReport> {
    let comp = neighborhood_component(complex, x, eps)?;
    let tol = complex.glue_tol().max(1e-12);
    let mut base = VertexGraph::build(complex);
    let mut pts = vec![x];
    pts.extend_from_slice(samples);
    let ids = base.attach(complex, &pts);
    let nx = ids[0];
    let mut witnesses = Vec::new();
    for (k, &y) in samples.iter().enumerate() {
        let ny = ids[k + 1];
        let member = comp.contains_point(y, tol);
        let (lo, hi) = if !base.connected(nx, ny) {
            (f64::INFINITY, f64::INFINITY)
        } else {
            let (best, exact) = min_diameter_path(&base, nx, ny, node_budget);
            let euclid = x.dist(y);
            if exact {
                (best.max(euclid), best)
            } else {
                (euclid, best)
            }
        };
        let mut ok = true;
        if hi < eps / 3.0 && !member {
            ok = false;
        }
        if member && !(lo < 3.0 * eps) {
            ok = false;
        }
        if !ok {
            witnesses.push(SandwichViolation { y, lo, hi, member });
        }
    }
    Ok(SandwichReport {
        pass: witnesses.is_empty(),
        checked: samples.len(),
        witnesses,
    })
}
