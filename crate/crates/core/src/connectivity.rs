//! Connected-component machinery on curve pieces and point sets: gluing
//! graphs and epsilon-chains.

use crate::geom::{seg_seg_dist, Point, Rect};
use crate::raster::ComplementDecomposition;
use crate::set_model::Polyline;
use serde::Serialize;
use std::borrow::Borrow;
use std::collections::HashMap;

/// Union-find with path halving.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root wins, keeping block representatives stable.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }

    /// Blocks sorted by minimum element, elements ascending.
    pub fn blocks(&mut self, n: usize) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..n {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        let mut blocks: Vec<Vec<usize>> = by_root.into_values().collect();
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        blocks
    }
}

/// Partition of piece indices into mutually glued blocks. Serializes as
/// arrays of piece indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn block_of(&self, i: usize) -> Option<&[usize]> {
        self.blocks
            .iter()
            .find(|b| b.binary_search(&i).is_ok())
            .map(|b| b.as_slice())
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Minimum set distance between two polylines, with early exit at `stop`.
fn piece_distance_below(a: &Polyline, b: &Polyline, stop: f64) -> bool {
    for (a1, a2) in a.segments() {
        for (b1, b2) in b.segments() {
            if seg_seg_dist(a1, a2, b1, b2) <= stop {
                return true;
            }
        }
    }
    false
}

/// Union-find over the gluing graph: pieces at set-distance <= glue_tol are
/// in one block. Candidate pairs come from padded bbox overlap.
pub fn piece_components<P: Borrow<Polyline>>(pieces: &[P], glue_tol: f64) -> Partition {
    let n = pieces.len();
    let mut uf = UnionFind::new(n);
    let boxes: Vec<Rect> = pieces
        .iter()
        .map(|p| p.borrow().bbox().pad(glue_tol))
        .collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if !boxes[i].intersects(&boxes[j]) {
                continue;
            }
            if piece_distance_below(pieces[i].borrow(), pieces[j].borrow(), glue_tol) {
                uf.union(i, j);
            }
        }
    }
    Partition {
        blocks: uf.blocks(n),
    }
}

/// Partition of a point list into epsilon-chain equivalence classes.
#[derive(Debug, Clone, Serialize)]
pub struct ChainPartition {
    pub blocks: Vec<Vec<usize>>,
    pub scale: f64,
}

impl ChainPartition {
    pub fn block_of(&self, i: usize) -> &[usize] {
        self.blocks
            .iter()
            .find(|b| b.binary_search(&i).is_ok())
            .map(|b| b.as_slice())
            .expect("index in partition")
    }
}

/// Equivalence classes of the strict "distance < eps" adjacency closure,
/// via a bucket grid of cell size eps.
pub fn epsilon_components(points: &[Point], eps: f64) -> ChainPartition {
    assert!(eps > 0.0, "eps must be positive");
    let n = points.len();
    let mut uf = UnionFind::new(n);
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let key = |p: Point| ((p.x / eps).floor() as i64, (p.y / eps).floor() as i64);
    for (i, &p) in points.iter().enumerate() {
        buckets.entry(key(p)).or_default().push(i);
    }
    for (i, &p) in points.iter().enumerate() {
        let (kx, ky) = key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(cands) = buckets.get(&(kx + dx, ky + dy)) {
                    for &j in cands {
                        if j > i && p.dist(points[j]) < eps {
                            uf.union(i, j);
                        }
                    }
                }
            }
        }
    }
    ChainPartition {
        blocks: uf.blocks(n),
        scale: eps,
    }
}

/// Two-sided means the complement has exactly two connected domains.
pub fn is_two_sided(decomp: &ComplementDecomposition) -> bool {
    decomp.domain_count() == 2
}

/// Clipped pieces forming the glued component of `x` inside the open disc
/// U_eps(x). Shared by neighborhood-component and end-cut synthesis code.
pub(crate) fn component_pieces(
    complex: &crate::set_model::CurveComplex,
    x: Point,
    eps: f64,
) -> crate::error::Result<Vec<crate::set_model::ClippedPiece>> {
    use crate::set_model::{clip_to_disc, Disc};
    let tol = complex.glue_tol().max(1e-12);
    let clipped = clip_to_disc(complex, &Disc::new(x, eps));
    let host = clipped.iter().position(|c| c.pl.dist_to(x) <= tol);
    let host = match host {
        Some(i) => i,
        None => {
            return Err(crate::error::Error::NotOnSet {
                x: x.x,
                y: x.y,
                tol,
            })
        }
    };
    let pls: Vec<&Polyline> = clipped.iter().map(|c| &c.pl).collect();
    let parts = piece_components(&pls, tol);
    let block = parts.block_of(host).expect("host piece in partition");
    let mut out = Vec::with_capacity(block.len());
    for &i in block {
        out.push(clipped[i].clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_model::{build_complex, clip_to_disc, make_fixture, Disc, FixtureSpec};
    use proptest::prelude::*;

    fn seg(a: (f64, f64), b: (f64, f64)) -> Polyline {
        Polyline::new(vec![Point::new(a.0, a.1), Point::new(b.0, b.1)]).unwrap()
    }

    #[test]
    fn shared_endpoint_glues() {
        let pieces = vec![seg((0.0, 0.0), (1.0, 0.0)), seg((1.0, 0.0), (1.0, 1.0))];
        let p = piece_components(&pieces, 1e-6);
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn parallel_segments_stay_apart() {
        let tau = 1e-6;
        let pieces = vec![seg((0.0, 0.0), (1.0, 0.0)), seg((0.0, 10.0 * tau), (1.0, 10.0 * tau))];
        let p = piece_components(&pieces, tau);
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn posc_clip_components_match_pairwise_oracle() {
        let complex = make_fixture(FixtureSpec::Posc { n: 8 }, 0.0025).unwrap();
        let tau = complex.glue_tol();
        let x = Point::new(1.0 / 8.0, 0.0);
        let clipped = clip_to_disc(&complex, &Disc::new(x, 0.3));
        assert!(clipped.len() > 3, "expected several strand stubs");
        let pls: Vec<&Polyline> = clipped.iter().map(|c| &c.pl).collect();
        let got = piece_components(&pls, tau);

        // Oracle: full pairwise distance matrix, no bbox filtering.
        let n = pls.len();
        let mut uf = UnionFind::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                let mut min_d = f64::INFINITY;
                for (a1, a2) in pls[i].segments() {
                    for (b1, b2) in pls[j].segments() {
                        min_d = min_d.min(seg_seg_dist(a1, a2, b1, b2));
                    }
                }
                if min_d <= tau {
                    uf.union(i, j);
                }
            }
        }
        let expect = Partition { blocks: uf.blocks(n) };
        assert_eq!(got, expect);

        // The closing segment is clipped to its own unglued component.
        let closing_idx = clipped
            .iter()
            .position(|c| c.src == 2)
            .expect("closing segment intersects the disc");
        assert_eq!(got.block_of(closing_idx).unwrap().len(), 1);
    }

    #[test]
    fn collinear_chain_at_two_scales() {
        let pts: Vec<Point> = (0..10).map(|i| Point::new(0.5 * i as f64, 0.0)).collect();
        assert_eq!(epsilon_components(&pts, 0.6).blocks.len(), 1);
        assert_eq!(epsilon_components(&pts, 0.4).blocks.len(), 10);
        // Exact ties are excluded: spacing 0.5 with eps = 0.5 stays apart.
        assert_eq!(epsilon_components(&pts, 0.5).blocks.len(), 10);
    }

    #[test]
    fn epsilon_components_match_single_linkage_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let pts: Vec<Point> = (0..200)
            .map(|_| Point::new(rng.gen::<f64>(), rng.gen::<f64>()))
            .collect();
        let eps = 0.2;
        let got = epsilon_components(&pts, eps);
        // Single-linkage cut at eps: O(n^2) union of all pairs below eps.
        let mut uf = UnionFind::new(pts.len());
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                if pts[i].dist(pts[j]) < eps {
                    uf.union(i, j);
                }
            }
        }
        assert_eq!(got.blocks, uf.blocks(pts.len()));
    }

    #[test]
    fn two_sided_verdicts() {
        use crate::raster::{complement_components, rasterize};
        let circle = make_fixture(FixtureSpec::Circle { radius: 1.0 }, 0.01).unwrap();
        let d = complement_components(&rasterize(&circle, 0.02).unwrap());
        assert!(is_two_sided(&d));

        let segf = make_fixture(FixtureSpec::Segment { length: 1.0 }, 0.01).unwrap();
        let d = complement_components(&rasterize(&segf, 0.02).unwrap());
        assert!(!is_two_sided(&d));

        let eight = make_fixture(FixtureSpec::FigureEight { radius: 0.5 }, 0.005).unwrap();
        let d = complement_components(&rasterize(&eight, 0.01).unwrap());
        assert_eq!(d.domain_count(), 3);
        assert!(!is_two_sided(&d));
    }

    #[test]
    fn reordering_and_reversal_preserve_components() {
        let pieces = vec![
            seg((0.0, 0.0), (1.0, 0.0)),
            seg((1.0, 0.0), (1.0, 1.0)),
            seg((5.0, 5.0), (6.0, 5.0)),
        ];
        let base = piece_components(&pieces, 1e-6);
        assert_eq!(base.len(), 2);
        let reordered = vec![pieces[2].clone(), pieces[0].clone(), pieces[1].clone()];
        let p2 = piece_components(&reordered, 1e-6);
        assert_eq!(p2.len(), 2);
        let reversed: Vec<Polyline> = pieces.iter().map(|p| p.reversed()).collect();
        let p3 = piece_components(&reversed, 1e-6);
        assert_eq!(p3.blocks, base.blocks);
    }

    proptest! {
        #[test]
        fn refining_eps_only_splits_blocks(
            seed in 0u64..1000,
            eps in 0.05f64..0.5,
            shrink in 0.1f64..0.99,
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let pts: Vec<Point> = (0..60)
                .map(|_| Point::new(rng.gen::<f64>(), rng.gen::<f64>()))
                .collect();
            let coarse = epsilon_components(&pts, eps);
            let fine = epsilon_components(&pts, eps * shrink);
            // Every fine block must be contained in one coarse block.
            for fb in &fine.blocks {
                let host = coarse.block_of(fb[0]);
                for &i in fb {
                    prop_assert!(host.binary_search(&i).is_ok());
                }
            }
        }
    }

    #[test]
    fn component_of_connected_set_reaches_clip_boundary() {
        // Clipped component of a sample on a connected fixture touches the
        // clipping sphere when the fixture leaves the disc.
        let complex = make_fixture(FixtureSpec::Circle { radius: 1.0 }, 0.01).unwrap();
        let tau = complex.glue_tol();
        let x = Point::new(1.0, 0.0);
        let eps = 0.4;
        let clipped = clip_to_disc(&complex, &Disc::new(x, eps));
        let pls: Vec<&Polyline> = clipped.iter().map(|c| &c.pl).collect();
        let parts = piece_components(&pls, tau);
        let xi = clipped
            .iter()
            .position(|c| c.pl.dist_to(x) <= tau)
            .unwrap();
        let block = parts.block_of(xi).unwrap();
        let max_r = block
            .iter()
            .flat_map(|&i| pls[i].vertices())
            .map(|v| v.dist(x))
            .fold(0.0f64, f64::max);
        assert!(eps - max_r <= 2.0 * tau.max(0.01), "component stops short of the sphere");
    }

    #[test]
    fn empty_and_single_piece_partitions() {
        let none: Vec<Polyline> = vec![];
        assert!(piece_components(&none, 1e-6).is_empty());
        let one = vec![seg((0.0, 0.0), (1.0, 0.0))];
        assert_eq!(piece_components(&one, 1e-6).len(), 1);
        let _ = build_complex(one, 1e-6).unwrap();
    }
}
