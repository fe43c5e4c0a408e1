//! Lattice polytopes in dimension two and three.
//!
//! A [`Polytope`] is built from a point set by [`Polytope::convex_hull`] and
//! stores its vertices (sorted lexicographically) together with a facet
//! description `P = { x : <n, x> <= h }` using primitive normals. Polytopes of
//! lower dimension than the ambient lattice keep a lattice chart of their
//! affine hull, so that relative interiors are measured in the induced lattice.

mod faces;
mod hull;
mod scan;
pub mod text;

use std::fmt;
use std::sync::OnceLock;

use crate::exact::{det_small, rank, saturated_basis, IntMatrix, LatticePoint, Point2, Point3};
use crate::{Error, Result};

pub use faces::FaceRef;

/// Facet inequality `<normal, x> <= offset` with a primitive normal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Facet<const D: usize> {
    pub normal: LatticePoint<D>,
    pub offset: i64,
}

impl<const D: usize> Facet<D> {
    /// Lattice distance of `p` from the facet hyperplane; positive inside.
    pub fn slack(&self, p: &LatticePoint<D>) -> i64 {
        self.offset - self.normal.dot(p)
    }
}

/// Lattice-preserving identification of an affine subspace with `Z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Chart<const D: usize> {
    pub origin: LatticePoint<D>,
    pub basis: Vec<LatticePoint<D>>,
}

impl<const D: usize> Chart<D> {
    fn new(points: &[LatticePoint<D>]) -> Self {
        let origin = points[0];
        let diffs: Vec<_> = points
            .iter()
            .map(|p| *p - origin)
            .filter(|d| !d.is_zero())
            .collect();
        Self {
            origin,
            basis: saturated_basis(&diffs),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Integer coordinates of `p` in the chart, or `None` if `p` is off the
    /// affine lattice.
    pub fn to_local(&self, p: &LatticePoint<D>) -> Option<Vec<i64>> {
        let w = *p - self.origin;
        let k = self.basis.len();
        if k == 0 {
            return w.is_zero().then(Vec::new);
        }
        // pick k coordinate rows with an invertible minor
        let rows: Vec<usize> = (0..D).collect();
        let mut chosen = None;
        for_each_rows(&rows, k, &mut |sel| {
            if chosen.is_none() {
                let minor: Vec<Vec<i64>> = sel
                    .iter()
                    .map(|&r| self.basis.iter().map(|b| b[r]).collect())
                    .collect();
                if det_small(&minor) != 0 {
                    chosen = Some((sel.to_vec(), minor));
                }
            }
        });
        let (sel, minor) = chosen.expect("basis is independent");
        let det = det_small(&minor);
        let adj = crate::exact::adjugate_small(&minor);
        let rhs: Vec<i128> = sel.iter().map(|&r| w[r] as i128).collect();
        let mut coords = Vec::with_capacity(k);
        for row in adj.iter() {
            let num: i128 = row.iter().zip(&rhs).map(|(a, b)| a * b).sum();
            if num % det != 0 {
                return None;
            }
            coords.push(i64::try_from(num / det).ok()?);
        }
        (self.to_global(&coords) == *p).then_some(coords)
    }

    pub fn to_global(&self, c: &[i64]) -> LatticePoint<D> {
        let mut p = self.origin;
        for (b, &x) in self.basis.iter().zip(c) {
            p = p + b.scale(x);
        }
        p
    }
}

fn for_each_rows(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::new(), f);
}

/// Shape of a polytope of lower dimension than its ambient lattice.
#[derive(Clone, Debug)]
pub(crate) enum LowDim {
    Point,
    /// Lattice length of the segment in its chart.
    Segment(i64),
    Polygon(Box<Polytope<2>>),
}

#[derive(Clone)]
pub struct Polytope<const D: usize> {
    vertices: Vec<LatticePoint<D>>,
    facets: Vec<Facet<D>>,
    /// Bit `i` of `facet_masks[f]` is set iff vertex `i` lies on facet `f`.
    facet_masks: Vec<u64>,
    dim: usize,
    low: Option<(Chart<D>, LowDim)>,
    cycles: OnceLock<Vec<Vec<usize>>>,
}

pub type Polytope2 = Polytope<2>;
pub type Polytope3 = Polytope<3>;

/// Maximum number of vertices supported by the incidence bitmasks.
pub const MAX_VERTICES: usize = 64;

fn to3<const D: usize>(p: &LatticePoint<D>) -> Point3 {
    let mut c = [0; 3];
    c[..D].copy_from_slice(&p.0);
    LatticePoint(c)
}

fn from3<const D: usize>(p: &Point3) -> LatticePoint<D> {
    let mut c = [0; D];
    c.copy_from_slice(&p.0[..D]);
    LatticePoint(c)
}

fn to2<const D: usize>(p: &LatticePoint<D>) -> Point2 {
    LatticePoint([p[0], p[1]])
}

fn from2<const D: usize>(p: &Point2) -> LatticePoint<D> {
    let mut c = [0; D];
    c[0] = p[0];
    c[1] = p[1];
    LatticePoint(c)
}

impl<const D: usize> Polytope<D> {
    /// Exact convex hull of a non-empty point set.
    pub fn convex_hull(points: &[LatticePoint<D>]) -> Result<Self> {
        assert!(
            D == 2 || D == 3,
            "polytopes are supported in dimension 2 and 3"
        );
        if points.is_empty() {
            return Err(Error::Empty);
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let base = pts[0];
        let diffs: Vec<_> = pts.iter().map(|p| *p - base).collect();
        let dim = rank(&diffs);
        if dim < D {
            return Self::low_dimensional(&pts, dim);
        }
        let (vertices, facets) = if D == 3 {
            let p3: Vec<Point3> = pts.iter().map(to3).collect();
            let (v, f) = hull::hull3(&p3);
            let v = v.iter().map(from3).collect();
            let f = f
                .iter()
                .map(|f| Facet {
                    normal: from3(&f.normal),
                    offset: f.offset,
                })
                .collect();
            (v, f)
        } else {
            let p2: Vec<Point2> = pts.iter().map(to2).collect();
            let ccw = hull::monotone_chain(&p2);
            let mut f: Vec<Facet<D>> = hull::polygon_facets(&ccw)
                .iter()
                .map(|f| Facet {
                    normal: from2(&f.normal),
                    offset: f.offset,
                })
                .collect();
            f.sort();
            let mut v: Vec<LatticePoint<D>> = ccw.iter().map(from2).collect();
            v.sort();
            (v, f)
        };
        Self::from_parts(vertices, facets)
    }

    fn from_parts(vertices: Vec<LatticePoint<D>>, facets: Vec<Facet<D>>) -> Result<Self> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "{} vertices exceed the supported maximum of {MAX_VERTICES}",
                vertices.len()
            )));
        }
        let facet_masks = facets
            .iter()
            .map(|f| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| f.normal.dot(v) == f.offset)
                    .fold(0u64, |m, (i, _)| m | (1 << i))
            })
            .collect();
        Ok(Self {
            vertices,
            facets,
            facet_masks,
            dim: D,
            low: None,
            cycles: OnceLock::new(),
        })
    }

    fn low_dimensional(pts: &[LatticePoint<D>], dim: usize) -> Result<Self> {
        let chart = Chart::new(pts);
        debug_assert_eq!(chart.dim(), dim);
        let local: Vec<Vec<i64>> = pts
            .iter()
            .map(|p| {
                chart
                    .to_local(p)
                    .expect("points lie on their own affine lattice")
            })
            .collect();
        let (vertices, shape) = match dim {
            0 => (vec![pts[0]], LowDim::Point),
            1 => {
                let lo = local.iter().map(|c| c[0]).min().unwrap();
                let hi = local.iter().map(|c| c[0]).max().unwrap();
                let mut v = vec![chart.to_global(&[lo]), chart.to_global(&[hi])];
                v.sort();
                (v, LowDim::Segment(hi - lo))
            }
            _ => {
                let local2: Vec<Point2> =
                    local.iter().map(|c| LatticePoint([c[0], c[1]])).collect();
                let poly = Polytope::<2>::convex_hull(&local2)?;
                let mut v: Vec<_> = poly
                    .vertices()
                    .iter()
                    .map(|q| chart.to_global(&q.0))
                    .collect();
                v.sort();
                (v, LowDim::Polygon(Box::new(poly)))
            }
        };
        Ok(Self {
            vertices,
            facets: Vec::new(),
            facet_masks: Vec::new(),
            dim,
            low: Some((chart, shape)),
            cycles: OnceLock::new(),
        })
    }

    pub fn vertices(&self) -> &[LatticePoint<D>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet<D>] {
        &self.facets
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        D
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == D
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    /// Vertex indices of facet `f`.
    pub fn facet_vertices(&self, f: usize) -> Vec<usize> {
        mask_indices(self.facet_masks[f])
    }

    pub(crate) fn require_full(&self, what: &str) -> Result<()> {
        if self.is_full_dimensional() {
            Ok(())
        } else {
            Err(Error::Degenerate(format!(
                "{what} needs a full-dimensional polytope, got dimension {} in Z^{D}",
                self.dim
            )))
        }
    }

    pub fn contains(&self, p: &LatticePoint<D>) -> bool {
        match &self.low {
            None => self.facets.iter().all(|f| f.normal.dot(p) <= f.offset),
            Some((chart, shape)) => match chart.to_local(p) {
                None => false,
                Some(c) => match shape {
                    LowDim::Point => true,
                    LowDim::Segment(len) => {
                        let lo = chart.to_local(&self.vertices[0]).unwrap()[0];
                        let hi = chart.to_local(&self.vertices[1]).unwrap()[0];
                        let (lo, hi) = (lo.min(hi), lo.max(hi));
                        debug_assert_eq!(hi - lo, *len);
                        (lo..=hi).contains(&c[0])
                    }
                    LowDim::Polygon(poly) => poly.contains(&LatticePoint([c[0], c[1]])),
                },
            },
        }
    }

    /// Strict interior membership for a full-dimensional polytope.
    pub fn strictly_contains(&self, p: &LatticePoint<D>) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| f.normal.dot(p) < f.offset)
    }

    /// Hull of this polytope together with one more point.
    pub fn extend(&self, p: &LatticePoint<D>) -> Result<Self> {
        if !self.is_full_dimensional() || D == 2 {
            let mut pts = self.vertices.clone();
            pts.push(*p);
            return Self::convex_hull(&pts);
        }
        let mut verts: Vec<Point3> = self.vertices.iter().map(to3).collect();
        let mut facets: Vec<Facet<3>> = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: to3(&f.normal),
                offset: f.offset,
            })
            .collect();
        if !hull::insert_point(&mut verts, &mut facets, to3(p)) {
            return Ok(self.clone_fresh());
        }
        verts.sort();
        let v = verts.iter().map(from3).collect();
        let f = facets
            .iter()
            .map(|f| Facet {
                normal: from3(&f.normal),
                offset: f.offset,
            })
            .collect();
        Self::from_parts(v, f)
    }

    fn clone_fresh(&self) -> Self {
        let mut c = self.clone();
        c.cycles = OnceLock::new();
        if let Some(v) = self.cycles.get() {
            let _ = c.cycles.set(v.clone());
        }
        c
    }

    pub fn translate(&self, t: &LatticePoint<D>) -> Self {
        let pts: Vec<_> = self.vertices.iter().map(|v| *v + *t).collect();
        Self::convex_hull(&pts).expect("translation preserves the hull")
    }

    /// Image under `x -> m x + t`.
    pub fn map_affine(&self, m: &IntMatrix, t: &LatticePoint<D>) -> Result<Self> {
        if m.rows() != D || !m.is_square() {
            return Err(Error::Shape(format!("expected a {D}x{D} matrix")));
        }
        let pts: Vec<_> = self.vertices.iter().map(|v| m.apply(v) + *t).collect();
        Self::convex_hull(&pts)
    }

    /// Dilation `kP` for `k >= 1`.
    pub fn dilate(&self, k: i64) -> Self {
        let pts: Vec<_> = self.vertices.iter().map(|v| v.scale(k)).collect();
        Self::convex_hull(&pts).expect("dilation of a non-empty polytope")
    }
}

pub(crate) fn mask_indices(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out.push(i);
        m &= m - 1;
    }
    out
}

impl<const D: usize> PartialEq for Polytope<D> {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl<const D: usize> Eq for Polytope<D> {}

impl<const D: usize> fmt::Debug for Polytope<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{:?}", self.vertices)
    }
}

impl<const D: usize> fmt::Display for Polytope<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_points(&self.vertices))
    }
}

/// Convenience constructor for tests and examples.
pub fn conv<const D: usize>(points: &[[i64; D]]) -> Polytope<D> {
    let pts: Vec<_> = points.iter().map(|&c| LatticePoint(c)).collect();
    Polytope::convex_hull(&pts).expect("non-empty point list")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::zpw_simplex3;

    #[test]
    fn unit_tetrahedron_hull() {
        let p = conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        assert!(p.is_simplex());
    }

    #[test]
    fn cube_drops_center() {
        let mut pts = vec![[0, 0, 0]];
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    pts.push([x, y, z]);
                }
            }
        }
        let p = conv(&pts);
        assert_eq!(p.vertices().len(), 8);
        assert_eq!(p.facets().len(), 6);
        assert!(!p.vertices().contains(&LatticePoint([0, 0, 0])));
    }

    #[test]
    fn zpw_facets() {
        let p = zpw_simplex3(2);
        assert!(p.facets().contains(&Facet {
            normal: LatticePoint([-1, 0, 0]),
            offset: 0
        }));
        assert!(p.facets().contains(&Facet {
            normal: LatticePoint([9, 6, 1]),
            offset: 18
        }));
    }

    #[test]
    fn redundant_and_coplanar_points() {
        // square pyramid with extra points on a facet and an edge
        let p = conv(&[
            [0, 0, 0],
            [2, 0, 0],
            [0, 2, 0],
            [2, 2, 0],
            [1, 1, 2],
            [1, 0, 0],
            [1, 1, 0],
            [1, 1, 1],
        ]);
        assert_eq!(p.vertices().len(), 5);
        assert_eq!(p.facets().len(), 5);
    }

    #[test]
    fn low_dimensional_hulls() {
        let seg = conv(&[[0, 0, 0], [2, 4, 6], [1, 2, 3]]);
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.vertices().len(), 2);
        let tri = conv(&[[1, 0, 0], [0, 1, 0], [-1, -1, 0], [0, 0, 0]]);
        assert_eq!(tri.dim(), 2);
        assert_eq!(tri.vertices().len(), 3);
        assert!(tri.contains(&LatticePoint([0, 0, 0])));
        assert!(!tri.contains(&LatticePoint([0, 0, 1])));
        assert!(matches!(
            tri.interior_lattice_points(),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn empty_input() {
        assert!(matches!(Polytope::<3>::convex_hull(&[]), Err(Error::Empty)));
    }

    #[test]
    fn extend_matches_fresh_hull() {
        let p = conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [5, 5, 8]]);
        for q in [[-1, -1, -1], [2, 2, 3], [0, 0, 1], [1, 1, 0], [3, -2, 1]] {
            let ext = p.extend(&LatticePoint(q)).unwrap();
            let mut pts = p.vertices().to_vec();
            pts.push(LatticePoint(q));
            let fresh = Polytope::convex_hull(&pts).unwrap();
            assert_eq!(ext, fresh);
            assert_eq!(ext.facets(), fresh.facets());
        }
    }
}
