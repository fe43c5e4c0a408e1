//! Face structure, f-vectors and dual volumes.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::{det2, det3, LatticePoint, Point2, Rational};
use crate::{Error, Result};

use super::{hull, mask_indices, to2, to3, Polytope};

/// A face of a polytope given by the indices of the vertices lying on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceRef {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

impl<const D: usize> Polytope<D> {
    /// For each facet, its vertex indices in cyclic order starting from the
    /// lexicographically smallest vertex.
    pub fn facet_cycles(&self) -> &[Vec<usize>] {
        self.cycles.get_or_init(|| {
            (0..self.facets.len())
                .map(|f| {
                    let idx = mask_indices(self.facet_masks[f]);
                    if D == 2 || idx.len() <= 3 {
                        return idx;
                    }
                    let n = to3(&self.facets[f].normal);
                    let k = (0..3).rev().find(|&k| n[k] != 0).expect("non-zero normal");
                    let keep: Vec<usize> = (0..3).filter(|&i| i != k).collect();
                    let proj: Vec<Point2> = idx
                        .iter()
                        .map(|&i| {
                            let p = to3(&self.vertices[i]);
                            LatticePoint([p[keep[0]], p[keep[1]]])
                        })
                        .collect();
                    let ring = hull::monotone_chain(&proj);
                    debug_assert_eq!(ring.len(), idx.len());
                    let mut cyc: Vec<usize> = ring
                        .iter()
                        .map(|q| idx[proj.iter().position(|p| p == q).unwrap()])
                        .collect();
                    let start = (0..cyc.len())
                        .min_by_key(|&i| self.vertices[cyc[i]])
                        .unwrap();
                    cyc.rotate_left(start);
                    cyc
                })
                .collect()
        })
    }

    /// Vertex pairs spanning an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        if !self.is_full_dimensional() {
            let n = self.vertices.len();
            return match self.dim {
                1 => vec![(0, 1)],
                2 => {
                    // polygon in a plane: consecutive vertices of the local hull
                    let ring = self.local_ring();
                    (0..n)
                        .map(|i| {
                            let (a, b) = (ring[i], ring[(i + 1) % n]);
                            (a.min(b), a.max(b))
                        })
                        .collect()
                }
                _ => Vec::new(),
            };
        }
        if D == 2 {
            let mut e: Vec<(usize, usize)> = self
                .facet_masks
                .iter()
                .map(|&m| {
                    let i = mask_indices(m);
                    (i[0], i[1])
                })
                .collect();
            e.sort();
            return e;
        }
        let n = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let both = (1u64 << i) | (1u64 << j);
                let shared = self
                    .facet_masks
                    .iter()
                    .filter(|&&m| m & both == both)
                    .count();
                if shared >= 2 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Vertex indices of a two-dimensional polytope in cyclic order.
    fn local_ring(&self) -> Vec<usize> {
        let (chart, _) = self.low.as_ref().expect("low-dimensional");
        let local: Vec<Point2> = self
            .vertices
            .iter()
            .map(|v| {
                let c = chart.to_local(v).unwrap();
                LatticePoint([c[0], c[1]])
            })
            .collect();
        hull::monotone_chain(&local)
            .iter()
            .map(|q| local.iter().position(|p| p == q).unwrap())
            .collect()
    }

    /// `(vertices, edges, facets)` of a 3-polytope.
    pub fn f_vector(&self) -> Result<(usize, usize, usize)> {
        if D != 3 || !self.is_full_dimensional() {
            return Err(Error::Degenerate("f-vector needs a 3-polytope".into()));
        }
        Ok((self.vertices.len(), self.edges().len(), self.facets.len()))
    }

    /// All proper faces, of every dimension, including the polytope itself
    /// when it is not full-dimensional.
    pub fn faces(&self) -> Vec<FaceRef> {
        let mut out: Vec<FaceRef> = (0..self.vertices.len())
            .map(|i| FaceRef {
                dim: 0,
                vertices: vec![i],
            })
            .collect();
        if self.dim >= 1 {
            out.extend(self.edges().into_iter().map(|(a, b)| FaceRef {
                dim: 1,
                vertices: vec![a, b],
            }));
        }
        if self.dim == 2 && !self.is_full_dimensional() {
            out.push(FaceRef {
                dim: 2,
                vertices: (0..self.vertices.len()).collect(),
            });
        }
        if D == 3 && self.is_full_dimensional() {
            out.extend(self.facet_masks.iter().map(|&m| FaceRef {
                dim: 2,
                vertices: mask_indices(m),
            }));
        }
        out
    }

    /// Normalized volume of the polar dual `{ y : <y, x - o> <= 1 }`,
    /// maximized over the interior lattice points `o`.
    pub fn dual_volume(&self) -> Result<Rational> {
        let interior = self.interior_lattice_points()?;
        if interior.is_empty() {
            return Err(Error::Hollow(
                "dual volume needs an interior lattice point".into(),
            ));
        }
        Ok(interior
            .iter()
            .map(|o| self.dual_volume_at(o))
            .max()
            .expect("non-empty"))
    }

    /// Normalized volume of the polar dual about a fixed interior point.
    pub fn dual_volume_at(&self, o: &LatticePoint<D>) -> Rational {
        let heights: Vec<i64> = self.facets.iter().map(|f| f.slack(o)).collect();
        debug_assert!(heights.iter().all(|&h| h > 0));
        let mut total = Rational::zero();
        for v in 0..self.vertices.len() {
            let around = self.facets_around_vertex(v);
            if D == 2 {
                let (a, b) = (around[0], around[1]);
                let det = det2(&to2(&self.facets[a].normal), &to2(&self.facets[b].normal)).abs();
                total += Rational::new(BigInt::from(det), BigInt::from(heights[a] * heights[b]));
                continue;
            }
            let a = around[0];
            for w in around[1..].windows(2) {
                let (b, c) = (w[0], w[1]);
                let det = det3(
                    &to3(&self.facets[a].normal),
                    &to3(&self.facets[b].normal),
                    &to3(&self.facets[c].normal),
                )
                .abs();
                let den = BigInt::from(heights[a]) * heights[b] * heights[c];
                total += Rational::new(BigInt::from(det), den);
            }
        }
        total
    }

    /// Facets through vertex `v`, in cyclic order around it.
    fn facets_around_vertex(&self, v: usize) -> Vec<usize> {
        let bit = 1u64 << v;
        let incident: Vec<usize> = (0..self.facets.len())
            .filter(|&f| self.facet_masks[f] & bit != 0)
            .collect();
        if D == 2 || incident.len() <= 3 {
            return incident;
        }
        // two facets are adjacent around v when they share an edge through v
        let adjacent =
            |a: usize, b: usize| (self.facet_masks[a] & self.facet_masks[b]).count_ones() >= 2;
        let mut order = vec![incident[0]];
        let mut used = vec![false; incident.len()];
        used[0] = true;
        while order.len() < incident.len() {
            let last = *order.last().unwrap();
            let next = (0..incident.len())
                .find(|&i| !used[i] && adjacent(last, incident[i]))
                .expect("facets around a vertex form a cycle");
            used[next] = true;
            order.push(incident[next]);
        }
        order
    }
}

#[cfg(test)]
mod tests {
    use super::super::conv;
    use super::*;
    use crate::exact::rational;

    fn cube() -> Polytope<3> {
        let mut pts = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    pts.push([x, y, z]);
                }
            }
        }
        conv(&pts)
    }

    #[test]
    fn f_vectors() {
        let t = conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(t.f_vector().unwrap(), (4, 6, 4));
        assert_eq!(cube().f_vector().unwrap(), (8, 12, 6));
        let oct = conv(&[
            [1, 0, 0],
            [-1, 0, 0],
            [0, 1, 0],
            [0, -1, 0],
            [0, 0, 1],
            [0, 0, -1],
        ]);
        assert_eq!(oct.f_vector().unwrap(), (6, 12, 8));
    }

    #[test]
    fn cube_dual_is_cross_polytope() {
        assert_eq!(cube().dual_volume().unwrap(), rational(8, 1));
    }

    #[test]
    fn reflexive_simplex_dual() {
        // the dual of conv{-1, e1, e2, e3} is conv{(-1,-1,-1) + 4 e_i, (-1,-1,-1)}
        let p = conv(&[[-1, -1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let q = conv(&[[-1, -1, -1], [3, -1, -1], [-1, 3, -1], [-1, -1, 3]]);
        let expected = q.normalized_volume().unwrap();
        assert_eq!(expected, 64);
        assert_eq!(p.dual_volume().unwrap(), rational(expected, 1));
    }

    #[test]
    fn largest_dual_volume_example() {
        let p = conv(&[[-1, -1, -1], [0, -1, -1], [-1, 0, -1], [7, 7, 8]]);
        assert_eq!(p.dual_volume().unwrap(), rational(243, 2));
    }

    #[test]
    fn polygon_dual() {
        let sq = conv(&[[-1, -1], [1, -1], [-1, 1], [1, 1]]);
        assert_eq!(sq.dual_volume().unwrap(), rational(4, 1));
    }

    #[test]
    fn hollow_dual_rejected() {
        let t = conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(matches!(t.dual_volume(), Err(Error::Hollow(_))));
    }

    #[test]
    fn faces_of_all_dimensions() {
        let c = cube();
        let f = c.faces();
        assert_eq!(f.iter().filter(|x| x.dim == 0).count(), 8);
        assert_eq!(f.iter().filter(|x| x.dim == 1).count(), 12);
        assert_eq!(f.iter().filter(|x| x.dim == 2).count(), 6);
        let cyc = &c.facet_cycles()[0];
        assert_eq!(cyc.len(), 4);
    }
}
