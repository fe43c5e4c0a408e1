//! Classification of one- and two-point triangles and tetrahedra.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::exact::{adjugate_small, LatticePoint, Point2, Point3};
use crate::normal_form::{affine_normal_form, CanonicalKey};
use crate::polytope::Polytope;

use super::{is_minimal, segment_weights, weights_of_simplex, Weights};

/// Equivalence classes of simplices together with their weight systems.
#[derive(Clone, Debug)]
pub struct SimplexClassification<const D: usize> {
    /// One representative per class, ordered by canonical key.
    pub classes: Vec<Polytope<D>>,
    pub keys: Vec<CanonicalKey>,
    /// Weights about every interior lattice point of every class.
    pub weights: BTreeSet<Weights>,
}

pub type TetraClassification = SimplexClassification<3>;

impl<const D: usize> SimplexClassification<D> {
    fn from_candidates(candidates: Vec<Polytope<D>>) -> Self {
        let keyed: Vec<(CanonicalKey, Polytope<D>)> = candidates
            .into_par_iter()
            .map(|p| {
                (
                    affine_normal_form(&p).expect("full-dimensional candidate"),
                    p,
                )
            })
            .collect();
        let mut map = BTreeMap::new();
        for (k, p) in keyed {
            map.entry(k).or_insert(p);
        }
        let mut weights = BTreeSet::new();
        for p in map.values() {
            for o in p.interior_lattice_points().expect("full-dimensional") {
                weights.insert(weights_of_simplex(p, &o).expect("interior point"));
            }
        }
        let (keys, classes) = map.into_iter().unzip();
        Self {
            classes,
            keys,
            weights,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn max_volume(&self) -> i64 {
        self.classes
            .iter()
            .map(|p| p.normalized_volume().unwrap())
            .max()
            .unwrap_or(0)
    }
}

/// Calls `f` with the rows of every `D x D` Hermite normal form of
/// determinant at most `max_det`: upper triangular, positive diagonal, and
/// every entry above the diagonal reduced modulo the diagonal entry of its
/// column.
pub(crate) fn for_each_hnf<const D: usize>(max_det: i64, f: &mut dyn FnMut(&[[i64; D]; D])) {
    fn diag<const D: usize>(
        i: usize,
        left: i64,
        h: &mut [[i64; D]; D],
        f: &mut dyn FnMut(&[[i64; D]; D]),
    ) {
        if i == D {
            upper(0, 1, h, f);
            return;
        }
        for d in 1..=left {
            h[i][i] = d;
            diag(i + 1, left / d, h, f);
        }
    }
    fn upper<const D: usize>(
        i: usize,
        j: usize,
        h: &mut [[i64; D]; D],
        f: &mut dyn FnMut(&[[i64; D]; D]),
    ) {
        if j == D {
            f(h);
            return;
        }
        let (ni, nj) = if i + 1 < j { (i + 1, j) } else { (0, j + 1) };
        for x in 0..h[j][j] {
            h[i][j] = x;
            upper(ni, nj, h, f);
        }
        h[i][j] = 0;
    }
    let mut h = [[0i64; D]; D];
    diag(0, max_det, &mut h, f);
}

/// Interior lattice points of `conv{0, columns of h}`, or `None` once more
/// than `limit` are found.
fn hnf_interior<const D: usize>(h: &[[i64; D]; D], limit: usize) -> Option<Vec<LatticePoint<D>>> {
    let rows: Vec<Vec<i64>> = h.iter().map(|r| r.to_vec()).collect();
    let det: i64 = (0..D).map(|i| h[i][i]).product();
    let adj = adjugate_small(&rows);
    let det128 = det as i128;
    let mut out = Vec::new();
    let mut x = [0i64; D];
    loop {
        // mu = adj * x, the barycentric coordinates scaled by det
        let mut mu = [0i128; D];
        let mut total = 0i128;
        let mut positive = true;
        for (i, row) in adj.iter().enumerate() {
            let a: i128 = row.iter().zip(&x).map(|(c, &xi)| c * xi as i128).sum();
            mu[i] = a.rem_euclid(det128);
            positive &= mu[i] > 0;
            total += mu[i];
        }
        if positive && total < det128 {
            let mut p = [0i64; D];
            for (r, pr) in p.iter_mut().enumerate() {
                let s: i128 = (0..D).map(|j| mu[j] * h[r][j] as i128).sum();
                *pr = (s / det128) as i64;
            }
            out.push(LatticePoint(p));
            if out.len() > limit {
                return None;
            }
        }
        let mut i = 0;
        loop {
            if i == D {
                return Some(out);
            }
            x[i] += 1;
            if x[i] < h[i][i] {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// Every simplex `conv{0, columns of H}` for Hermite normal forms `H` with
/// determinant at most `max_det` and exactly `k` interior lattice points.
///
/// Every lattice simplex is equivalent to one of these.
pub fn hnf_simplices<const D: usize>(max_det: i64, k: usize) -> Vec<Polytope<D>> {
    let mut out = Vec::new();
    for_each_hnf::<D>(max_det, &mut |h| {
        if let Some(int) = hnf_interior(h, k) {
            if int.len() == k {
                let mut pts = vec![LatticePoint::zero()];
                for j in 0..D {
                    let mut c = [0; D];
                    for (i, ci) in c.iter_mut().enumerate() {
                        *ci = h[i][j];
                    }
                    pts.push(LatticePoint(c));
                }
                out.push(Polytope::convex_hull(&pts).expect("simplex"));
            }
        }
    });
    out
}

/// `k`-point triangles of normalized area at most `max_det`, by the Hermite
/// normal form search.
pub fn triangles_by_hnf(max_det: i64, k: usize) -> SimplexClassification<2> {
    SimplexClassification::from_candidates(hnf_simplices::<2>(max_det, k))
}

/// The one-point triangles and `W_{2,1}`.
pub fn classify_1point_triangles() -> SimplexClassification<2> {
    triangles_by_hnf(9, 1)
}

/// The two-point triangles and `W_{2,2}`, by the restricted search with
/// interior points `(0,0)`, `(1,0)` and a vertex at `(0,1)`.
pub fn classify_2point_triangles() -> SimplexClassification<2> {
    let v1: Point2 = LatticePoint([0, 1]);
    let want = [LatticePoint([0, 0]), LatticePoint([1, 0])];
    let mut found = Vec::new();
    for y2 in -3..=-1 {
        for x2 in -8..=10 {
            let v2 = LatticePoint([x2, y2]);
            for y3 in -3..=5 {
                for x3 in -10..=10 {
                    let v3 = LatticePoint([x3, y3]);
                    let Ok(t) = Polytope::convex_hull(&[v1, v2, v3]) else {
                        continue;
                    };
                    if !t.is_full_dimensional() || !t.is_simplex() {
                        continue;
                    }
                    if t.interior_count_up_to(2) == 2
                        && t.interior_lattice_points().unwrap() == want
                    {
                        found.push(t);
                    }
                }
            }
        }
    }
    SimplexClassification::from_candidates(found)
}

/// The one-point tetrahedra and `W_{3,1}`, by the Hermite normal form search
/// up to volume 72.
pub fn enumerate_1point_tetrahedra() -> TetraClassification {
    SimplexClassification::from_candidates(hnf_simplices::<3>(72, 1))
}

/// Simplices having a vertex `v` such that no face through `v` has lattice
/// points in its relative interior.
pub fn filter_special<const D: usize>(simplices: &[Polytope<D>]) -> Vec<Polytope<D>> {
    simplices
        .iter()
        .filter(|s| is_special(s))
        .cloned()
        .collect()
}

fn is_special<const D: usize>(s: &Polytope<D>) -> bool {
    let v = s.vertices();
    let n = v.len();
    (0..n).any(|a| {
        // proper faces through a: subsets of the other vertices of size 1..n-2
        (1u32..(1 << n))
            .filter(|m| m & (1 << a) == 0)
            .filter(|m| (m.count_ones() as usize) <= n - 2)
            .all(|m| {
                let mut pts = vec![v[a]];
                pts.extend((0..n).filter(|i| m & (1 << i) != 0).map(|i| v[i]));
                Polytope::convex_hull(&pts)
                    .expect("non-empty")
                    .relative_interior_points()
                    .is_empty()
            })
    })
}

/// Options for [`classify_2point_tetrahedra_with`].
#[derive(Clone, Copy, Debug)]
pub struct PossibilityOptions {
    /// Use every one-point tetrahedron as `S_2`, not only the special ones.
    pub all_tetrahedra: bool,
    /// Upper bound on `c` in the two-triangle search.
    pub max_c: i64,
}

impl Default for PossibilityOptions {
    fn default() -> Self {
        Self {
            all_tetrahedra: false,
            max_c: 7,
        }
    }
}

/// Result of [`classify_2point_tetrahedra`].
#[derive(Clone, Debug)]
pub struct TwoPointTetrahedra {
    pub all: TetraClassification,
    /// Keys produced by the cone construction over a one-point tetrahedron.
    pub from_a: BTreeSet<CanonicalKey>,
    /// Keys produced by the two-triangle construction.
    pub from_b: BTreeSet<CanonicalKey>,
}

impl TwoPointTetrahedra {
    /// Classes found only by the two-triangle construction.
    pub fn b_only(&self) -> usize {
        self.from_b.difference(&self.from_a).count()
    }
}

pub fn classify_2point_tetrahedra() -> TwoPointTetrahedra {
    classify_2point_tetrahedra_with(
        &enumerate_1point_tetrahedra(),
        PossibilityOptions::default(),
    )
}

pub fn classify_2point_tetrahedra_with(
    one_point: &TetraClassification,
    opts: PossibilityOptions,
) -> TwoPointTetrahedra {
    let w11 = segment_weights(1);
    let w21 = super::w21();
    let w31 = one_point.weights.clone();
    let tables: [Vec<Weights>; 3] = [
        w11.into_iter().collect(),
        w21.into_iter().collect(),
        w31.into_iter().collect(),
    ];
    let seeds = if opts.all_tetrahedra {
        one_point.classes.clone()
    } else {
        filter_special(&one_point.classes)
    };
    let a: Vec<Polytope3> = seeds
        .par_iter()
        .flat_map_iter(|s2| possibility_a(s2, &tables))
        .collect();
    let b = possibility_b(opts.max_c);
    let a_cls = SimplexClassification::from_candidates(a.clone());
    let b_cls = SimplexClassification::from_candidates(b.clone());
    let mut all_candidates = a_cls.classes.clone();
    all_candidates.extend(b_cls.classes.iter().cloned());
    TwoPointTetrahedra {
        all: SimplexClassification::from_candidates(all_candidates),
        from_a: a_cls.keys.into_iter().collect(),
        from_b: b_cls.keys.into_iter().collect(),
    }
}

type Polytope3 = Polytope<3>;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Two-point tetrahedra `conv(S_2 ∪ {u_k})` where a one-point `k`-simplex
/// `S_1` has its interior point at a vertex of `S_2` and `o_2` as a vertex.
fn possibility_a(s2: &Polytope3, tables: &[Vec<Weights>; 3]) -> Vec<Polytope3> {
    let v = s2.vertices();
    let o2 = s2.interior_lattice_points().expect("full-dimensional")[0];
    let mut points: BTreeSet<Point3> = BTreeSet::new();
    for k in 1..=3usize {
        let perms = permutations(k + 1);
        // subsets of size k - 1 and a distinct anchor i0
        for mask in 0u32..16 {
            if mask.count_ones() as usize != k - 1 {
                continue;
            }
            for i0 in (0..4).filter(|i| mask & (1 << i) == 0) {
                let o1 = v[i0];
                let mut u = vec![o2];
                u.extend((0..4).filter(|i| mask & (1 << i) != 0).map(|i| v[i]));
                for lam in &tables[k - 1] {
                    let lam = lam.as_slice();
                    for tau in &perms {
                        let mut num = LatticePoint::<3>::zero();
                        for (j, uj) in u.iter().enumerate() {
                            num = num + (*uj - o1).scale(lam[tau[j]]);
                        }
                        let den = lam[tau[k]];
                        if num.0.iter().any(|x| x % den != 0) {
                            continue;
                        }
                        let uk = o1 - LatticePoint(num.0.map(|x| x / den));
                        points.insert(uk);
                    }
                }
            }
        }
    }
    points
        .into_iter()
        .filter(|p| !s2.contains(p))
        .filter_map(|p| {
            let s = s2.extend(&p).ok()?;
            (s.is_simplex() && s.interior_count_up_to(2) == 2).then_some(s)
        })
        .collect()
}

/// Two-point tetrahedra built from two one-point triangles meeting along the
/// line through the interior points, with `0 <= a, b < c <= max_c`
/// (and `a <= b` when the first triangle is the unimodular one).
pub fn possibility_b(max_c: i64) -> Vec<Polytope3> {
    let o2: Point3 = LatticePoint([-1, -1, 0]);
    let s1_edges = [
        [LatticePoint([1, 0, 0]), LatticePoint([0, 1, 0])],
        [LatticePoint([2, 1, 0]), LatticePoint([0, 1, 0])],
    ];
    let mut out = Vec::new();
    for (e, [v1, v2]) in s1_edges.into_iter().enumerate() {
        for c in 1..=max_c {
            for b in 0..c {
                // the second edge has no symmetry swapping the first two coordinates
                let a_max = if e == 0 { b } else { c - 1 };
                for a in 0..=a_max {
                    let v3 = LatticePoint([a, b, c]);
                    for m in [3, 4] {
                        let v4 = o2.scale(m) - v3;
                        let s = Polytope::convex_hull(&[v1, v2, v3, v4]).expect("non-empty");
                        if s.is_full_dimensional()
                            && s.is_simplex()
                            && s.interior_count_up_to(2) == 2
                        {
                            out.push(s);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The two-point tetrahedra that are minimal.
pub fn minimal_2point_tetrahedra(all: &TetraClassification) -> Vec<Polytope3> {
    all.classes
        .iter()
        .filter(|p| is_minimal(p).unwrap_or(false))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_counts_in_the_plane() {
        // number of index-n sublattices of Z^2 is sigma(n)
        let mut by_det = BTreeMap::new();
        for_each_hnf::<2>(6, &mut |h| {
            *by_det.entry(h[0][0] * h[1][1]).or_insert(0) += 1
        });
        assert_eq!(
            by_det.values().copied().collect::<Vec<_>>(),
            vec![1, 3, 4, 7, 6, 12]
        );
    }

    #[test]
    fn hnf_interior_matches_scan() {
        for_each_hnf::<3>(12, &mut |h| {
            let fast = hnf_interior(h, 100).unwrap();
            let mut pts = vec![LatticePoint::zero()];
            for j in 0..3 {
                pts.push(LatticePoint([h[0][j], h[1][j], h[2][j]]));
            }
            let p = Polytope::convex_hull(&pts).unwrap();
            let mut fast = fast;
            fast.sort();
            assert_eq!(fast, p.interior_lattice_points().unwrap());
        });
    }

    #[test]
    fn one_point_triangles() {
        let c = classify_1point_triangles();
        assert_eq!(c.len(), 5);
        let w: Vec<String> = c.weights.iter().map(|w| w.to_string()).collect();
        assert_eq!(w, ["(1,1,1)", "(1,1,2)", "(1,2,3)"]);
        assert_eq!(filter_special(&c.classes).len(), 2);
    }

    #[test]
    fn two_point_triangles() {
        let c = classify_2point_triangles();
        assert_eq!(c.len(), 5);
        assert_eq!(c.weights.len(), 8);
        let oracle = triangles_by_hnf(12, 2);
        assert_eq!(oracle.keys, c.keys);
    }

    #[test]
    fn two_triangle_search_is_nonempty() {
        assert!(!possibility_b(7).is_empty());
    }
}
