//! Lattice-point enumeration and volumes.

use crate::exact::{cross, LatticePoint, Point3};
use crate::Result;

use super::{LowDim, Polytope};

impl<const D: usize> Polytope<D> {
    /// Calls `f` on every lattice point of a full-dimensional polytope.
    /// Stops early when `f` returns `false`.
    fn scan_full(&self, strict: bool, f: &mut dyn FnMut(LatticePoint<D>) -> bool) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            for i in 0..D {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        let last = D - 1;
        let mut p = lo;
        loop {
            // bound the last coordinate by the facets
            let mut a = lo[last];
            let mut b = hi[last];
            let mut ok = true;
            for fct in &self.facets {
                let c = fct.normal[last];
                let rest: i64 = (0..last).map(|i| fct.normal[i] * p[i]).sum();
                let mut rhs = fct.offset - rest;
                if strict {
                    rhs -= 1;
                }
                if c == 0 {
                    if rhs < 0 {
                        ok = false;
                        break;
                    }
                } else if c > 0 {
                    b = b.min(rhs.div_euclid(c));
                } else {
                    // c * x <= rhs  <=>  x >= ceil(rhs / c)
                    a = a.max(-(rhs.div_euclid(-c)));
                }
            }
            if ok {
                for x in a..=b {
                    p[last] = x;
                    if !f(p) {
                        return;
                    }
                }
            }
            // odometer over the first D - 1 coordinates
            let mut i = 0;
            loop {
                if i == last {
                    return;
                }
                if p[i] < hi[i] {
                    p[i] += 1;
                    break;
                }
                p[i] = lo[i];
                i += 1;
            }
        }
    }

    /// All lattice points of `P`, sorted lexicographically.
    pub fn lattice_points(&self) -> Vec<LatticePoint<D>> {
        let mut out = Vec::new();
        match &self.low {
            None => self.scan_full(false, &mut |p| {
                out.push(p);
                true
            }),
            Some((chart, shape)) => match shape {
                LowDim::Point => out.push(self.vertices[0]),
                LowDim::Segment(_) => {
                    let a = self.vertices[0];
                    let step = self.vertices[1] - a;
                    let g = step.content();
                    let step = LatticePoint(step.0.map(|x| x / g));
                    for i in 0..=g {
                        out.push(a + step.scale(i));
                    }
                }
                LowDim::Polygon(poly) => {
                    out.extend(poly.lattice_points().iter().map(|q| chart.to_global(&q.0)));
                }
            },
        }
        out.sort();
        out
    }

    /// Lattice points in the strict interior of a full-dimensional polytope.
    pub fn interior_lattice_points(&self) -> Result<Vec<LatticePoint<D>>> {
        self.require_full("interior_lattice_points")?;
        let mut out = Vec::new();
        self.scan_full(true, &mut |p| {
            out.push(p);
            true
        });
        out.sort();
        Ok(out)
    }

    /// Number of interior lattice points, counting no further than `limit + 1`.
    pub fn interior_count_up_to(&self, limit: usize) -> usize {
        if !self.is_full_dimensional() {
            return 0;
        }
        let mut n = 0;
        self.scan_full(true, &mut |_| {
            n += 1;
            n <= limit
        });
        n
    }

    /// Lattice points in the relative interior, for any dimension.
    pub fn relative_interior_points(&self) -> Vec<LatticePoint<D>> {
        match &self.low {
            None => self.interior_lattice_points().expect("full-dimensional"),
            Some((chart, shape)) => match shape {
                LowDim::Point => vec![self.vertices[0]],
                LowDim::Segment(_) => {
                    let pts = self.lattice_points();
                    pts[1..pts.len() - 1].to_vec()
                }
                LowDim::Polygon(poly) => {
                    let mut v: Vec<_> = poly
                        .interior_lattice_points()
                        .expect("polygon chart is full-dimensional")
                        .iter()
                        .map(|q| chart.to_global(&q.0))
                        .collect();
                    v.sort();
                    v
                }
            },
        }
    }

    pub fn boundary_lattice_points(&self) -> Vec<LatticePoint<D>> {
        self.lattice_points()
            .into_iter()
            .filter(|p| !self.strictly_contains(p))
            .collect()
    }

    /// Normalized lattice volume of facet `f` in its induced lattice.
    pub fn facet_area(&self, f: usize) -> i64 {
        let idx = &self.facet_cycles()[f];
        let v = &self.vertices;
        if D == 2 {
            return (v[idx[1]] - v[idx[0]]).content();
        }
        let a = to3(&v[idx[0]]);
        let mut area = 0;
        for w in idx[1..].windows(2) {
            let b = to3(&v[w[0]]) - a;
            let c = to3(&v[w[1]]) - a;
            area += cross(&b, &c).content();
        }
        area
    }

    /// `d!` times the Euclidean volume.
    pub fn normalized_volume(&self) -> Result<i64> {
        self.require_full("normalized_volume")?;
        let v0 = self.vertices[0];
        Ok((0..self.facets.len())
            .map(|f| self.facets[f].slack(&v0) * self.facet_area(f))
            .sum())
    }

    /// Sum of the normalized facet volumes, each in its own induced lattice.
    pub fn boundary_volume(&self) -> Result<i64> {
        self.require_full("boundary_volume")?;
        Ok((0..self.facets.len()).map(|f| self.facet_area(f)).sum())
    }

    /// Normalized volume in the lattice of the affine hull, for any dimension.
    pub fn relative_volume(&self) -> i64 {
        match &self.low {
            None => self.normalized_volume().expect("full-dimensional"),
            Some((_, LowDim::Point)) => 1,
            Some((_, LowDim::Segment(len))) => *len,
            Some((_, LowDim::Polygon(poly))) => poly.normalized_volume().expect("full polygon"),
        }
    }
}

fn to3<const D: usize>(p: &LatticePoint<D>) -> Point3 {
    super::to3(p)
}

#[cfg(test)]
fn pick_check(p: &Polytope<2>) -> bool {
    let vol = p.normalized_volume().unwrap() as usize;
    let int = p.interior_lattice_points().unwrap().len();
    let bd = p.boundary_lattice_points().len();
    vol + 2 == 2 * int + bd
}

#[cfg(test)]
mod tests {
    use super::super::conv;
    use super::*;
    use crate::ehrhart::zpw_simplex3;
    use crate::exact::Point2;
    use proptest::prelude::*;

    #[test]
    fn counts_for_small_examples() {
        let t = conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(t.lattice_points().len(), 4);
        assert!(t.interior_lattice_points().unwrap().is_empty());
        assert_eq!(t.normalized_volume().unwrap(), 1);
        assert_eq!(t.boundary_volume().unwrap(), 4);

        let tri = conv(&[[0, 0], [3, 0], [0, 3]]);
        assert_eq!(tri.lattice_points().len(), 10);
        assert_eq!(tri.normalized_volume().unwrap(), 9);

        let thin = conv(&[[0, 0], [5, 0], [0, 1]]);
        assert_eq!(thin.normalized_volume().unwrap(), 5);
    }

    #[test]
    fn zpw_two_counts() {
        let s = zpw_simplex3(2);
        assert_eq!(s.lattice_points().len(), 55);
        assert_eq!(s.normalized_volume().unwrap(), 108);
        assert_eq!(s.boundary_volume().unwrap(), 102);
        assert_eq!(s.interior_lattice_points().unwrap().len(), 2);
    }

    #[test]
    fn table_two_interior_points() {
        let p = conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [5, 5, 8]]);
        assert_eq!(
            p.interior_lattice_points().unwrap(),
            vec![LatticePoint([1, 1, 1]), LatticePoint([2, 2, 3])]
        );
        assert_eq!(p.interior_count_up_to(1), 2);
        assert_eq!(p.interior_count_up_to(5), 2);
    }

    #[test]
    fn reflexive_simplex_boundary_volume() {
        // facet-by-facet oracle: each facet area is |cross| / |primitive normal|
        let p = conv(&[[-1, -1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let v = p.vertices().to_vec();
        let mut total = 0;
        for skip in 0..4 {
            let t: Vec<_> = (0..4).filter(|&i| i != skip).map(|i| v[i]).collect();
            total += cross(&(t[1] - t[0]), &(t[2] - t[0])).content();
        }
        assert_eq!(p.boundary_volume().unwrap(), total);
        assert_eq!(total, 4);
    }

    #[test]
    fn relative_interiors() {
        let seg = conv(&[[0, 0, 0], [3, 6, 9]]);
        assert_eq!(seg.relative_interior_points().len(), 2);
        assert_eq!(seg.relative_volume(), 3);
        let tri = conv(&[[1, 0, 5], [0, 1, 5], [-1, -1, 5]]);
        assert_eq!(
            tri.relative_interior_points(),
            vec![LatticePoint([0, 0, 5])]
        );
        assert_eq!(tri.relative_volume(), 3);
        assert_eq!(tri.lattice_points().len(), 4);
    }

    proptest! {
        #[test]
        fn pick_on_random_polygons(pts in proptest::collection::vec((-6i64..=6, -6i64..=6), 3..9)) {
            let pts: Vec<Point2> = pts.iter().map(|&(x, y)| LatticePoint([x, y])).collect();
            let p = Polytope::convex_hull(&pts).unwrap();
            prop_assume!(p.is_full_dimensional());
            prop_assert!(pick_check(&p));
        }

        #[test]
        fn interior_plus_boundary(pts in proptest::collection::vec((-4i64..=4, -4i64..=4, -4i64..=4), 4..9)) {
            let pts: Vec<Point3> = pts.iter().map(|&(x, y, z)| LatticePoint([x, y, z])).collect();
            let p = Polytope::convex_hull(&pts).unwrap();
            prop_assume!(p.is_full_dimensional());
            let all = p.lattice_points().len();
            let int = p.interior_lattice_points().unwrap().len();
            prop_assert_eq!(all, int + p.boundary_lattice_points().len());
            // brute force over the bounding box
            let brute = (-4..=4).flat_map(|x| (-4..=4).flat_map(move |y| (-4..=4).map(move |z| LatticePoint([x, y, z]))))
                .filter(|q| p.contains(q)).count();
            prop_assert_eq!(all, brute);
        }

        #[test]
        fn nested_interiors_are_monotone(pts in proptest::collection::vec((-4i64..=4, -4i64..=4, -4i64..=4), 5..10)) {
            let pts: Vec<Point3> = pts.iter().map(|&(x, y, z)| LatticePoint([x, y, z])).collect();
            let q = Polytope::convex_hull(&pts[..pts.len() - 1]).unwrap();
            let p = Polytope::convex_hull(&pts).unwrap();
            prop_assume!(q.is_full_dimensional());
            let outer = p.interior_lattice_points().unwrap();
            for x in q.interior_lattice_points().unwrap() {
                prop_assert!(outer.contains(&x));
            }
        }
    }
}
