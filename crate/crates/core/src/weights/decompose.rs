//! Splitting a two-point tetrahedron into two one-point simplices along the
//! line through its interior points.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::{Point3, Rational};
use crate::polytope::Polytope;
use crate::{Error, Result};

/// `S = conv(S_1 ∪ S_2)` with `o_2` a vertex of `S_1`, `o_1` a vertex of `S_2`,
/// each `S_i` having a single relative interior lattice point.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub o1: Point3,
    pub o2: Point3,
    pub s1: Polytope<3>,
    pub s2: Polytope<3>,
    pub shared_vertices: usize,
}

impl Decomposition {
    /// Checks all defining conditions against the original tetrahedron.
    pub fn is_valid(&self, s: &Polytope<3>) -> bool {
        let mut pts = self.s1.vertices().to_vec();
        pts.extend_from_slice(self.s2.vertices());
        let hull_ok = Polytope::convex_hull(&pts)
            .map(|h| h == *s)
            .unwrap_or(false);
        hull_ok
            && self.s1.is_simplex()
            && self.s2.is_simplex()
            && self.s1.vertices().contains(&self.o2)
            && self.s2.vertices().contains(&self.o1)
            && self.s1.relative_interior_points() == vec![self.o1]
            && self.s2.relative_interior_points() == vec![self.o2]
            && self.shared_vertices + 4 == self.s1.dim() + self.s2.dim()
    }
}

/// Vertices of the smallest face of `s` containing the point where the ray
/// from `from` through `to` leaves `s`.
fn exit_face(s: &Polytope<3>, from: &Point3, to: &Point3) -> Vec<Point3> {
    let dir = *to - *from;
    // minimize slack(to) / <n, dir> over facets the ray approaches
    let mut best: Option<Rational> = None;
    let mut tight = Vec::new();
    for (i, f) in s.facets().iter().enumerate() {
        let rate = f.normal.dot(&dir);
        if rate <= 0 {
            continue;
        }
        let t = Rational::new(BigInt::from(f.slack(to)), BigInt::from(rate));
        match &best {
            Some(b) if t > *b => {}
            Some(b) if t == *b => tight.push(i),
            _ => {
                best = Some(t);
                tight = vec![i];
            }
        }
    }
    debug_assert!(best.is_some_and(|b| !b.is_zero()) || tight.is_empty());
    s.vertices()
        .iter()
        .enumerate()
        .filter(|(vi, _)| tight.iter().all(|&f| s.facet_vertices(f).contains(vi)))
        .map(|(_, v)| *v)
        .collect()
}

/// Decomposition of a two-point tetrahedron.
pub fn decompose(s: &Polytope<3>) -> Result<Decomposition> {
    if !s.is_full_dimensional() || !s.is_simplex() {
        return Err(Error::NotSimplex(
            "decomposition needs a tetrahedron".into(),
        ));
    }
    let int = s.interior_lattice_points()?;
    if int.len() != 2 {
        return Err(Error::InvalidArgument(format!(
            "{} interior points, expected 2",
            int.len()
        )));
    }
    let (o1, o2) = (int[0], int[1]);
    let f1 = exit_face(s, &o2, &o1);
    let f2 = exit_face(s, &o1, &o2);
    let mut p1 = f1.clone();
    p1.push(o2);
    let mut p2 = f2.clone();
    p2.push(o1);
    let s1 = Polytope::convex_hull(&p1)?;
    let s2 = Polytope::convex_hull(&p2)?;
    let shared = s1
        .vertices()
        .iter()
        .filter(|v| s2.vertices().contains(v))
        .count();
    Ok(Decomposition {
        o1,
        o2,
        s1,
        s2,
        shared_vertices: shared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::zpw_simplex3;
    use crate::polytope::conv;

    #[test]
    fn decomposes_known_tetrahedra() {
        for s in [
            zpw_simplex3(2),
            conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [5, 5, 8]]),
            conv(&[[0, 0, 0], [1, 0, 0], [0, 2, 0], [5, 2, 12]]),
        ] {
            let d = decompose(&s).unwrap();
            assert!(d.is_valid(&s), "{s:?} -> {d:?}");
        }
    }

    #[test]
    fn rejects_wrong_inputs() {
        assert!(decompose(&zpw_simplex3(1)).is_err());
    }
}
