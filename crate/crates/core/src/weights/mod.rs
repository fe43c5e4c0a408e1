//! Weight systems of simplices, the classification of one- and two-point
//! triangles and tetrahedra, and the minimal seed polytopes.

mod decompose;
mod seeds;
mod simplices;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exact::{left_kernel, IntMatrix, LatticePoint};
use crate::polytope::Polytope;
use crate::{Error, Result};

pub use decompose::{decompose, Decomposition};
pub use seeds::{
    bundled_seed_bank, derive_minimal_1point_3d, is_minimal, load_seed_bank, minimal_seeds_2d,
    parse_seed_bank, SeedBank, SeedEntry, SeedSource,
};
pub use simplices::{
    classify_1point_triangles, classify_2point_tetrahedra, classify_2point_tetrahedra_with,
    classify_2point_triangles, enumerate_1point_tetrahedra, filter_special, hnf_simplices,
    minimal_2point_tetrahedra, possibility_b, triangles_by_hnf, PossibilityOptions,
    SimplexClassification, TetraClassification, TwoPointTetrahedra,
};

/// Normalized barycentric weights `(λ_0, .., λ_d)`: positive, coprime and
/// sorted non-decreasingly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weights(pub Vec<i64>);

impl Weights {
    /// Normalizes a positive integer relation.
    pub fn normalize(mut v: Vec<i64>) -> Result<Self> {
        if v.iter().any(|&x| x <= 0) {
            return Err(Error::NotInterior);
        }
        let g = v.iter().fold(0, |g, &x| g.gcd(&x));
        for x in &mut v {
            *x /= g;
        }
        v.sort_unstable();
        Ok(Self(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Weights {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v = inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::InvalidArgument(format!("bad weight {x:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let w = Weights::normalize(v.clone())?;
        if w.0 != v {
            return Err(Error::InvalidArgument(format!(
                "weights {s} are not normalized"
            )));
        }
        Ok(w)
    }
}

/// Weights of the simplex `s` about the point `o` of its relative interior.
///
/// `s` may be lower-dimensional; the relation `Σ λ_i (v_i - o) = 0` is then
/// solved inside its affine hull.
pub fn weights_of_simplex<const D: usize>(s: &Polytope<D>, o: &LatticePoint<D>) -> Result<Weights> {
    if !s.is_simplex() {
        return Err(Error::NotSimplex(format!(
            "{} vertices in dimension {}",
            s.vertices().len(),
            s.dim()
        )));
    }
    let rows: Vec<Vec<i64>> = s.vertices().iter().map(|v| (*v - *o).0.to_vec()).collect();
    let m = IntMatrix::from_rows(&rows)?;
    let ker = left_kernel(&m);
    if ker.len() != 1 {
        // o lies off the affine hull, or on a vertex
        return Err(Error::NotInterior);
    }
    let mut y = ker.into_iter().next().unwrap();
    if y.iter().sum::<i64>() < 0 {
        y.iter_mut().for_each(|x| *x = -*x);
    }
    Weights::normalize(y)
}

/// `W_{1,1}`, `W_{1,2}` and friends for segments: a segment with `k`
/// interior points about its `j`-th interior point has weights `(j, k + 1 - j)`.
pub fn segment_weights(k: i64) -> BTreeSet<Weights> {
    (1..=k)
        .map(|j| Weights::normalize(vec![j, k + 1 - j]).unwrap())
        .collect()
}

/// `W_{2,1}`, derived from the one-point triangles.
pub fn w21() -> BTreeSet<Weights> {
    classify_1point_triangles().weights
}

/// Parses a weight table: one tuple per line, `#` comments allowed.
pub fn parse_weight_table(text: &str) -> Result<BTreeSet<Weights>> {
    let mut out = BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let w: Weights = body.parse().map_err(|e: Error| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?;
        out.insert(w);
    }
    Ok(out)
}

/// Bundled weight tables, keyed by `(d, k)`.
pub fn bundled_weights(d: usize, k: usize) -> Option<BTreeSet<Weights>> {
    let text = include_str!("../../data/weights.txt");
    let header = format!("[{d},{k}]");
    let mut section = String::new();
    let mut inside = false;
    for line in text.lines() {
        let t = line.trim();
        if t.starts_with('[') {
            inside = t == header;
            continue;
        }
        if inside {
            section.push_str(line);
            section.push('\n');
        }
    }
    if section.is_empty() {
        return None;
    }
    parse_weight_table(&section).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::zpw_simplex3;
    use crate::polytope::conv;

    #[test]
    fn triangle_weights() {
        let t = conv(&[[1, 0], [0, 1], [-1, -1]]);
        assert_eq!(
            weights_of_simplex(&t, &LatticePoint([0, 0])).unwrap(),
            Weights(vec![1, 1, 1])
        );
        let t = conv(&[[1, 0], [0, 1], [-1, -2]]);
        assert_eq!(
            weights_of_simplex(&t, &LatticePoint([0, 0])).unwrap(),
            Weights(vec![1, 1, 2])
        );
        assert!(matches!(
            weights_of_simplex(&t, &LatticePoint([5, 5])),
            Err(Error::NotInterior)
        ));
    }

    #[test]
    fn relation_is_reproduced() {
        let s = zpw_simplex3(2);
        for o in s.interior_lattice_points().unwrap() {
            let w = weights_of_simplex(&s, &o).unwrap();
            assert_eq!(w.len(), 4);
            // recover the unsorted relation and check it
            let rows: Vec<Vec<i64>> = s.vertices().iter().map(|v| (*v - o).0.to_vec()).collect();
            let y = left_kernel(&IntMatrix::from_rows(&rows).unwrap()).remove(0);
            let sum: Vec<i64> = (0..3)
                .map(|c| rows.iter().zip(&y).map(|(r, l)| r[c] * l).sum())
                .collect();
            assert_eq!(sum, vec![0, 0, 0]);
        }
    }

    #[test]
    fn lower_dimensional_weights() {
        let seg = conv(&[[0, 0, 0], [3, 3, 3]]);
        assert_eq!(
            weights_of_simplex(&seg, &LatticePoint([1, 1, 1])).unwrap(),
            Weights(vec![1, 2])
        );
        assert_eq!(segment_weights(1), BTreeSet::from([Weights(vec![1, 1])]));
        assert_eq!(segment_weights(2), BTreeSet::from([Weights(vec![1, 2])]));
        let tri = conv(&[[1, 0, 7], [0, 1, 7], [-1, -1, 7]]);
        assert_eq!(
            weights_of_simplex(&tri, &LatticePoint([0, 0, 7])).unwrap(),
            Weights(vec![1, 1, 1])
        );
    }

    #[test]
    fn parsing() {
        assert_eq!(
            "(1,2,3)".parse::<Weights>().unwrap(),
            Weights(vec![1, 2, 3])
        );
        assert!("(2,1)".parse::<Weights>().is_err());
        assert!("(2,4)".parse::<Weights>().is_err());
        let t = parse_weight_table("# c\n(1,1)\n\n(1,2) # x\n").unwrap();
        assert_eq!(t.len(), 2);
    }
}
