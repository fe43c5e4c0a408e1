//! Ehrhart counts, δ-vectors, the Zaks–Perles–Wills simplices and the
//! inequality checkers built on them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::exact::{adjugate_small, binomial, det_small, hermite_reduce, IntMatrix, LatticePoint};
use crate::polytope::Polytope;
use crate::{Error, Result};

/// Coefficients `(δ_0, .., δ_d)` of the Ehrhart δ-polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DeltaVector(pub Vec<i64>);

impl DeltaVector {
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for DeltaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl From<Vec<i64>> for DeltaVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

/// `|kP ∩ Z^d|`, with `k = 0` giving 1.
pub fn ehrhart_count<const D: usize>(p: &Polytope<D>, k: u32) -> usize {
    if k == 0 {
        return 1;
    }
    p.dilate(k as i64).lattice_points().len()
}

/// δ-vector from the dilation counts `k = 0..=d` by the binomial transform.
///
/// Fails with [`Error::Consistency`] if the result breaks one of the basic
/// identities, which points to a geometry bug rather than bad input.
pub fn delta_vector<const D: usize>(p: &Polytope<D>) -> Result<DeltaVector> {
    p.require_full("delta_vector")?;
    let d = D as i64;
    let counts: Vec<i64> = (0..=D as u32).map(|k| ehrhart_count(p, k) as i64).collect();
    let delta: Vec<i64> = (0..=D)
        .map(|j| {
            (0..=j)
                .map(|i| {
                    let s = if i % 2 == 0 { 1 } else { -1 };
                    s * binomial(d + 1, i as i64) * counts[j - i]
                })
                .sum()
        })
        .collect();
    let delta = DeltaVector(delta);
    let report = identities_for(p, &delta)?;
    if !report.passed {
        return Err(Error::Consistency(report.violations.join("; ")));
    }
    Ok(delta)
}

/// δ-vector of a simplex by counting lattice points of the half-open
/// parallelepiped spanned by the vectors `(1, v_i)`, graded by height.
pub fn delta_vector_simplex<const D: usize>(s: &Polytope<D>) -> Result<DeltaVector> {
    s.require_full("delta_vector_simplex")?;
    if !s.is_simplex() {
        return Err(Error::NotSimplex(format!(
            "{} vertices",
            s.vertices().len()
        )));
    }
    let n = D + 1;
    // g has columns (1, v_i)
    let g: Vec<Vec<i64>> = (0..n)
        .map(|r| {
            s.vertices()
                .iter()
                .map(|v| if r == 0 { 1 } else { v[r - 1] })
                .collect()
        })
        .collect();
    let det = det_small(&g);
    let sign = det.signum();
    let vol = det.abs();
    let adj = adjugate_small(&g);
    // triangular basis of the column lattice gives coset representatives
    let gt = IntMatrix::from_rows(&g).expect("square").transpose();
    let h = hermite_reduce(&gt).h;
    let diag: Vec<i64> = (0..n).map(|i| h[(i, i)]).collect();
    let mut delta = vec![0i64; n];
    let mut x = vec![0i64; n];
    loop {
        let mut height = 0i128;
        for row in &adj {
            let a: i128 = row.iter().zip(&x).map(|(c, &xi)| c * xi as i128).sum();
            height += (sign * a).rem_euclid(vol);
        }
        debug_assert_eq!(height % vol, 0);
        delta[(height / vol) as usize] += 1;
        // odometer over 0 <= x_i < diag_i
        let mut i = 0;
        loop {
            if i == n {
                return Ok(DeltaVector(delta));
            }
            x[i] += 1;
            if x[i] < diag[i] {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// Sylvester sequence: `s_1 = 2`, `s_i = s_1 ⋯ s_{i-1} + 1`.
pub fn sylvester(i: u32) -> Result<BigInt> {
    if i == 0 {
        return Err(Error::InvalidArgument("Sylvester index starts at 1".into()));
    }
    let mut s = BigInt::from(2);
    for _ in 1..i {
        s = &s * (&s - 1) + 1;
    }
    Ok(s)
}

/// Vertices of `conv{0, s_1 e_1, .., s_{d-1} e_{d-1}, (k+1)(s_d - 1) e_d}`.
pub fn zpw_vertices(d: usize, k: u64) -> Result<Vec<Vec<BigInt>>> {
    if d < 2 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 2".into(),
        ));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let mut out = vec![vec![BigInt::from(0); d]];
    for i in 1..=d {
        let s = sylvester(i as u32)?;
        let len = if i < d {
            s
        } else {
            BigInt::from(k + 1) * (s - 1)
        };
        let mut v = vec![BigInt::from(0); d];
        v[i - 1] = len;
        out.push(v);
    }
    Ok(out)
}

fn small_zpw<const D: usize>(k: u64) -> Polytope<D> {
    let pts: Vec<LatticePoint<D>> = zpw_vertices(D, k)
        .expect("valid parameters")
        .iter()
        .map(|v| {
            let mut c = [0i64; D];
            for (ci, x) in c.iter_mut().zip(v) {
                *ci = i64::try_from(x).expect("coordinates fit in i64");
            }
            LatticePoint(c)
        })
        .collect();
    Polytope::convex_hull(&pts).expect("simplex")
}

/// The three-dimensional simplex `S^3_k`.
pub fn zpw_simplex3(k: u64) -> Polytope<3> {
    small_zpw::<3>(k.max(1))
}

/// The triangle `S^2_k`.
pub fn zpw_simplex2(k: u64) -> Polytope<2> {
    small_zpw::<2>(k.max(1))
}

/// Closed form `(1, 16k+19, 19k+16, k)` for the δ-vector of `S^3_k`.
pub fn zpw_delta_formula(k: i64) -> DeltaVector {
    DeltaVector(vec![1, 16 * k + 19, 19 * k + 16, k])
}

/// Outcome of [`check_basic_identities`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub passed: bool,
    pub delta: DeltaVector,
    pub lattice_points: usize,
    pub interior_points: usize,
    pub volume: i64,
    pub violations: Vec<String>,
}

fn identities_for<const D: usize>(p: &Polytope<D>, delta: &DeltaVector) -> Result<IdentityReport> {
    let lattice_points = p.lattice_points().len();
    let interior_points = p.interior_lattice_points()?.len();
    let volume = p.normalized_volume()?;
    Ok(identity_report(
        delta,
        lattice_points,
        interior_points,
        volume,
    ))
}

/// Checks the identities linking δ to point counts and volume.
pub fn identity_report(
    delta: &DeltaVector,
    lattice_points: usize,
    interior_points: usize,
    volume: i64,
) -> IdentityReport {
    let d = delta.dim();
    let s = delta.as_slice();
    let mut v = Vec::new();
    if s[0] != 1 {
        v.push(format!("delta_0 = {} != 1", s[0]));
    }
    let expect1 = lattice_points as i64 - d as i64 - 1;
    if s[1] != expect1 {
        v.push(format!(
            "delta_1 = {} != |P ∩ Z^d| - d - 1 = {expect1}",
            s[1]
        ));
    }
    if s[d] != interior_points as i64 {
        v.push(format!(
            "delta_d = {} != |int P ∩ Z^d| = {interior_points}",
            s[d]
        ));
    }
    if s[1] < s[d] {
        v.push(format!("delta_1 = {} < delta_d = {}", s[1], s[d]));
    }
    if delta.sum() != volume {
        v.push(format!("sum of delta = {} != Vol = {volume}", delta.sum()));
    }
    if let Some(x) = s.iter().find(|&&x| x < 0) {
        v.push(format!("negative entry {x}"));
    }
    IdentityReport {
        passed: v.is_empty(),
        delta: delta.clone(),
        lattice_points,
        interior_points,
        volume,
        violations: v,
    }
}

/// Recomputes δ by the binomial transform without asserting, then reports.
pub fn check_basic_identities<const D: usize>(p: &Polytope<D>) -> Result<IdentityReport> {
    p.require_full("check_basic_identities")?;
    let d = D as i64;
    let counts: Vec<i64> = (0..=D as u32).map(|k| ehrhart_count(p, k) as i64).collect();
    let delta: Vec<i64> = (0..=D)
        .map(|j| {
            (0..=j)
                .map(|i| {
                    let s = if i % 2 == 0 { 1 } else { -1 };
                    s * binomial(d + 1, i as i64) * counts[j - i]
                })
                .sum()
        })
        .collect();
    identities_for(p, &DeltaVector(delta))
}

/// `1 <= δ_1 <= δ_i` for `i = 2..d-1`, for a non-hollow polytope.
pub fn check_hibi<const D: usize>(p: &Polytope<D>) -> Result<bool> {
    let delta = delta_vector(p)?;
    if delta.as_slice()[D] == 0 {
        return Err(Error::Hollow(
            "the lower bound inequality needs an interior point".into(),
        ));
    }
    Ok(hibi_holds(&delta))
}

pub fn hibi_holds(delta: &DeltaVector) -> bool {
    let s = delta.as_slice();
    let d = delta.dim();
    s[1] >= 1 && (2..d).all(|i| s[1] <= s[i])
}

/// Scott's inequality for lattice polygons.
pub fn check_scott_2d(delta: &[i64]) -> bool {
    let (d1, d2) = (delta[1], delta[2]);
    d2 == 0 || (0 < d2 && d2 <= d1 && d1 <= 3 * d2 + 3) || (d1, d2) == (7, 1)
}

/// The same constraint for the pair `(δ_1, δ_2)` of a hollow 3-polytope.
pub fn check_hollow_3d(delta: &[i64]) -> bool {
    let (d1, d2) = (delta[1], delta[2]);
    d2 == 0 || (0 <= d1 && d1 <= 3 * d2 + 3) || (d1, d2) == (7, 1)
}

/// One inequality of [`ConjectureReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub value: i64,
    pub bound: i64,
}

impl Bound {
    pub fn holds(&self) -> bool {
        self.value <= self.bound
    }

    pub fn tight(&self) -> bool {
        self.value == self.bound
    }
}

/// Volume and δ-coefficient bounds for a 3-polytope with `k` interior points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub interior_points: i64,
    /// `Vol <= 36 (k + 1)`
    pub volume: Bound,
    /// `δ_1 <= 16 δ_3 + 19`
    pub delta1: Bound,
    /// `δ_2 <= 19 δ_3 + 16`
    pub delta2: Bound,
}

impl ConjectureReport {
    pub fn from_delta(delta: &DeltaVector) -> Self {
        let s = delta.as_slice();
        let k = s[3];
        Self {
            interior_points: k,
            volume: Bound {
                value: delta.sum(),
                bound: 36 * (k + 1),
            },
            delta1: Bound {
                value: s[1],
                bound: 16 * k + 19,
            },
            delta2: Bound {
                value: s[2],
                bound: 19 * k + 16,
            },
        }
    }

    pub fn violations(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if !self.volume.holds() {
            v.push("volume");
        }
        if !self.delta1.holds() {
            v.push("delta1");
        }
        if !self.delta2.holds() {
            v.push("delta2");
        }
        v
    }

    pub fn equalities(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.volume.tight() {
            v.push("volume");
        }
        if self.delta1.tight() {
            v.push("delta1");
        }
        if self.delta2.tight() {
            v.push("delta2");
        }
        v
    }
}

pub fn check_volume_conjectures(p: &Polytope<3>) -> Result<ConjectureReport> {
    let delta = delta_vector(p)?;
    if delta.as_slice()[3] == 0 {
        return Err(Error::Hollow("volume bounds need an interior point".into()));
    }
    Ok(ConjectureReport::from_delta(&delta))
}

/// `d! (8d)^d 15^(d 2^(2d+1)) k`.
pub fn pikhurko_bound(d: u32, k: u64) -> BigInt {
    let fact: BigInt = (1..=d).map(BigInt::from).product();
    let base = BigInt::from(8 * d).pow(d);
    let exp = d as u64 * (1u64 << (2 * d + 1));
    let fifteen = BigInt::from(15).pow(exp);
    fact * base * fifteen * BigInt::from(k)
}

/// Value at `x` of the polynomial interpolating `(i, ys[i])`, by Lagrange.
pub fn interpolate_at(ys: &[i64], x: i64) -> i64 {
    let n = ys.len() as i64;
    let mut num_total = num_rational::BigRational::from_integer(BigInt::from(0));
    for (i, &y) in ys.iter().enumerate() {
        let i = i as i64;
        let mut term = num_rational::BigRational::from_integer(BigInt::from(y));
        for j in 0..n {
            if j != i {
                term *= num_rational::BigRational::new(BigInt::from(x - j), BigInt::from(i - j));
            }
        }
        num_total += term;
    }
    assert!(num_total.is_integer());
    i64::try_from(num_total.to_integer()).expect("fits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::conv;

    fn dv(v: &[i64]) -> DeltaVector {
        DeltaVector(v.to_vec())
    }

    #[test]
    fn counts() {
        let t = conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(ehrhart_count(&t, 0), 1);
        assert_eq!(ehrhart_count(&t, 2), 10);
        assert_eq!(ehrhart_count(&zpw_simplex3(2), 1), 55);
        assert_eq!(ehrhart_count(&conv(&[[0, 0], [3, 0], [0, 3]]), 1), 10);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_vector(&zpw_simplex3(2)).unwrap(), dv(&[1, 51, 54, 2]));
        assert_eq!(
            delta_vector_simplex(&zpw_simplex3(2)).unwrap(),
            dv(&[1, 51, 54, 2])
        );
        assert_eq!(
            delta_vector(&conv(&[[0, 0], [3, 0], [0, 3]])).unwrap(),
            dv(&[1, 7, 1])
        );
        let m4 = conv(&[[-1, -1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 4]]);
        assert_eq!(delta_vector(&m4).unwrap(), dv(&[1, 4, 4, 4]));
        let t = conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(delta_vector_simplex(&t).unwrap(), dv(&[1, 0, 0, 0]));
        assert_eq!(
            delta_vector_simplex(&zpw_simplex3(1)).unwrap(),
            dv(&[1, 35, 35, 1])
        );
    }

    #[test]
    fn simplex_method_rejects_non_simplices() {
        let sq = conv(&[[0, 0], [1, 0], [0, 1], [1, 1]]);
        assert!(matches!(
            delta_vector_simplex(&sq),
            Err(Error::NotSimplex(_))
        ));
    }

    #[test]
    fn sylvester_values() {
        let v: Vec<BigInt> = (1..=4).map(|i| sylvester(i).unwrap()).collect();
        assert_eq!(v, [2, 3, 7, 43].map(BigInt::from));
        assert!(sylvester(0).is_err());
    }

    #[test]
    fn zpw_shapes() {
        assert_eq!(
            zpw_simplex3(2),
            conv(&[[0, 0, 0], [2, 0, 0], [0, 3, 0], [0, 0, 18]])
        );
        assert_eq!(
            zpw_simplex3(1),
            conv(&[[0, 0, 0], [2, 0, 0], [0, 3, 0], [0, 0, 12]])
        );
        assert_eq!(zpw_simplex2(1), conv(&[[0, 0], [2, 0], [0, 4]]));
        assert!(zpw_vertices(1, 1).is_err());
        assert_eq!(zpw_delta_formula(3), dv(&[1, 67, 73, 3]));
        assert_eq!(zpw_simplex3(3).lattice_points().len(), 71);
    }

    #[test]
    fn scalar_checks() {
        assert!(check_scott_2d(&[1, 7, 1]));
        assert!(check_scott_2d(&[1, 0, 0]));
        assert!(!check_scott_2d(&[1, 8, 1]));
        assert!(check_hollow_3d(&[1, 7, 1]));
        assert!(check_hollow_3d(&[1, 3, 1]));
        assert!(!check_hollow_3d(&[1, 10, 2]));
    }

    #[test]
    fn hibi_and_conjectures() {
        assert!(check_hibi(&zpw_simplex3(2)).unwrap());
        let m1 = conv(&[[-1, -1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(check_hibi(&m1).unwrap());
        let t = conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(matches!(check_hibi(&t), Err(Error::Hollow(_))));

        let r = check_volume_conjectures(&zpw_simplex3(2)).unwrap();
        assert!(r.violations().is_empty());
        assert!(r.volume.tight() && r.delta1.tight());
        let r = check_volume_conjectures(&m1).unwrap();
        assert!(r.equalities().is_empty() && r.violations().is_empty());
    }

    #[test]
    fn identities() {
        let r = check_basic_identities(&zpw_simplex3(2)).unwrap();
        assert!(r.passed, "{:?}", r.violations);
        let bad = identity_report(&dv(&[1, 2, 3, 4]), 5, 1, 9);
        assert!(!bad.passed);
    }

    #[test]
    fn pikhurko() {
        let b = pikhurko_bound(3, 1);
        assert!((1515..=1519).contains(&b.bits()));
        assert_eq!(pikhurko_bound(3, 2), &b * 2);
        let two = BigInt::from(2) * BigInt::from(16).pow(2u32) * BigInt::from(15).pow(64u32);
        assert_eq!(pikhurko_bound(2, 1), two);
    }

    #[test]
    fn polynomiality() {
        let p = conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [5, 5, 8]]);
        let ys: Vec<i64> = (0..4).map(|k| ehrhart_count(&p, k) as i64).collect();
        for k in [4, 5] {
            assert_eq!(interpolate_at(&ys, k as i64), ehrhart_count(&p, k) as i64);
        }
    }
}
