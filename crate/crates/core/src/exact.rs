//! Exact integer and rational primitives.
//!
//! Coordinates are fixed-width `i64`; every build profile of this workspace
//! keeps overflow checks on, so an overflow panics instead of wrapping.
//! Determinants are returned as [`BigInt`].

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// A point of the integer lattice `Z^D`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint<const D: usize>(pub [i64; D]);

pub type Point2 = LatticePoint<2>;
pub type Point3 = LatticePoint<3>;

impl<const D: usize> LatticePoint<D> {
    pub const fn new(coords: [i64; D]) -> Self {
        Self(coords)
    }

    pub fn zero() -> Self {
        Self([0; D])
    }

    pub fn coords(&self) -> &[i64; D] {
        &self.0
    }

    pub fn dot(&self, other: &Self) -> i64 {
        let mut acc = 0i64;
        for i in 0..D {
            acc += self.0[i] * other.0[i];
        }
        acc
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = self.0;
        for x in out.iter_mut() {
            *x *= k;
        }
        Self(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// gcd of the coordinates; zero for the zero vector.
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x))
    }
}

/// Divides `v` by the gcd of its entries.
pub fn primitive<const D: usize>(v: &LatticePoint<D>) -> Result<LatticePoint<D>> {
    let g = v.content();
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    let mut out = v.0;
    for x in out.iter_mut() {
        *x /= g;
    }
    Ok(LatticePoint(out))
}

impl<const D: usize> Add for LatticePoint<D> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self.0;
        for i in 0..D {
            out[i] += rhs.0[i];
        }
        Self(out)
    }
}

impl<const D: usize> Sub for LatticePoint<D> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self.0;
        for i in 0..D {
            out[i] -= rhs.0[i];
        }
        Self(out)
    }
}

impl<const D: usize> Neg for LatticePoint<D> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1)
    }
}

impl<const D: usize> Index<usize> for LatticePoint<D> {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl<const D: usize> IndexMut<usize> for LatticePoint<D> {
    fn index_mut(&mut self, i: usize) -> &mut i64 {
        &mut self.0[i]
    }
}

impl<const D: usize> fmt::Debug for LatticePoint<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl<const D: usize> fmt::Display for LatticePoint<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl<const D: usize> From<[i64; D]> for LatticePoint<D> {
    fn from(c: [i64; D]) -> Self {
        Self(c)
    }
}

pub fn cross(a: &Point3, b: &Point3) -> Point3 {
    LatticePoint([
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])
}

pub fn det3(a: &Point3, b: &Point3, c: &Point3) -> i64 {
    a.dot(&cross(b, c))
}

pub fn det2(a: &Point2, b: &Point2) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "ragged rows: expected {cols} entries, found {}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given points.
    pub fn from_columns<const D: usize>(cols: &[LatticePoint<D>]) -> Self {
        let mut m = Self::zeros(D, cols.len());
        for (j, p) in cols.iter().enumerate() {
            for i in 0..D {
                m[(i, j)] = p[i];
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column<const D: usize>(&self, j: usize) -> LatticePoint<D> {
        assert_eq!(self.rows, D, "column dimension mismatch");
        let mut out = [0; D];
        for (i, x) in out.iter_mut().enumerate() {
            *x = self[(i, j)];
        }
        LatticePoint(out)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn apply<const D: usize>(&self, p: &LatticePoint<D>) -> LatticePoint<D> {
        assert!(
            self.rows == D && self.cols == D,
            "matrix/point dimension mismatch"
        );
        let mut out = [0i64; D];
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..D {
                *o += self[(i, j)] * p[j];
            }
        }
        LatticePoint(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: i64) {
        if q == 0 {
            return;
        }
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j];
            self.data[dst * self.cols + j] -= q * s;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self.data[r * self.cols + j] = -self.data[r * self.cols + j];
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Exact determinant via fraction-free Bareiss elimination over big integers.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "determinant of non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| m.row(i).iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign < 0 { -d } else { d })
}

/// Integer determinant of a small square matrix in `i128`.
pub(crate) fn det_small(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0] as i128,
        2 => m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128,
        _ => {
            let mut acc = 0i128;
            for c in 0..n {
                if m[0][c] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let term = m[0][c] as i128 * det_small(&minor);
                if c % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Adjugate of a small square matrix, so that `adj * m = det * I`.
pub(crate) fn adjugate_small(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let cof = det_small(&minor);
            // adj[j][i] = (-1)^(i+j) * M_ij
            adj[j][i] = if (i + j) % 2 == 0 { cof } else { -cof };
        }
    }
    adj
}

/// Result of a Hermite normal form computation.
#[derive(Clone, Debug)]
pub struct Hermite {
    /// Row-echelon form `u * m`.
    pub h: IntMatrix,
    /// Unimodular transform with `h = u * m`.
    pub u: IntMatrix,
    /// Pivot column of each non-zero row of `h`.
    pub pivots: Vec<usize>,
}

/// Row-style Hermite normal form acting by left multiplication.
///
/// Works for any shape; the returned `h` is in echelon form with positive
/// pivots, and every entry above a pivot lies in `[0, pivot)`.
pub fn hermite_reduce(m: &IntMatrix) -> Hermite {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..h.cols {
        if row == h.rows {
            break;
        }
        loop {
            // smallest non-zero magnitude at or below `row`
            let mut best: Option<usize> = None;
            for r in row..h.rows {
                let x = h[(r, col)];
                if x != 0 && best.is_none_or(|b| x.abs() < h[(b, col)].abs()) {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(row, b);
            u.swap_rows(row, b);
            let p = h[(row, col)];
            let mut done = true;
            for r in row + 1..h.rows {
                let x = h[(r, col)];
                if x != 0 {
                    let q = Integer::div_floor(&x, &p);
                    h.sub_row_multiple(r, row, q);
                    u.sub_row_multiple(r, row, q);
                    if h[(r, col)] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[(row, col)] == 0 {
            continue;
        }
        if h[(row, col)] < 0 {
            h.negate_row(row);
            u.negate_row(row);
        }
        let p = h[(row, col)];
        for r in 0..row {
            let q = Integer::div_floor(&h[(r, col)], &p);
            h.sub_row_multiple(r, row, q);
            u.sub_row_multiple(r, row, q);
        }
        pivots.push(col);
        row += 1;
    }
    Hermite { h, u, pivots }
}

/// Hermite normal form `(h, u)` with `h = u * m`.
///
/// Requires full rank (`rank = min(rows, cols)`); for a square matrix this is
/// the usual upper-triangular form with positive diagonal where each entry
/// above the diagonal is reduced modulo the diagonal entry of its column.
pub fn hermite_normal_form(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let hnf = hermite_reduce(m);
    if hnf.pivots.len() < m.rows.min(m.cols) {
        return Err(Error::RankDeficient {
            rank: hnf.pivots.len(),
            expected: m.rows.min(m.cols),
        });
    }
    Ok((hnf.h, hnf.u))
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    determinant(m).map(|d| d.abs().is_one()).unwrap_or(false)
}

/// Integer basis of `{ y : y . a = 0 }` for the rows of `a` (left kernel).
pub(crate) fn left_kernel(a: &IntMatrix) -> Vec<Vec<i64>> {
    let hnf = hermite_reduce(a);
    (hnf.pivots.len()..a.rows)
        .map(|r| hnf.u.row(r).to_vec())
        .collect()
}

/// Lattice basis of `span_R(vectors) ∩ Z^D` (the saturation of the span).
pub(crate) fn saturated_basis<const D: usize>(vectors: &[LatticePoint<D>]) -> Vec<LatticePoint<D>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    // orthogonal complement, as integer vectors y with y.v = 0 for every v
    let cols = IntMatrix::from_columns(vectors);
    let perp = left_kernel(&cols);
    if perp.is_empty() {
        return (0..D)
            .map(|i| {
                let mut e = [0; D];
                e[i] = 1;
                LatticePoint(e)
            })
            .collect();
    }
    let mut pm = IntMatrix::zeros(D, perp.len());
    for (j, y) in perp.iter().enumerate() {
        for i in 0..D {
            pm[(i, j)] = y[i];
        }
    }
    left_kernel(&pm)
        .into_iter()
        .map(|row| {
            let mut c = [0; D];
            c.copy_from_slice(&row);
            LatticePoint(c)
        })
        .collect()
}

/// Integer rank of a set of vectors.
pub fn rank<const D: usize>(vectors: &[LatticePoint<D>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = IntMatrix::from_columns(vectors).transpose();
    hermite_reduce(&m).pivots.len()
}

/// gcd of all maximal minors of the matrix with the given columns.
///
/// This is the index of the lattice spanned by `vectors` inside its saturation.
pub(crate) fn lattice_index<const D: usize>(vectors: &[LatticePoint<D>]) -> i64 {
    let k = vectors.len();
    let mut g = 0i64;
    let rows: Vec<usize> = (0..D).collect();
    for_each_subset(&rows, k, &mut |sel| {
        let minor: Vec<Vec<i64>> = sel
            .iter()
            .map(|&r| vectors.iter().map(|v| v[r]).collect())
            .collect();
        let d = det_small(&minor);
        g = g.gcd(&(i64::try_from(d).expect("minor fits in i64")));
    });
    g
}

fn for_each_subset(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
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
    rec(items, k, 0, &mut Vec::with_capacity(k), f);
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient for small arguments.
pub(crate) fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl Mul<LatticePoint<3>> for &IntMatrix {
    type Output = LatticePoint<3>;
    fn mul(self, p: LatticePoint<3>) -> LatticePoint<3> {
        self.apply(&p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(
            determinant(&IntMatrix::identity(3)).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            determinant(&m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 18]])).unwrap(),
            BigInt::from(108)
        );
        assert_eq!(
            determinant(&m(&[&[0, 1], &[1, 0]])).unwrap(),
            BigInt::from(-1)
        );
        assert!(matches!(
            determinant(&m(&[&[1, 2, 3]])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn hnf_examples() {
        let (h, u) = hermite_normal_form(&IntMatrix::identity(3)).unwrap();
        assert_eq!(h, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));

        let swap = m(&[&[0, 1], &[1, 0]]);
        let (h, u) = hermite_normal_form(&swap).unwrap();
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, swap);

        let deficient = m(&[&[1, 2], &[2, 4]]);
        assert!(matches!(
            hermite_normal_form(&deficient),
            Err(Error::RankDeficient {
                rank: 1,
                expected: 2
            })
        ));
    }

    #[test]
    fn hnf_reduces_above_diagonal() {
        let a = m(&[&[2, 3, 1], &[4, 1, 7], &[0, 5, 3]]);
        let (h, u) = hermite_normal_form(&a).unwrap();
        assert_eq!(u.mul(&a).unwrap(), h);
        for i in 0..3 {
            assert!(h[(i, i)] > 0);
            for j in 0..i {
                assert_eq!(h[(i, j)], 0);
            }
            for j in i + 1..3 {
                assert!((0..h[(j, j)]).contains(&h[(i, j)]), "{h:?}");
            }
        }
        assert_eq!(determinant(&h).unwrap(), determinant(&a).unwrap().abs());
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(
            primitive(&LatticePoint([2, 4, 6])).unwrap(),
            LatticePoint([1, 2, 3])
        );
        assert_eq!(
            primitive(&LatticePoint([1, 0, 0])).unwrap(),
            LatticePoint([1, 0, 0])
        );
        assert_eq!(
            primitive(&LatticePoint([-3, 0, -6])).unwrap(),
            LatticePoint([-1, 0, -2])
        );
        assert!(matches!(
            primitive(&LatticePoint([0, 0, 0])),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn saturation_of_plane() {
        // span of (2,0,0),(0,2,0) saturates to the xy-plane lattice
        let b = saturated_basis(&[LatticePoint([2, 0, 0]), LatticePoint([0, 2, 0])]);
        assert_eq!(b.len(), 2);
        assert_eq!(lattice_index(&b), 1);
        assert!(b.iter().all(|v| v[2] == 0));
        assert_eq!(
            lattice_index(&[LatticePoint([2, 0, 0]), LatticePoint([0, 2, 0])]),
            4
        );
    }

    #[test]
    fn left_kernel_is_orthogonal() {
        let a = m(&[&[1, 2], &[3, 4], &[5, 6]]);
        let k = left_kernel(&a);
        assert_eq!(k.len(), 1);
        let y = &k[0];
        assert_eq!(y[0] + 3 * y[1] + 5 * y[2], 0);
        assert_eq!(2 * y[0] + 4 * y[1] + 6 * y[2], 0);
    }

    /// Random product of elementary unimodular 3x3 matrices.
    fn elementary_product(ops: &[(u8, usize, usize, i64)]) -> IntMatrix {
        let mut u = IntMatrix::identity(3);
        for &(kind, a, b, q) in ops {
            match kind % 3 {
                0 if a != b => u.sub_row_multiple(a, b, q),
                1 => u.swap_rows(a, b),
                _ => u.negate_row(a),
            }
        }
        u
    }

    fn op_strategy() -> impl Strategy<Value = Vec<(u8, usize, usize, i64)>> {
        prop::collection::vec((0u8..3, 0usize..3, 0usize..3, -3i64..=3), 0..12)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn unimodular_has_identity_hnf(ops in op_strategy()) {
            let u = elementary_product(&ops);
            prop_assert!(is_unimodular(&u));
            let (h, _) = hermite_normal_form(&u).unwrap();
            prop_assert_eq!(h, IntMatrix::identity(3));
        }

        #[test]
        fn hnf_is_idempotent_and_transform_unimodular(entries in prop::collection::vec(-9i64..=9, 9)) {
            let a = IntMatrix { rows: 3, cols: 3, data: entries };
            prop_assume!(!determinant(&a).unwrap().is_zero());
            let (h, u) = hermite_normal_form(&a).unwrap();
            prop_assert!(is_unimodular(&u));
            prop_assert_eq!(u.mul(&a).unwrap(), h.clone());
            let (h2, _) = hermite_normal_form(&h).unwrap();
            prop_assert_eq!(h2, h);
        }

        #[test]
        fn determinant_is_multiplicative(
            a in prop::collection::vec(-20i64..=20, 9),
            b in prop::collection::vec(-20i64..=20, 9),
        ) {
            let a = IntMatrix { rows: 3, cols: 3, data: a };
            let b = IntMatrix { rows: 3, cols: 3, data: b };
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(
                determinant(&ab).unwrap(),
                determinant(&a).unwrap() * determinant(&b).unwrap()
            );
            let rows: Vec<Vec<i64>> = (0..3).map(|i| a.row(i).to_vec()).collect();
            prop_assert_eq!(BigInt::from(det_small(&rows)), determinant(&a).unwrap());
        }
    }
}
