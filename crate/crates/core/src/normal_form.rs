//! Canonical keys under affine unimodular equivalence.
//!
//! For a full-dimensional polytope `P` the key is built as follows.
//!
//! 1. Anchors: the interior lattice points of `P`, or all lattice points when
//!    `P` is hollow. Anchors are pruned to those whose multiset of vertex
//!    signatures is smallest.
//! 2. For an anchor `o`, each vertex `v` gets a signature: the sorted list of
//!    pairs `(h_F - <n_F, o>, h_F - <n_F, v>)` over all facets `F`.
//! 3. An ordered basis `B = (b_1, .., b_d)` of vertex vectors `v - o` is chosen
//!    greedily: at step `i` take the vertices, independent of those already
//!    picked, that minimize `(signature, index of the lattice they span)`.
//!    Ties branch.
//! 4. The remaining vertex vectors are sorted by `|det B| B^-1 w`, giving a
//!    `d x n` matrix `M` whose Hermite normal form is a candidate.
//! 5. The key is the lexicographically smallest candidate over every anchor
//!    and every branch.
//!
//! Every choice above is invariant under `GL_d(Z)` and translations, and the
//! Hermite form of `M` determines the vertex set up to a unimodular map, so
//! two polytopes share a key exactly when they are equivalent.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exact::{
    adjugate_small, det_small, hermite_reduce, lattice_index, IntMatrix, LatticePoint,
};
use crate::polytope::Polytope;
use crate::{Error, Result};

/// Cheap invariants carried alongside every key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Invariants {
    pub dim: u8,
    pub vertices: u16,
    pub volume: i64,
    pub lattice_points: u32,
    pub interior_points: u32,
}

/// Canonical form of a polytope together with its hash and invariants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CanonicalKey {
    bytes: Vec<u8>,
    hash: u64,
    invariants: Invariants,
}

impl CanonicalKey {
    /// Serialized canonical matrix: rows and columns as little-endian `u64`,
    /// then the entries row by row as little-endian `i64`.
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// FNV-1a hash of [`Self::bytes`].
    pub fn hash64(&self) -> u64 {
        self.hash
    }

    pub fn invariants(&self) -> &Invariants {
        &self.invariants
    }

    /// Decodes the canonical matrix.
    pub fn matrix(&self) -> IntMatrix {
        decode_matrix(&self.bytes).expect("keys hold well-formed matrices")
    }

    /// Rebuilds a key from stored bytes and invariants, checking the layout.
    pub fn from_parts(bytes: Vec<u8>, invariants: Invariants) -> Result<Self> {
        decode_matrix(&bytes)?;
        Ok(Self {
            hash: fnv1a(&bytes),
            bytes,
            invariants,
        })
    }

    /// A representative polytope: the columns of the canonical matrix.
    pub fn polytope<const D: usize>(&self) -> Result<Polytope<D>> {
        let m = self.matrix();
        if m.rows() != D {
            return Err(Error::Shape(format!(
                "key has {} rows, expected {D}",
                m.rows()
            )));
        }
        let pts: Vec<LatticePoint<D>> = (0..m.cols()).map(|j| m.column::<D>(j)).collect();
        Polytope::convex_hull(&pts)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({:016x}, {:?})", self.hash, self.invariants)
    }
}

impl PartialOrd for CanonicalKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bytes.cmp(&other.bytes)
    }
}

/// 64-bit FNV-1a.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    fnv1a_update(FNV_OFFSET, bytes)
}

pub(crate) const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;

/// Continues an FNV-1a hash over more bytes.
pub(crate) fn fnv1a_update(mut h: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn encode_matrix(m: &IntMatrix) -> Vec<u8> {
    let mut out = Vec::with_capacity(16 + 8 * m.as_slice().len());
    out.extend_from_slice(&(m.rows() as u64).to_le_bytes());
    out.extend_from_slice(&(m.cols() as u64).to_le_bytes());
    for x in m.as_slice() {
        out.extend_from_slice(&x.to_le_bytes());
    }
    out
}

pub fn decode_matrix(bytes: &[u8]) -> Result<IntMatrix> {
    let bad = || Error::Shape("malformed key bytes".into());
    if bytes.len() < 16 {
        return Err(bad());
    }
    let word = |i: usize| <[u8; 8]>::try_from(&bytes[8 * i..8 * i + 8]).unwrap();
    let rows = u64::from_le_bytes(word(0)) as usize;
    let cols = u64::from_le_bytes(word(1)) as usize;
    if bytes.len() != 16 + 8 * rows * cols {
        return Err(bad());
    }
    let entries: Vec<i64> = (0..rows * cols)
        .map(|i| i64::from_le_bytes(word(2 + i)))
        .collect();
    let rows_v: Vec<&[i64]> = entries.chunks(cols.max(1)).take(rows).collect();
    if cols == 0 {
        return Ok(IntMatrix::zeros(rows, 0));
    }
    IntMatrix::from_rows(&rows_v)
}

type Signature = Vec<(i64, i64)>;

struct AnchorData<const D: usize> {
    vectors: Vec<LatticePoint<D>>,
    sigs: Vec<Signature>,
}

fn anchor_data<const D: usize>(p: &Polytope<D>, o: &LatticePoint<D>) -> AnchorData<D> {
    let facets = p.facets();
    let sigs = p
        .vertices()
        .iter()
        .map(|v| {
            let mut s: Signature = facets.iter().map(|f| (f.slack(o), f.slack(v))).collect();
            s.sort_unstable();
            s
        })
        .collect();
    AnchorData {
        vectors: p.vertices().iter().map(|v| *v - *o).collect(),
        sigs,
    }
}

/// Canonical key of a full-dimensional polytope.
pub fn affine_normal_form<const D: usize>(p: &Polytope<D>) -> Result<CanonicalKey> {
    p.require_full("affine_normal_form")?;
    let interior = p.interior_lattice_points()?;
    let all = p.lattice_points();
    let anchors = if interior.is_empty() { &all } else { &interior };

    // prune anchors to the smallest signature multiset
    let mut data: Vec<(Vec<Signature>, AnchorData<D>)> = anchors
        .iter()
        .map(|o| {
            let d = anchor_data(p, o);
            let mut ms = d.sigs.clone();
            ms.sort_unstable();
            (ms, d)
        })
        .collect();
    let best_ms = data.iter().map(|(ms, _)| ms).min().unwrap().clone();
    data.retain(|(ms, _)| *ms == best_ms);

    let mut best: Option<IntMatrix> = None;
    for (_, d) in &data {
        let mut chosen = Vec::with_capacity(D);
        search_bases(d, &mut chosen, &mut best);
    }
    let m = best.expect("a full-dimensional polytope has a vertex basis");
    let bytes = encode_matrix(&m);
    let invariants = Invariants {
        dim: D as u8,
        vertices: p.vertices().len() as u16,
        volume: p.normalized_volume()?,
        lattice_points: all.len() as u32,
        interior_points: interior.len() as u32,
    };
    Ok(CanonicalKey {
        hash: fnv1a(&bytes),
        bytes,
        invariants,
    })
}

fn search_bases<const D: usize>(
    d: &AnchorData<D>,
    chosen: &mut Vec<usize>,
    best: &mut Option<IntMatrix>,
) {
    if chosen.len() == D {
        let m = candidate_matrix(d, chosen);
        if best.as_ref().is_none_or(|b| m.as_slice() < b.as_slice()) {
            *best = Some(m);
        }
        return;
    }
    let mut scored: Vec<(&Signature, i64, usize)> = Vec::new();
    let mut vecs: Vec<LatticePoint<D>> = chosen.iter().map(|&i| d.vectors[i]).collect();
    for i in 0..d.vectors.len() {
        if chosen.contains(&i) || d.vectors[i].is_zero() {
            continue;
        }
        vecs.push(d.vectors[i]);
        let idx = lattice_index(&vecs);
        vecs.pop();
        if idx != 0 {
            scored.push((&d.sigs[i], idx, i));
        }
    }
    let Some(min) = scored.iter().map(|(s, k, _)| (*s, *k)).min() else {
        return;
    };
    let ties: Vec<usize> = scored
        .iter()
        .filter(|(s, k, _)| (*s, *k) == min)
        .map(|t| t.2)
        .collect();
    for i in ties {
        chosen.push(i);
        search_bases(d, chosen, best);
        chosen.pop();
    }
}

fn candidate_matrix<const D: usize>(d: &AnchorData<D>, basis: &[usize]) -> IntMatrix {
    let b: Vec<Vec<i64>> = (0..D)
        .map(|r| basis.iter().map(|&i| d.vectors[i][r]).collect())
        .collect();
    let det = det_small(&b);
    let adj = adjugate_small(&b);
    let sign = det.signum();
    let mut rest: Vec<(Vec<i128>, usize)> = (0..d.vectors.len())
        .filter(|i| !basis.contains(i))
        .map(|i| {
            let w = &d.vectors[i];
            let coords = adj
                .iter()
                .map(|row| {
                    sign * row
                        .iter()
                        .zip(w.0.iter())
                        .map(|(a, &x)| a * x as i128)
                        .sum::<i128>()
                })
                .collect();
            (coords, i)
        })
        .collect();
    rest.sort_unstable();
    let mut m = IntMatrix::zeros(D, d.vectors.len());
    let order = basis.iter().copied().chain(rest.iter().map(|r| r.1));
    for (j, i) in order.enumerate() {
        for r in 0..D {
            m[(r, j)] = d.vectors[i][r];
        }
    }
    hermite_reduce(&m).h
}

/// Whether two polytopes are affinely unimodularly equivalent.
pub fn are_equivalent<const D: usize>(p: &Polytope<D>, q: &Polytope<D>) -> bool {
    if p.dim() != q.dim() || p.vertices().len() != q.vertices().len() {
        return false;
    }
    match (affine_normal_form(p), affine_normal_form(q)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

/// Deterministic pseudo-random element of `GL_D(Z) ⋉ Z^D`.
///
/// Seed 0 gives the identity with zero translation.
pub fn random_unimodular_map_d<const D: usize>(seed: u64) -> (IntMatrix, LatticePoint<D>) {
    let mut m = IntMatrix::identity(D);
    if seed == 0 {
        return (m, LatticePoint::zero());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ops = rng.gen_range(1..=20);
    for _ in 0..ops {
        let i = rng.gen_range(0..D);
        let j = (i + rng.gen_range(1..D)) % D;
        match rng.gen_range(0..4) {
            0 | 1 => {
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                for c in 0..D {
                    m[(i, c)] += s * m[(j, c)];
                }
            }
            2 => {
                for c in 0..D {
                    let t = m[(i, c)];
                    m[(i, c)] = m[(j, c)];
                    m[(j, c)] = t;
                }
            }
            _ => {
                for c in 0..D {
                    m[(i, c)] = -m[(i, c)];
                }
            }
        }
    }
    let mut t = [0i64; D];
    for x in &mut t {
        *x = rng.gen_range(-10..=10);
    }
    (m, LatticePoint(t))
}

/// [`random_unimodular_map_d`] in dimension three.
pub fn random_unimodular_map(seed: u64) -> (IntMatrix, LatticePoint<3>) {
    random_unimodular_map_d::<3>(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::zpw_simplex3;
    use crate::exact::is_unimodular;
    use crate::polytope::conv;

    fn unit() -> Polytope<3> {
        conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a(b"a"), 0xaf63dc4c8601ec8c);
    }

    #[test]
    fn serialization_round_trip() {
        let k = affine_normal_form(&zpw_simplex3(2)).unwrap();
        let m = k.matrix();
        assert_eq!(encode_matrix(&m), k.bytes());
        assert_eq!(k.bytes().len(), 16 + 8 * 3 * 4);
        let again = CanonicalKey::from_parts(k.bytes().to_vec(), *k.invariants()).unwrap();
        assert_eq!(again, k);
        let rep = k.polytope::<3>().unwrap();
        assert!(are_equivalent(&rep, &zpw_simplex3(2)));
    }

    #[test]
    fn random_maps() {
        let (m, t) = random_unimodular_map(0);
        assert_eq!(m, IntMatrix::identity(3));
        assert!(t.is_zero());
        for seed in 1..200 {
            let (m, _) = random_unimodular_map(seed);
            assert!(is_unimodular(&m));
            assert_eq!(random_unimodular_map(seed), random_unimodular_map(seed));
        }
        assert_ne!(random_unimodular_map(1), random_unimodular_map(2));
    }

    #[test]
    fn invariance_under_maps() {
        let fixtures = [
            unit(),
            zpw_simplex3(2),
            conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [5, 5, 8]]),
            conv(&[
                [1, 0, 0],
                [-1, 0, 0],
                [0, 1, 0],
                [0, -1, 0],
                [0, 0, 1],
                [0, 0, -1],
            ]),
        ];
        for p in &fixtures {
            let k = affine_normal_form(p).unwrap();
            for seed in 0..100 {
                let (m, t) = random_unimodular_map(seed);
                let q = p.map_affine(&m, &t).unwrap();
                assert_eq!(affine_normal_form(&q).unwrap(), k);
            }
        }
    }

    #[test]
    fn distinguishes() {
        let a = affine_normal_form(&unit()).unwrap();
        let b = affine_normal_form(&unit().dilate(2)).unwrap();
        assert_ne!(a, b);
        assert!(!are_equivalent(&zpw_simplex3(1), &zpw_simplex3(2)));
        let p = zpw_simplex3(2);
        assert!(are_equivalent(&p, &p.translate(&LatticePoint([5, -3, 2]))));
    }

    #[test]
    fn one_point_triangles_are_distinct() {
        let tris = [
            conv(&[[0, 0], [2, 1], [1, 2]]),
            conv(&[[0, 0], [3, 1], [2, 2]]),
            conv(&[[0, 0], [2, 0], [0, 3]]),
            conv(&[[0, 0], [2, 0], [0, 4]]),
            conv(&[[0, 0], [3, 0], [0, 3]]),
        ];
        let mut keys: Vec<_> = tris
            .iter()
            .map(|t| affine_normal_form(t).unwrap())
            .collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 5);
        // equal weights (1,1,1), volumes 3 and 9
        assert!(!are_equivalent(&tris[0], &tris[4]));
    }
}
