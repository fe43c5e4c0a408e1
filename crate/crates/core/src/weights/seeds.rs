//! Minimal polytopes and the seed bank that starts the growth closure.

use std::collections::BTreeMap;
use std::path::Path;

use num_integer::Integer;
use rayon::prelude::*;

use crate::exact::{LatticePoint, Point2, Point3};
use crate::normal_form::{affine_normal_form, CanonicalKey};
use crate::polytope::{text, Polytope};
use crate::{Error, Result};

use super::simplices::{classify_1point_triangles, enumerate_1point_tetrahedra, hnf_simplices};

/// Whether a non-hollow polytope becomes hollow whenever a vertex is
/// removed from its lattice points.
pub fn is_minimal<const D: usize>(p: &Polytope<D>) -> Result<bool> {
    p.require_full("is_minimal")?;
    if p.interior_count_up_to(0) == 0 {
        return Err(Error::Hollow(
            "minimality is defined for non-hollow polytopes".into(),
        ));
    }
    let pts = p.lattice_points();
    for v in p.vertices() {
        let rest: Vec<_> = pts.iter().filter(|q| *q != v).copied().collect();
        let q = Polytope::convex_hull(&rest)?;
        if q.interior_count_up_to(0) > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Where a seed came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedSource {
    /// Read from a data file under the given provenance label.
    Bundled(String),
    /// Computed in this process.
    Computed,
}

#[derive(Clone, Debug)]
pub struct SeedEntry<const D: usize> {
    pub polytope: Polytope<D>,
    pub key: CanonicalKey,
    pub source: SeedSource,
}

/// A validated set of minimal seed polytopes.
#[derive(Clone, Debug, Default)]
pub struct SeedBank<const D: usize> {
    pub entries: Vec<SeedEntry<D>>,
}

impl<const D: usize> SeedBank<D> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn polytopes(&self) -> impl Iterator<Item = &Polytope<D>> {
        self.entries.iter().map(|e| &e.polytope)
    }

    /// Adds a seed after checking minimality, the interior count and that it
    /// is new up to equivalence.
    pub fn push(&mut self, p: Polytope<D>, source: SeedSource) -> Result<()> {
        let entry = validate(p, source)?;
        self.insert(entry)
    }

    fn insert(&mut self, entry: SeedEntry<D>) -> Result<()> {
        if self.entries.iter().any(|e| e.key == entry.key) {
            return Err(Error::Seed(format!("duplicate seed {}", entry.polytope)));
        }
        self.entries.push(entry);
        Ok(())
    }

    /// Seeds with at most `k` interior points.
    pub fn restricted(&self, k: usize) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .filter(|e| e.key.invariants().interior_points as usize <= k)
                .cloned()
                .collect(),
        }
    }

    pub fn to_text(&self, header: &str) -> String {
        let mut out = String::new();
        for line in header.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        let mut last: Option<&SeedSource> = None;
        for e in &self.entries {
            if last != Some(&e.source) {
                let label = match &e.source {
                    SeedSource::Bundled(s) => s.as_str(),
                    SeedSource::Computed => "computed",
                };
                out.push_str(&format!("# source: {label}\n"));
                last = Some(&e.source);
            }
            out.push_str(&e.polytope.to_string());
            out.push('\n');
        }
        out
    }
}

fn validate<const D: usize>(p: Polytope<D>, source: SeedSource) -> Result<SeedEntry<D>> {
    if !p.is_full_dimensional() {
        return Err(Error::Seed(format!("{p} is not full-dimensional")));
    }
    let k = p.interior_count_up_to(2);
    if k == 0 || k > 2 {
        return Err(Error::Seed(format!("{p} has {k} interior points")));
    }
    if !is_minimal(&p)? {
        return Err(Error::Seed(format!("{p} is not minimal")));
    }
    let key = affine_normal_form(&p)?;
    Ok(SeedEntry {
        polytope: p,
        key,
        source,
    })
}

/// Parses and validates a seed bank. A comment of the form
/// `# source: <label>` sets the provenance of the lines that follow.
pub fn parse_seed_bank<const D: usize>(text: &str) -> Result<SeedBank<D>> {
    let mut label = String::from("unlabelled");
    let mut pending = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(rest) = line.trim().strip_prefix("# source:") {
            label = rest.trim().to_string();
            continue;
        }
        if let Some(pts) = text::parse_points::<D>(line, i + 1)? {
            pending.push((i + 1, pts, label.clone()));
        }
    }
    let entries: Vec<Result<SeedEntry<D>>> = pending
        .into_par_iter()
        .map(|(line, pts, label)| {
            let p = Polytope::convex_hull(&pts)?;
            validate(p, SeedSource::Bundled(label))
                .map_err(|e| Error::Seed(format!("line {line}: {e}")))
        })
        .collect();
    let mut bank = SeedBank::default();
    for e in entries {
        bank.insert(e?)?;
    }
    Ok(bank)
}

/// The shipped 3-D seed bank: minimal one-point polytopes and minimal
/// two-point tetrahedra.
pub fn bundled_seed_bank() -> Result<SeedBank<3>> {
    parse_seed_bank(include_str!("../../data/seeds_3d.txt"))
}

pub fn load_seed_bank<const D: usize>(path: &Path) -> Result<SeedBank<D>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_seed_bank(&text)
}

/// Minimal polygons with at most `k` interior points (`k` is 1 or 2).
///
/// A minimal one-point polygon is a triangle or a quadrilateral
/// `conv{±u, ±w}`. Minimal two-point triangles are included for `k = 2`,
/// though it turns out none exist.
pub fn minimal_seeds_2d(k: usize) -> Vec<Polytope<2>> {
    let mut out: Vec<Polytope<2>> = classify_1point_triangles()
        .classes
        .into_iter()
        .filter(|t| is_minimal(t).unwrap())
        .collect();
    // conv{±e1, ±(x, y)} with area 4y <= 9 forces y <= 2
    for y in 1..=2 {
        for x in 0..y {
            let q = crate::polytope::conv(&[[1, 0], [-1, 0], [x, y], [-x, -y]]);
            if q.interior_count_up_to(1) == 1 && is_minimal(&q).unwrap() {
                out.push(q);
            }
        }
    }
    if k >= 2 {
        out.extend(
            hnf_simplices::<2>(12, 2)
                .into_iter()
                .filter(|t| is_minimal(t).unwrap()),
        );
    }
    dedupe(out)
}

fn dedupe<const D: usize>(ps: Vec<Polytope<D>>) -> Vec<Polytope<D>> {
    let keyed: Vec<_> = ps
        .into_par_iter()
        .map(|p| (affine_normal_form(&p).unwrap(), p))
        .collect();
    let map: BTreeMap<_, _> = keyed.into_iter().collect();
    map.into_values().collect()
}

/// Basis `{t, s}` of `Z^2` extending the primitive vector `t`.
fn complete_basis(t: Point2) -> Point2 {
    let g = t[0].extended_gcd(&t[1]);
    debug_assert_eq!(g.gcd.abs(), 1);
    // x t0 + y t1 = ±1, so s = (-y, x) has det(t, s) = ±1
    LatticePoint([-g.y, g.x])
}

/// One-point triangles in the plane `z = 0` with the interior point at the
/// origin, one per class.
fn centred_triangles() -> Vec<(Vec<Point3>, i64)> {
    classify_1point_triangles()
        .classes
        .iter()
        .map(|t| {
            let o = t.interior_lattice_points().unwrap()[0];
            let v = t
                .vertices()
                .iter()
                .map(|p| LatticePoint([p[0] - o[0], p[1] - o[1], 0]))
                .collect();
            (v, t.normalized_volume().unwrap())
        })
        .collect()
}

/// All minimal one-point 3-polytopes, derived from first principles.
///
/// With the interior point `o` at the origin, Carathéodory's theorem puts `o`
/// in the relative interior of a simplex spanned by vertices. Minimality
/// then leaves four shapes:
///
/// - a one-point tetrahedron;
/// - a one-point triangle `T` together with an antipodal pair `±y`;
/// - two one-point triangles sharing a vertex;
/// - `conv{±u_1, ±u_2, ±u_3}`.
///
/// Each family is enumerated exhaustively subject to `Vol <= max_volume`
/// (72 is the largest volume of a one-point 3-polytope).
pub fn derive_minimal_1point_3d(max_volume: i64) -> Vec<Polytope<3>> {
    let mut cands: Vec<Polytope<3>> = enumerate_1point_tetrahedra().classes;
    let tris = centred_triangles();

    for (t, area) in &tris {
        // triangle plus an antipodal pair
        for c in 1..=max_volume / (2 * area) {
            for a in 0..c {
                for b in 0..c {
                    let y = LatticePoint([a, b, c]);
                    if y.content() != 1 {
                        continue;
                    }
                    let mut pts = t.clone();
                    pts.push(y);
                    pts.push(-y);
                    cands.push(Polytope::convex_hull(&pts).unwrap());
                }
            }
        }
        // two triangles sharing the vertex t[i]
        for &ti in t {
            let t2 = LatticePoint([ti[0], ti[1]]);
            let s2 = complete_basis(t2);
            for c in 1..=max_volume / (2 * area) {
                for beta in (0..c).filter(|b| b.gcd(&c) == 1) {
                    let w = LatticePoint([beta * s2[0], beta * s2[1], c]);
                    let local = local_triangles(c, max_volume / (area * c));
                    for (p, q) in local {
                        let y1 = ti.scale(p[0]) + w.scale(p[1]);
                        let y2 = ti.scale(q[0]) + w.scale(q[1]);
                        let mut pts = t.clone();
                        pts.push(y1);
                        pts.push(y2);
                        cands.push(Polytope::convex_hull(&pts).unwrap());
                    }
                }
            }
        }
    }

    // antipodal octahedra: Vol = 8 |det|
    super::simplices::for_each_hnf::<3>(max_volume / 8, &mut |h| {
        let cols: Vec<Point3> = (0..3)
            .map(|j| LatticePoint([h[0][j], h[1][j], h[2][j]]))
            .collect();
        let mut pts = cols.clone();
        pts.extend(cols.iter().map(|c| -*c));
        cands.push(Polytope::convex_hull(&pts).unwrap());
    });

    let kept: Vec<Polytope<3>> = cands
        .into_par_iter()
        .filter(|p| {
            p.is_full_dimensional()
                && p.interior_count_up_to(1) == 1
                && p.normalized_volume().unwrap() <= max_volume
                && is_minimal(p).unwrap()
        })
        .collect();
    dedupe(kept)
}

/// Local triangles `{(1,0), p, q}` with `p_2 > 0 > q_2`, the origin as the
/// only relative interior lattice point, and `p_2 - q_2 <= height_sum`;
/// `p_1` is reduced modulo `c p_2`.
fn local_triangles(c: i64, height_sum: i64) -> Vec<(Point2, Point2)> {
    let e: Point2 = LatticePoint([1, 0]);
    let mut out = Vec::new();
    for p2 in 1..=9.min(height_sum - 1) {
        for q2 in -(9.min(height_sum - p2))..=-1 {
            for p1 in 0..c * p2 {
                let lo = 1 + Integer::div_floor(&((p1 - 1) * q2 - 9), &p2);
                let hi = 1 + Integer::div_ceil(&((p1 - 1) * q2 + 9), &p2);
                for q1 in lo..=hi {
                    let p = LatticePoint([p1, p2]);
                    let q = LatticePoint([q1, q2]);
                    let t = Polytope::convex_hull(&[e, p, q]).unwrap();
                    if t.is_full_dimensional()
                        && t.interior_lattice_points().unwrap() == vec![LatticePoint([0, 0])]
                    {
                        out.push((p, q));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::zpw_simplex3;
    use crate::polytope::conv;

    #[test]
    fn minimality_examples() {
        assert!(is_minimal(&conv(&[[0, 0, 0], [1, 0, 0], [0, 2, 0], [5, 2, 6]])).unwrap());
        assert!(!is_minimal(&zpw_simplex3(2)).unwrap());
        let oct = conv(&[
            [1, 0, 0],
            [-1, 0, 0],
            [0, 1, 0],
            [0, -1, 0],
            [0, 0, 1],
            [0, 0, -1],
        ]);
        assert!(is_minimal(&oct).unwrap());
        let unit = conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(matches!(is_minimal(&unit), Err(Error::Hollow(_))));
    }

    #[test]
    fn basis_completion() {
        for t in [[1, 0], [2, 3], [-5, 7], [0, -1]] {
            let t = LatticePoint(t);
            let s = complete_basis(t);
            assert_eq!(crate::exact::det2(&t, &s).abs(), 1);
        }
    }

    #[test]
    fn seed_bank_validation() {
        let bank: SeedBank<3> = parse_seed_bank("").unwrap();
        assert!(bank.is_empty());
        let text = "# source: test\n0,0,0;1,0,0;0,1,0;5,5,8\n0,0,0;1,0,0;0,2,0;5,2,6\n";
        let bank: SeedBank<3> = parse_seed_bank(text).unwrap();
        assert_eq!(bank.len(), 2);
        assert_eq!(bank.entries[0].source, SeedSource::Bundled("test".into()));
        let round = parse_seed_bank::<3>(&bank.to_text("x")).unwrap();
        assert_eq!(round.len(), 2);

        let dup = "0,0,0;1,0,0;0,1,0;5,5,8\n1,0,0;2,0,0;1,1,0;6,5,8\n";
        assert!(matches!(parse_seed_bank::<3>(dup), Err(Error::Seed(_))));
        let not_minimal = "0,0,0;2,0,0;0,3,0;0,0,18\n";
        assert!(matches!(
            parse_seed_bank::<3>(not_minimal),
            Err(Error::Seed(_))
        ));
        let hollow = "0,0,0;1,0,0;0,1,0;0,0,1\n";
        assert!(parse_seed_bank::<3>(hollow).is_err());
    }

    #[test]
    fn bundled_bank_matches_derivation() {
        let bank = bundled_seed_bank().unwrap();
        let derived = derive_minimal_1point_3d(72);
        let one: Vec<_> = bank
            .entries
            .iter()
            .filter(|e| e.key.invariants().interior_points == 1)
            .collect();
        assert_eq!(one.len(), derived.len());
        for p in &derived {
            let k = affine_normal_form(p).unwrap();
            assert!(one.iter().any(|e| e.key == k));
        }
        assert_eq!(bank.len() - one.len(), 5);
    }

    #[test]
    fn planar_seeds() {
        let one = minimal_seeds_2d(1);
        assert!(one.iter().all(|p| p.interior_count_up_to(1) == 1));
        // two triangles of areas 3 and 4 and the unit square
        assert_eq!(one.len(), 3);
        // every two-point triangle contains a one-point polygon
        assert_eq!(minimal_seeds_2d(2).len(), 3);
    }
}
