//! Growing polytopes one vertex at a time: candidate vertices from boundary
//! triangulations and weight tables, and the closure of a seed set under
//! single-vertex extensions.

mod dataset;
mod record;
mod store;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rayon::prelude::*;

use crate::exact::LatticePoint;
use crate::normal_form::{affine_normal_form, CanonicalKey};
use crate::polytope::{FaceRef, Polytope};
use crate::weights::{bundled_weights, SeedBank, SeedSource, Weights};
use crate::{Error, Result};

pub use dataset::{form_text, Check, CheckSummary, Dataset, Manifest};
pub use record::ClassificationRecord;
pub use store::{
    compact_key, read_checkpoint, Checkpoint, DedupStore, ShardState, FORMAT_VERSION, SHARDS,
};

/// Fan triangulation of the boundary, each facet fanned from its smallest
/// vertex. Returns every face of the triangulation: vertices, edges and (in
/// dimension 3) triangles, as sorted vertex index lists.
pub fn boundary_triangulation<const D: usize>(p: &Polytope<D>) -> Result<Vec<FaceRef>> {
    p.require_full("boundary triangulation")?;
    let mut faces = BTreeSet::new();
    let mut add = |mut v: Vec<usize>| {
        v.sort_unstable();
        faces.insert(FaceRef {
            dim: v.len() - 1,
            vertices: v,
        });
    };
    for i in 0..p.vertices().len() {
        add(vec![i]);
    }
    for cycle in p.facet_cycles() {
        if D == 2 {
            add(cycle.clone());
            continue;
        }
        let n = cycle.len();
        for i in 0..n {
            add(vec![cycle[i], cycle[(i + 1) % n]]);
        }
        for i in 1..n - 1 {
            add(vec![cycle[0], cycle[i]]);
            add(vec![cycle[0], cycle[i], cycle[i + 1]]);
        }
    }
    Ok(faces.into_iter().collect())
}

/// Weight tables `W_{n,k}` for `1 <= n <= dim`, `k <= K`, expanded into all
/// distinct orderings.
#[derive(Clone, Debug)]
pub struct WeightTables {
    k: usize,
    /// `orderings[n]`: distinct arrangements of every weight vector of length `n + 1`.
    orderings: Vec<Vec<Vec<i64>>>,
}

impl WeightTables {
    pub fn new(
        dim: usize,
        k: usize,
        tables: &BTreeMap<(usize, usize), BTreeSet<Weights>>,
    ) -> Result<Self> {
        let mut orderings = vec![Vec::new(); dim + 1];
        for (n, slot) in orderings.iter_mut().enumerate().skip(1) {
            let mut set = BTreeSet::new();
            for j in 1..=k {
                let ws = tables.get(&(n, j)).ok_or_else(|| {
                    Error::InvalidArgument(format!("missing weight table W({n},{j})"))
                })?;
                for w in ws {
                    if w.len() != n + 1 {
                        return Err(Error::InvalidArgument(format!(
                            "weights {w} in table W({n},{j})"
                        )));
                    }
                    set.extend(arrangements(w.as_slice()));
                }
            }
            *slot = set.into_iter().collect();
        }
        Ok(Self { k, orderings })
    }

    /// The tables shipped with the crate.
    pub fn bundled(dim: usize, k: usize) -> Result<Self> {
        let mut t = BTreeMap::new();
        for n in 1..=dim {
            for j in 1..=k {
                let ws = bundled_weights(n, j).ok_or_else(|| {
                    Error::InvalidArgument(format!("no bundled weights for ({n},{j})"))
                })?;
                t.insert((n, j), ws);
            }
        }
        Self::new(dim, k, &t)
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

fn arrangements(w: &[i64]) -> BTreeSet<Vec<i64>> {
    fn rec(rest: &mut Vec<i64>, cur: &mut Vec<i64>, out: &mut BTreeSet<Vec<i64>>) {
        if rest.is_empty() {
            out.insert(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = BTreeSet::new();
    rec(&mut w.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Every lattice point `u` outside `p` that could be added while keeping at
/// most `K` interior points: for an interior point `o`, a face `F` of the
/// boundary triangulation and weights `λ`, the point
/// `o - (1/λ_0) Σ λ_i (v_i - o)` over the vertices `v_i` of `F`.
pub fn candidate_vertices<const D: usize>(
    p: &Polytope<D>,
    tables: &WeightTables,
) -> Result<BTreeSet<LatticePoint<D>>> {
    let interior = p.interior_lattice_points()?;
    if interior.is_empty() {
        return Err(Error::Hollow(
            "growth starts from a non-hollow polytope".into(),
        ));
    }
    if interior.len() > tables.k {
        return Err(Error::InvalidArgument(format!(
            "{} interior points exceed K = {}",
            interior.len(),
            tables.k
        )));
    }
    let faces = boundary_triangulation(p)?;
    let verts = p.vertices();
    let mut out = BTreeSet::new();
    for o in &interior {
        for f in &faces {
            let n = f.vertices.len();
            let diffs: Vec<LatticePoint<D>> = f.vertices.iter().map(|&i| verts[i] - *o).collect();
            for lam in &tables.orderings[n] {
                let mut num = LatticePoint::<D>::zero();
                for (d, l) in diffs.iter().zip(&lam[1..]) {
                    num = num + d.scale(*l);
                }
                let den = lam[0];
                if num.0.iter().any(|x| x % den != 0) {
                    continue;
                }
                let u = *o - LatticePoint(num.0.map(|x| x / den));
                if !p.contains(&u) {
                    out.insert(u);
                }
            }
        }
    }
    Ok(out)
}

/// The polytopes `conv(p ∪ {u})` over all candidates `u` that keep between
/// one and `K` interior points.
pub fn expand<const D: usize>(p: &Polytope<D>, tables: &WeightTables) -> Result<Vec<Polytope<D>>> {
    let base = p.interior_count_up_to(tables.k);
    let mut out = Vec::new();
    for u in candidate_vertices(p, tables)? {
        let q = p.extend(&u)?;
        let n = q.interior_count_up_to(tables.k);
        debug_assert!(n >= base, "interior count dropped from {base} to {n}");
        if (1..=tables.k).contains(&n) {
            out.push(q);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default)]
pub struct GrowthOptions {
    /// Stop after this many waves, leaving a resumable checkpoint.
    pub max_waves: Option<usize>,
    /// Print one line per wave to stderr.
    pub progress: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthSummary {
    pub classes: usize,
    /// Classes with 0, 1 and 2 interior points.
    pub by_interior: [u64; 3],
    pub waves: usize,
    pub complete: bool,
}

/// Closure of the seeds under adding candidate vertices, breadth first.
///
/// Each wave expands the previous wave's new classes in parallel. The set of
/// classes reached does not depend on the thread count.
pub fn grow_closure<const D: usize>(
    seeds: &SeedBank<D>,
    tables: &WeightTables,
    store: &DedupStore,
    opts: &GrowthOptions,
) -> Result<GrowthSummary> {
    if seeds.is_empty() {
        return Err(Error::Seed("empty seed bank".into()));
    }
    let mut provenance = BTreeMap::new();
    let mut frontier = Vec::new();
    for e in &seeds.entries {
        let n = e.key.invariants().interior_points as usize;
        if n > tables.k {
            return Err(Error::Seed(format!(
                "seed {} has {n} interior points, K = {}",
                e.polytope, tables.k
            )));
        }
        let label = match &e.source {
            SeedSource::Bundled(s) => s.clone(),
            SeedSource::Computed => "computed".to_string(),
        };
        *provenance.entry(label).or_insert(0) += 1;
        if store.insert_with(&e.key, || ClassificationRecord::new::<D>(&e.key))? {
            frontier.push(e.key.clone());
        }
    }
    frontier.sort();
    let cp = Checkpoint {
        version: FORMAT_VERSION,
        dim: D,
        k: tables.k,
        wave: 0,
        complete: false,
        frontier: 0,
        seeds: provenance,
        shards: Vec::new(),
    };
    store.checkpoint(cp.clone(), &frontier)?;
    run_waves::<D>(store, tables, cp, frontier, opts)
}

/// Continues a checkpointed run. A completed run is returned unchanged.
pub fn resume_closure<const D: usize>(
    dir: &Path,
    opts: &GrowthOptions,
) -> Result<(DedupStore, GrowthSummary)> {
    let (store, cp, frontier) = DedupStore::resume(dir)?;
    if cp.dim != D {
        return Err(Error::Checkpoint(format!(
            "checkpoint is for dimension {}, not {D}",
            cp.dim
        )));
    }
    let tables = WeightTables::bundled(D, cp.k)?;
    let summary = run_waves::<D>(&store, &tables, cp, frontier, opts)?;
    Ok((store, summary))
}

fn run_waves<const D: usize>(
    store: &DedupStore,
    tables: &WeightTables,
    mut cp: Checkpoint,
    mut frontier: Vec<CanonicalKey>,
    opts: &GrowthOptions,
) -> Result<GrowthSummary> {
    let mut done_here = 0;
    while !frontier.is_empty() {
        if opts.max_waves.is_some_and(|m| done_here >= m) {
            break;
        }
        let next: Vec<Vec<CanonicalKey>> = frontier
            .par_iter()
            .map(|key| -> Result<Vec<CanonicalKey>> {
                let p = key.polytope::<D>()?;
                let mut fresh = Vec::new();
                let mut seen = BTreeSet::new();
                for q in expand(&p, tables)? {
                    let k = affine_normal_form(&q)?;
                    if !seen.insert(k.clone()) {
                        continue;
                    }
                    if store.insert_with(&k, || ClassificationRecord::new::<D>(&k))? {
                        fresh.push(k);
                    }
                }
                Ok(fresh)
            })
            .collect::<Result<_>>()?;
        frontier = next.into_iter().flatten().collect();
        frontier.sort();
        cp.wave += 1;
        done_here += 1;
        if opts.progress {
            eprintln!(
                "wave {}: {} new, {} total",
                cp.wave,
                frontier.len(),
                store.len()
            );
        }
        cp.complete = frontier.is_empty();
        store.checkpoint(cp.clone(), &frontier)?;
    }
    cp.complete = frontier.is_empty();
    if cp.complete {
        store.checkpoint(cp.clone(), &frontier)?;
    }
    Ok(GrowthSummary {
        classes: store.len(),
        by_interior: store.counts_by_interior(),
        waves: cp.wave,
        complete: cp.complete,
    })
}

/// Planar seeds as a bank.
pub fn seed_bank_2d(k: usize) -> Result<SeedBank<2>> {
    let mut bank = SeedBank::default();
    for p in crate::weights::minimal_seeds_2d(k) {
        bank.push(p, SeedSource::Computed)?;
    }
    Ok(bank)
}

/// Expands a sample of stored classes and reports any class not already in
/// the store; empty after a complete closure.
pub fn audit_closure<const D: usize>(
    store: &DedupStore,
    sample: &[CanonicalKey],
    tables: &WeightTables,
) -> Result<Vec<CanonicalKey>> {
    let missing: Vec<Vec<CanonicalKey>> = sample
        .par_iter()
        .map(|key| -> Result<Vec<CanonicalKey>> {
            let p = key.polytope::<D>()?;
            let mut out = Vec::new();
            for q in expand(&p, tables)? {
                let k = affine_normal_form(&q)?;
                if !store.contains(&k) {
                    out.push(k);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(missing.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::conv;

    #[test]
    fn triangulation_of_simple_solids() {
        let t = conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let f = boundary_triangulation(&t).unwrap();
        let count = |d| f.iter().filter(|x| x.dim == d).count();
        assert_eq!((count(0), count(1), count(2)), (4, 6, 4));

        let cube = conv(&[
            [0, 0, 0],
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 0],
            [1, 0, 1],
            [0, 1, 1],
            [1, 1, 1],
        ]);
        let f = boundary_triangulation(&cube).unwrap();
        let count = |d| f.iter().filter(|x| x.dim == d).count();
        // 12 cube edges plus one diagonal per square
        assert_eq!((count(0), count(1), count(2)), (8, 18, 12));
        // Euler characteristic of a sphere
        assert_eq!(count(0) as i64 - count(1) as i64 + count(2) as i64, 2);
    }

    #[test]
    fn triangle_areas_sum_to_boundary_volume() {
        let p = conv(&[
            [-1, -1, -1],
            [3, 0, 0],
            [0, 2, 0],
            [0, 0, 2],
            [1, 1, 2],
            [2, -1, 1],
        ]);
        let verts = p.vertices();
        let tri_area: i64 = boundary_triangulation(&p)
            .unwrap()
            .iter()
            .filter(|f| f.dim == 2)
            .map(|f| {
                let a = verts[f.vertices[0]];
                let b = verts[f.vertices[1]];
                let c = verts[f.vertices[2]];
                crate::exact::cross(&(b - a), &(c - a)).content()
            })
            .sum();
        assert_eq!(tri_area, p.boundary_volume().unwrap());
    }

    #[test]
    fn arrangements_are_distinct() {
        assert_eq!(arrangements(&[1, 1, 2]).len(), 3);
        assert_eq!(arrangements(&[1, 2, 3, 4]).len(), 24);
        assert_eq!(arrangements(&[1, 1, 1, 1]).len(), 1);
    }

    #[test]
    fn unit_weight_candidate() {
        let tables = WeightTables::bundled(3, 1).unwrap();
        let p = conv(&[[-1, -1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let c = candidate_vertices(&p, &tables).unwrap();
        // facet {e1,e2,e3} with λ = (1,1,1,1): o - (e1 + e2 + e3)
        assert!(c.contains(&LatticePoint([-1, -1, -1])) || p.contains(&LatticePoint([-1, -1, -1])));
        // edge {e1,e2} with λ = (1,1,1): -(e1 + e2)
        assert!(c.contains(&LatticePoint([-1, -1, 0])));
        assert!(c.iter().all(|u| !p.contains(u)));
    }

    #[test]
    fn growth_from_a_minimal_tetrahedron() {
        let tables = WeightTables::bundled(3, 2).unwrap();
        let p = conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [5, 5, 8]]);
        let grown = expand(&p, &tables).unwrap();
        assert!(grown
            .iter()
            .any(|q| q.vertices().len() == 5 && q.interior_count_up_to(2) == 2));
    }

    #[test]
    fn hollow_input_is_rejected() {
        let tables = WeightTables::bundled(2, 1).unwrap();
        let p = conv(&[[0, 0], [1, 0], [0, 1]]);
        assert!(matches!(
            candidate_vertices(&p, &tables),
            Err(Error::Hollow(_))
        ));
    }

    #[test]
    fn planar_closure_gives_the_sixteen_reflexive_polygons() {
        let bank = seed_bank_2d(1).unwrap();
        let tables = WeightTables::bundled(2, 1).unwrap();
        let store = DedupStore::in_memory(2);
        let s = grow_closure(&bank, &tables, &store, &GrowthOptions::default()).unwrap();
        assert!(s.complete);
        assert_eq!(s.classes, 16);
    }
}
