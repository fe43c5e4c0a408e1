//! Per-class invariants stored alongside every canonical form.

use serde::{Deserialize, Serialize};

use crate::ehrhart::delta_vector;
use crate::exact::{IntMatrix, LatticePoint};
use crate::normal_form::{encode_matrix, CanonicalKey, Invariants};
use crate::polytope::Polytope;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    /// Canonical matrix, one row per coordinate.
    pub form: Vec<Vec<i64>>,
    pub invariants: Invariants,
    pub boundary_volume: i64,
    /// Vertices, edges and (in dimension 3) facets.
    pub f_vector: Vec<usize>,
    pub delta: Vec<i64>,
    /// Largest dual volume over the interior points, as `p/q`.
    pub dual_volume: String,
    pub simplex: bool,
    pub simplicial: bool,
}

impl ClassificationRecord {
    pub fn new<const D: usize>(key: &CanonicalKey) -> Result<Self> {
        let p = key.polytope::<D>()?;
        let m = key.matrix();
        let form = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        let f_vector = if D == 3 {
            let (v, e, f) = p.f_vector()?;
            vec![v, e, f]
        } else {
            vec![p.vertices().len(), p.facets().len()]
        };
        let simplicial = p.facet_cycles().iter().all(|c| c.len() == D);
        Ok(Self {
            form,
            invariants: *key.invariants(),
            boundary_volume: p.boundary_volume()?,
            f_vector,
            delta: delta_vector(&p)?.0,
            dual_volume: p.dual_volume()?.to_string(),
            simplex: p.is_simplex(),
            simplicial,
        })
    }

    pub fn key(&self) -> Result<CanonicalKey> {
        let m = IntMatrix::from_rows(&self.form)?;
        CanonicalKey::from_parts(encode_matrix(&m), self.invariants)
    }

    pub fn dim(&self) -> usize {
        self.form.len()
    }

    pub fn polytope<const D: usize>(&self) -> Result<Polytope<D>> {
        if self.form.len() != D {
            return Err(Error::Shape(format!(
                "record of dimension {}, expected {D}",
                self.form.len()
            )));
        }
        let n = self.form.first().map_or(0, |r| r.len());
        let pts: Vec<LatticePoint<D>> = (0..n)
            .map(|j| {
                let mut c = [0; D];
                for (i, ci) in c.iter_mut().enumerate() {
                    *ci = self.form[i][j];
                }
                LatticePoint(c)
            })
            .collect();
        Polytope::convex_hull(&pts)
    }

    /// Recomputes every field from the canonical form and compares.
    pub fn audit<const D: usize>(&self) -> Result<bool> {
        let key = self.key()?;
        Ok(ClassificationRecord::new::<D>(&key)? == *self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::zpw_simplex3;
    use crate::normal_form::affine_normal_form;

    #[test]
    fn record_of_the_extremal_simplex() {
        let key = affine_normal_form(&zpw_simplex3(2)).unwrap();
        let r = ClassificationRecord::new::<3>(&key).unwrap();
        assert_eq!(r.delta, vec![1, 51, 54, 2]);
        assert_eq!(r.invariants.volume, 108);
        assert_eq!(r.boundary_volume, 102);
        assert_eq!(r.f_vector, vec![4, 6, 4]);
        assert!(r.simplex && r.simplicial);
        assert_eq!(r.key().unwrap(), key);
        assert!(r.audit::<3>().unwrap());
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            serde_json::from_str::<ClassificationRecord>(&json).unwrap(),
            r
        );
    }
}
