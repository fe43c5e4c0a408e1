//! Read access to a dataset directory written by the growth closure, and
//! record-level checks.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ehrhart::{hibi_holds, identity_report, ConjectureReport, DeltaVector};
use crate::{Error, Result};

use super::record::ClassificationRecord;
use super::store::{
    read_checkpoint, read_committed, shard_path, Checkpoint, FORMAT_VERSION, SHARDS,
};

/// Summary written next to the shards once a closure completes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub dim: usize,
    pub k: usize,
    pub complete: bool,
    pub classes: u64,
    /// Classes with 0, 1 and 2 interior points.
    pub by_interior: [u64; 3],
    pub waves: usize,
    pub seeds: BTreeMap<String, usize>,
    pub checks: Option<CheckSummary>,
}

/// Which checks [`Dataset::verify`] runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Check {
    /// δ_0 = 1, δ_1 = |P ∩ Z^d| - d - 1, δ_d = interior count, Σδ = Vol.
    Identities,
    /// Hibi's lower bound `δ_1 <= δ_i` for the non-trailing entries.
    Hibi,
    /// Volume and δ-coefficient bounds for 3-polytopes.
    Volume,
    /// Recompute every record field from the canonical form.
    Audit,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Identities, Check::Hibi, Check::Volume, Check::Audit];

    pub fn name(self) -> &'static str {
        match self {
            Check::Identities => "identities",
            Check::Hibi => "hibi",
            Check::Volume => "volume",
            Check::Audit => "audit",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check {s:?}")))
    }
}

const MAX_WITNESSES: usize = 20;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub records: u64,
    /// Records outside a check's domain (hollow, or wrong dimension).
    pub precondition_failures: u64,
    pub violations: BTreeMap<String, u64>,
    /// Records attaining the volume bound with equality.
    pub volume_equalities: u64,
    /// Canonical forms of offending or extremal records, capped.
    pub witnesses: Vec<String>,
}

impl CheckSummary {
    pub fn total_violations(&self) -> u64 {
        self.violations.values().sum::<u64>() + self.precondition_failures
    }

    fn violation(&mut self, name: &str, rec: &ClassificationRecord) {
        *self.violations.entry(name.to_string()).or_insert(0) += 1;
        self.witness(name, rec);
    }

    fn witness(&mut self, label: &str, rec: &ClassificationRecord) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(format!("{label}: {}", form_text(rec)));
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.records += other.records;
        self.precondition_failures += other.precondition_failures;
        self.volume_equalities += other.volume_equalities;
        for (k, v) in other.violations {
            *self.violations.entry(k).or_insert(0) += v;
        }
        self.witnesses.extend(other.witnesses);
        self.witnesses.truncate(MAX_WITNESSES);
        self
    }

    /// Runs the selected checks on one record.
    pub fn check(&mut self, rec: &ClassificationRecord, checks: &[Check]) -> Result<()> {
        self.records += 1;
        let inv = rec.invariants;
        if inv.interior_points == 0 || rec.delta.len() != rec.dim() + 1 {
            self.precondition_failures += 1;
            self.witness("precondition", rec);
            return Ok(());
        }
        let delta = DeltaVector(rec.delta.clone());
        for &c in checks {
            match c {
                Check::Identities => {
                    let r = identity_report(
                        &delta,
                        inv.lattice_points as usize,
                        inv.interior_points as usize,
                        inv.volume,
                    );
                    if !r.passed {
                        self.violation("identities", rec);
                    }
                }
                Check::Hibi => {
                    if !hibi_holds(&delta) {
                        self.violation("hibi", rec);
                    }
                }
                Check::Volume => {
                    if rec.dim() != 3 {
                        continue;
                    }
                    let r = ConjectureReport::from_delta(&delta);
                    for v in r.violations() {
                        self.violation(v, rec);
                    }
                    if r.volume.tight() {
                        self.volume_equalities += 1;
                        self.witness("volume equality", rec);
                    }
                }
                Check::Audit => {
                    let ok = match rec.dim() {
                        2 => rec.audit::<2>()?,
                        3 => rec.audit::<3>()?,
                        d => return Err(Error::Dataset(format!("record of dimension {d}"))),
                    };
                    if !ok {
                        self.violation("audit", rec);
                    }
                }
            }
        }
        Ok(())
    }
}

/// Vertices of the canonical form in the polytope text format.
pub fn form_text(rec: &ClassificationRecord) -> String {
    let n = rec.form.first().map_or(0, |r| r.len());
    (0..n)
        .map(|j| {
            rec.form
                .iter()
                .map(|row| row[j].to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// A dataset directory opened for reading.
pub struct Dataset {
    dir: PathBuf,
    checkpoint: Checkpoint,
}

impl Dataset {
    pub fn open(dir: &Path) -> Result<Self> {
        if !dir.join("checkpoint.json").exists() {
            return Err(Error::Dataset(format!(
                "{} has no checkpoint.json",
                dir.display()
            )));
        }
        let checkpoint = read_checkpoint(dir)?;
        for i in 0..SHARDS {
            let p = shard_path(dir, i, "log");
            if !p.exists() {
                return Err(Error::Dataset(format!("missing shard {}", p.display())));
            }
        }
        Ok(Self {
            dir: dir.to_path_buf(),
            checkpoint,
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn checkpoint(&self) -> &Checkpoint {
        &self.checkpoint
    }

    pub fn dim(&self) -> usize {
        self.checkpoint.dim
    }

    pub fn len(&self) -> u64 {
        self.checkpoint.shards.iter().map(|s| s.records).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shard_records(&self, i: usize) -> Result<Vec<ClassificationRecord>> {
        read_committed(&shard_path(&self.dir, i, "log"), &self.checkpoint.shards[i])
    }

    /// Parallel map-reduce over all records, shard by shard.
    pub fn fold<T, F, R>(&self, init: impl Fn() -> T + Sync + Send, f: F, reduce: R) -> Result<T>
    where
        T: Send,
        F: Fn(T, &ClassificationRecord) -> Result<T> + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        (0..SHARDS)
            .into_par_iter()
            .map(|i| -> Result<T> {
                let mut acc = init();
                for r in self.shard_records(i)? {
                    acc = f(acc, &r)?;
                }
                Ok(acc)
            })
            .try_reduce(&init, |a, b| Ok(reduce(a, b)))
    }

    /// Every record, in shard order.
    pub fn records(&self) -> Result<Vec<ClassificationRecord>> {
        let mut out = Vec::with_capacity(self.len() as usize);
        for i in 0..SHARDS {
            out.extend(self.shard_records(i)?);
        }
        Ok(out)
    }

    pub fn verify(&self, checks: &[Check]) -> Result<CheckSummary> {
        self.fold(
            CheckSummary::default,
            |mut s, r| {
                s.check(r, checks)?;
                Ok(s)
            },
            CheckSummary::merge,
        )
    }

    pub fn manifest(&self) -> Result<Option<Manifest>> {
        let path = self.dir.join("manifest.json");
        if !path.exists() {
            return Ok(None);
        }
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        Ok(Some(serde_json::from_str(&text)?))
    }

    /// Manifest reflecting the committed checkpoint.
    pub fn build_manifest(&self, checks: Option<CheckSummary>) -> Manifest {
        let mut by_interior = [0; 3];
        for s in &self.checkpoint.shards {
            for (o, x) in by_interior.iter_mut().zip(s.by_interior) {
                *o += x;
            }
        }
        Manifest {
            version: FORMAT_VERSION,
            dim: self.checkpoint.dim,
            k: self.checkpoint.k,
            complete: self.checkpoint.complete,
            classes: self.len(),
            by_interior,
            waves: self.checkpoint.wave,
            seeds: self.checkpoint.seeds.clone(),
            checks,
        }
    }

    pub fn write_manifest(&self, m: &Manifest) -> Result<()> {
        let path = self.dir.join("manifest.json");
        std::fs::write(&path, serde_json::to_vec_pretty(m)?).map_err(|e| Error::io(&path, e))
    }
}
