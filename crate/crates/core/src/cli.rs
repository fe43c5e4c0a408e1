//! Drivers behind the `polyclass` binary.
//!
//! Exit codes: 0 on success, 2 when a check finds violations, 1 on
//! operational errors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::ehrhart::{check_basic_identities, delta_vector, ConjectureReport, DeltaVector};
use crate::exact::Rational;
use crate::growth::{
    form_text, grow_closure, resume_closure, seed_bank_2d, Check, CheckSummary,
    ClassificationRecord, Dataset, DedupStore, GrowthOptions, Manifest, WeightTables,
};
use crate::polytope::text::{parse_any, AnyPolytope};
use crate::weights::{bundled_seed_bank, load_seed_bank, SeedBank};
use crate::{Error, Result};

/// Environment variable naming the default directory for datasets.
pub const SCRATCH_ENV: &str = "POLYCLASS_SCRATCH";

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_VIOLATIONS: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "polyclass",
    version,
    about = "Classify lattice polytopes with one or two interior points"
)]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grow the classification from the seed bank into a dataset directory.
    Classify(ClassifyArgs),
    /// Print the δ-vector of every polytope in a file.
    Delta(DeltaArgs),
    /// Run checks over a dataset or a polytope file.
    Verify(VerifyArgs),
    /// Histograms, maxima and (δ1, δ2) scatter data of a dataset.
    Stats(StatsArgs),
    /// Write the canonical forms of a dataset in the polytope text format.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=3))]
    pub dim: u8,
    /// Maximum number of interior points.
    #[arg(short, long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub k: u8,
    /// Seed bank file; defaults to the bundled seeds.
    #[arg(long)]
    pub seeds: Option<PathBuf>,
    /// Output directory; defaults to `$POLYCLASS_SCRATCH/classify-d<dim>-k<k>`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Continue from the checkpoint in the output directory.
    #[arg(long)]
    pub resume: bool,
    /// Stop after this many waves (the run stays resumable).
    #[arg(long, hide = true)]
    pub max_waves: Option<usize>,
    #[arg(long)]
    pub progress: bool,
}

#[derive(Debug, Args)]
pub struct DeltaArgs {
    pub file: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Dataset directory or polytope file.
    pub input: PathBuf,
    /// Comma-separated subset of identities, hibi, volume, audit.
    #[arg(long, value_delimiter = ',', default_value = "identities,hibi,volume")]
    pub checks: Vec<String>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    pub dataset: PathBuf,
    /// Only records with this many interior points.
    #[arg(long)]
    pub interior: Option<u32>,
    /// Directory for `stats.json` and the scatter CSV files.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub dataset: PathBuf,
    #[arg(long)]
    pub interior: Option<u32>,
    #[arg(long)]
    pub vertices: Option<usize>,
    #[arg(long)]
    pub simplices: bool,
    /// Output file; defaults to stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Parses arguments, runs the command and maps errors to exit code 1.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8> {
    if let Some(n) = cli.threads {
        // a second initialization (e.g. in tests) is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match cli.command {
        Command::Classify(a) => cmd_classify(&a, out),
        Command::Delta(a) => cmd_delta(&a.file, out),
        Command::Verify(a) => {
            let checks = a
                .checks
                .iter()
                .map(|s| Check::parse(s.trim()))
                .collect::<Result<Vec<_>>>()?;
            cmd_verify(&a.input, &checks, out)
        }
        Command::Stats(a) => cmd_stats(&a, out),
        Command::Export(a) => cmd_export(&a, out),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::io("<output>", e)
}

/// `$POLYCLASS_SCRATCH`, falling back to the system temporary directory.
pub fn scratch_dir() -> PathBuf {
    std::env::var_os(SCRATCH_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("polyclass"))
}

pub fn cmd_classify(a: &ClassifyArgs, out: &mut dyn Write) -> Result<u8> {
    let k = a.k as usize;
    let dir = a
        .out
        .clone()
        .unwrap_or_else(|| scratch_dir().join(format!("classify-d{}-k{k}", a.dim)));
    let opts = GrowthOptions {
        max_waves: a.max_waves,
        progress: a.progress,
    };
    let resuming = a.resume && dir.join("checkpoint.json").exists();
    let summary = match (a.dim, resuming) {
        (2, true) => resume_closure::<2>(&dir, &opts)?.1,
        (3, true) => resume_closure::<3>(&dir, &opts)?.1,
        (2, false) => {
            let seeds = match &a.seeds {
                Some(p) => load_seed_bank::<2>(p)?,
                None => seed_bank_2d(k)?,
            };
            start::<2>(&seeds.restricted(k), k, &dir, &opts)?
        }
        (3, false) => {
            let seeds = match &a.seeds {
                Some(p) => load_seed_bank::<3>(p)?,
                None => bundled_seed_bank()?,
            };
            start::<3>(&seeds.restricted(k), k, &dir, &opts)?
        }
        (d, _) => return Err(Error::InvalidArgument(format!("dimension {d}"))),
    };
    let ds = Dataset::open(&dir)?;
    let checks = if summary.complete {
        Some(ds.verify(&[Check::Identities, Check::Hibi, Check::Volume])?)
    } else {
        None
    };
    let manifest = ds.build_manifest(checks);
    if manifest.complete {
        ds.write_manifest(&manifest)?;
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&manifest)?).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn start<const D: usize>(
    seeds: &SeedBank<D>,
    k: usize,
    dir: &Path,
    opts: &GrowthOptions,
) -> Result<crate::growth::GrowthSummary> {
    let tables = WeightTables::bundled(D, k)?;
    let store = DedupStore::create(dir, D)?;
    grow_closure(seeds, &tables, &store, opts)
}

/// One line per polytope: the δ-vector and `ok` or the failed identities.
pub fn cmd_delta(file: &Path, out: &mut dyn Write) -> Result<u8> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::io(file, e))?;
    let mut code = EXIT_OK;
    for (_, p) in parse_any(&text)? {
        let (delta, report) = match &p {
            AnyPolytope::Two(p) => (delta_vector(p)?, check_basic_identities(p)?),
            AnyPolytope::Three(p) => (delta_vector(p)?, check_basic_identities(p)?),
        };
        let status = if report.passed {
            "ok".to_string()
        } else {
            code = EXIT_VIOLATIONS;
            report.violations.join("; ")
        };
        writeln!(out, "{delta}\t{status}").map_err(io_err)?;
    }
    Ok(code)
}

pub fn cmd_verify(input: &Path, checks: &[Check], out: &mut dyn Write) -> Result<u8> {
    let summary = if input.is_dir() {
        Dataset::open(input)?.verify(checks)?
    } else {
        verify_file(input, checks)?
    };
    writeln!(out, "{}", serde_json::to_string_pretty(&summary)?).map_err(io_err)?;
    Ok(if summary.total_violations() > 0 {
        EXIT_VIOLATIONS
    } else {
        EXIT_OK
    })
}

/// Checks every polytope of a text file, computing records on the fly.
fn verify_file(path: &Path, checks: &[Check]) -> Result<CheckSummary> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut summary = CheckSummary::default();
    for (line, p) in parse_any(&text)? {
        let rec = match &p {
            AnyPolytope::Two(p) => file_record(p),
            AnyPolytope::Three(p) => file_record(p),
        };
        match rec {
            Ok(r) => summary.check(&r, checks)?,
            Err(Error::Hollow(_)) | Err(Error::Degenerate(_)) => {
                summary.records += 1;
                summary.precondition_failures += 1;
                summary.witnesses.push(format!("precondition: line {line}"));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(summary)
}

fn file_record<const D: usize>(p: &crate::polytope::Polytope<D>) -> Result<ClassificationRecord> {
    p.require_full("verify")?;
    if p.interior_count_up_to(0) == 0 {
        return Err(Error::Hollow("no interior lattice point".into()));
    }
    let key = crate::normal_form::affine_normal_form(p)?;
    ClassificationRecord::new::<D>(&key)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremum {
    pub value: String,
    pub count: u64,
}

/// Aggregates of a dataset; every field is independent of record order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsReport {
    pub classes: u64,
    pub by_interior: BTreeMap<u32, u64>,
    pub volume_histogram: BTreeMap<i64, u64>,
    pub vertex_histogram: BTreeMap<usize, u64>,
    pub simplices: u64,
    pub simplicial: u64,
    pub maxima: BTreeMap<String, Extremum>,
    /// `(δ1, δ2)` pairs attained by a simplex.
    pub delta12_simplex: BTreeSet<(i64, i64)>,
    /// `(δ1, δ2)` pairs attained only by non-simplices.
    pub delta12_other: BTreeSet<(i64, i64)>,
    pub volume_equalities: u64,
}

fn bump_max(maxima: &mut BTreeMap<String, Extremum>, name: &str, value: Rational) {
    let e = maxima.entry(name.to_string()).or_default();
    let cur: Option<Rational> = e.value.parse().ok();
    match cur {
        Some(c) if c > value => {}
        Some(c) if c == value => e.count += 1,
        _ => {
            e.value = value.to_string();
            e.count = 1;
        }
    }
}

impl StatsReport {
    pub fn add(&mut self, r: &ClassificationRecord) {
        let inv = r.invariants;
        self.classes += 1;
        *self.by_interior.entry(inv.interior_points).or_insert(0) += 1;
        *self.volume_histogram.entry(inv.volume).or_insert(0) += 1;
        *self
            .vertex_histogram
            .entry(inv.vertices as usize)
            .or_insert(0) += 1;
        self.simplices += r.simplex as u64;
        self.simplicial += r.simplicial as u64;
        let int = |x: i64| Rational::from_integer(x.into());
        bump_max(&mut self.maxima, "volume", int(inv.volume));
        bump_max(&mut self.maxima, "boundary_volume", int(r.boundary_volume));
        bump_max(
            &mut self.maxima,
            "lattice_points",
            int(inv.lattice_points as i64),
        );
        for (name, x) in ["vertices", "edges", "facets"].iter().zip(&r.f_vector) {
            bump_max(&mut self.maxima, name, int(*x as i64));
        }
        if let Ok(dv) = r.dual_volume.parse::<Rational>() {
            if !dv.is_zero() {
                bump_max(&mut self.maxima, "dual_volume", dv);
            }
        }
        if r.delta.len() == 4 {
            let pair = (r.delta[1], r.delta[2]);
            if r.simplex {
                self.delta12_simplex.insert(pair);
            } else {
                self.delta12_other.insert(pair);
            }
            if r.delta[3] > 0
                && ConjectureReport::from_delta(&DeltaVector(r.delta.clone()))
                    .volume
                    .tight()
            {
                self.volume_equalities += 1;
            }
        }
    }

    pub fn merge(mut self, o: Self) -> Self {
        self.classes += o.classes;
        for (k, v) in o.by_interior {
            *self.by_interior.entry(k).or_insert(0) += v;
        }
        for (k, v) in o.volume_histogram {
            *self.volume_histogram.entry(k).or_insert(0) += v;
        }
        for (k, v) in o.vertex_histogram {
            *self.vertex_histogram.entry(k).or_insert(0) += v;
        }
        self.simplices += o.simplices;
        self.simplicial += o.simplicial;
        self.volume_equalities += o.volume_equalities;
        for (name, e) in o.maxima {
            let v: Rational = e.value.parse().expect("stored maxima are rationals");
            let mine = self.maxima.entry(name).or_default();
            match mine.value.parse::<Rational>().ok() {
                Some(m) if m > v => {}
                Some(m) if m == v => mine.count += e.count,
                _ => *mine = e,
            }
        }
        self.delta12_simplex.extend(o.delta12_simplex);
        self.delta12_other.extend(o.delta12_other);
        self
    }

    /// Drops from `delta12_other` the pairs also attained by a simplex.
    pub fn finish(mut self) -> Self {
        let s = self.delta12_simplex.clone();
        self.delta12_other.retain(|p| !s.contains(p));
        self
    }

    pub fn from_records<'a>(records: impl IntoIterator<Item = &'a ClassificationRecord>) -> Self {
        let mut s = Self::default();
        for r in records {
            s.add(r);
        }
        s.finish()
    }

    pub fn scatter_csv(pairs: &BTreeSet<(i64, i64)>) -> String {
        let mut s = String::from("delta1,delta2\n");
        for (a, b) in pairs {
            let _ = writeln!(s, "{a},{b}");
        }
        s
    }
}

pub fn compute_stats(ds: &Dataset, interior: Option<u32>) -> Result<StatsReport> {
    let s = ds.fold(
        StatsReport::default,
        |mut s, r| {
            if interior.is_none_or(|k| r.invariants.interior_points == k) {
                s.add(r);
            }
            Ok(s)
        },
        StatsReport::merge,
    )?;
    Ok(s.finish())
}

pub fn cmd_stats(a: &StatsArgs, out: &mut dyn Write) -> Result<u8> {
    let ds = Dataset::open(&a.dataset)?;
    let report = compute_stats(&ds, a.interior)?;
    let json = serde_json::to_string_pretty(&report)?;
    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let write = |name: &str, body: &str| {
            let p = dir.join(name);
            std::fs::write(&p, body).map_err(|e| Error::io(&p, e))
        };
        write("stats.json", &json)?;
        write(
            "scatter_simplex.csv",
            &StatsReport::scatter_csv(&report.delta12_simplex),
        )?;
        write(
            "scatter_nonsimplex.csv",
            &StatsReport::scatter_csv(&report.delta12_other),
        )?;
    }
    writeln!(out, "{json}").map_err(io_err)?;
    Ok(EXIT_OK)
}

pub fn cmd_export(a: &ExportArgs, out: &mut dyn Write) -> Result<u8> {
    let ds = Dataset::open(&a.dataset)?;
    let mut lines: Vec<String> = ds
        .records()?
        .iter()
        .filter(|r| a.interior.is_none_or(|k| r.invariants.interior_points == k))
        .filter(|r| {
            a.vertices
                .is_none_or(|n| r.invariants.vertices as usize == n)
        })
        .filter(|r| !a.simplices || r.simplex)
        .map(form_text)
        .collect();
    lines.sort();
    let mut body = String::new();
    for l in &lines {
        body.push_str(l);
        body.push('\n');
    }
    match &a.output {
        Some(p) => std::fs::write(p, body).map_err(|e| Error::io(p, e))?,
        None => out.write_all(body.as_bytes()).map_err(io_err)?,
    }
    Ok(EXIT_OK)
}

/// Reads a dataset's manifest, building one from the checkpoint if absent.
pub fn manifest_of(dir: &Path) -> Result<Manifest> {
    let ds = Dataset::open(dir)?;
    Ok(match ds.manifest()? {
        Some(m) => m,
        None => ds.build_manifest(None),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::zpw_simplex3;
    use crate::normal_form::affine_normal_form;
    use crate::polytope::conv;

    fn rec(p: &crate::polytope::Polytope<3>) -> ClassificationRecord {
        ClassificationRecord::new::<3>(&affine_normal_form(p).unwrap()).unwrap()
    }

    #[test]
    fn stats_are_order_independent() {
        let recs = vec![
            rec(&zpw_simplex3(1)),
            rec(&zpw_simplex3(2)),
            rec(&conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [5, 5, 8]])),
            rec(&conv(&[
                [1, 0, 0],
                [-1, 0, 0],
                [0, 1, 0],
                [0, -1, 0],
                [0, 0, 1],
                [0, 0, -1],
            ])),
        ];
        let a = StatsReport::from_records(&recs);
        let rev: Vec<_> = recs.iter().rev().cloned().collect();
        let b = StatsReport::from_records(&rev);
        assert_eq!(a, b);
        let split = StatsReport::default();
        let mut left = split.clone();
        left.add(&recs[2]);
        let mut right = split;
        for r in [&recs[0], &recs[3], &recs[1]] {
            right.add(r);
        }
        assert_eq!(left.merge(right).finish(), a);
        assert_eq!(
            a.maxima["volume"],
            Extremum {
                value: "108".into(),
                count: 1
            }
        );
        // both extremal simplices meet Vol <= 36(d3 + 1)
        assert_eq!(a.volume_equalities, 2);
        assert_eq!(a.simplices, 3);
    }

    #[test]
    fn argument_parsing() {
        let c = Cli::try_parse_from(["polyclass", "classify", "--dim", "2", "-k", "1"]).unwrap();
        assert!(matches!(
            c.command,
            Command::Classify(ClassifyArgs { dim: 2, k: 1, .. })
        ));
        assert!(Cli::try_parse_from(["polyclass", "classify", "-k", "3"]).is_err());
        let c =
            Cli::try_parse_from(["polyclass", "verify", "x", "--checks", "hibi,audit"]).unwrap();
        match c.command {
            Command::Verify(v) => assert_eq!(v.checks, vec!["hibi", "audit"]),
            _ => unreachable!(),
        }
    }
}
