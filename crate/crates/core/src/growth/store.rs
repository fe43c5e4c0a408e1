//! Sharded insert-if-absent store of canonical keys, optionally backed by
//! append-only shard logs with checksummed checkpoints.
//!
//! Layout of a dataset directory:
//!
//! ```text
//! shards/xx.log     one JSON ClassificationRecord per line
//! shards/xx.idx     (hash u64 LE, byte offset u64 LE) per record
//! checkpoint.json   committed shard lengths and FNV-1a checksums
//! frontier.jsonl    polytopes still to be expanded
//! manifest.json     written once the closure is complete
//! ```

use std::collections::{BTreeMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::normal_form::{fnv1a_update, CanonicalKey, Invariants, FNV_OFFSET};
use crate::{Error, Result};

use super::record::ClassificationRecord;

pub const SHARDS: usize = 256;
pub const FORMAT_VERSION: u32 = 1;

/// Zigzag varint encoding of a canonical key; the in-memory membership
/// representation.
pub fn compact_key(key: &CanonicalKey) -> Box<[u8]> {
    let m = key.matrix();
    let mut out = Vec::with_capacity(2 + m.as_slice().len());
    let mut put = |x: i64| {
        let mut z = ((x << 1) ^ (x >> 63)) as u64;
        loop {
            let b = (z & 0x7f) as u8;
            z >>= 7;
            if z == 0 {
                out.push(b);
                break;
            }
            out.push(b | 0x80);
        }
    };
    put(m.rows() as i64);
    put(m.cols() as i64);
    for &x in m.as_slice() {
        put(x);
    }
    out.into_boxed_slice()
}

fn shard_of(key: &CanonicalKey) -> usize {
    (key.hash64() >> 56) as usize
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShardState {
    pub bytes: u64,
    pub records: u64,
    pub checksum: u64,
    /// Records by number of interior points (0, 1, 2).
    pub by_interior: [u64; 3],
}

#[derive(Default)]
struct Shard {
    keys: HashSet<Box<[u8]>>,
    log: Option<BufWriter<File>>,
    idx: Option<BufWriter<File>>,
    state: ShardState,
}

impl Shard {
    fn append(&mut self, key: &CanonicalKey, record: Option<&ClassificationRecord>) -> Result<()> {
        if let (Some(log), Some(idx), Some(record)) = (self.log.as_mut(), self.idx.as_mut(), record)
        {
            let mut line = serde_json::to_vec(record)?;
            line.push(b'\n');
            let io = |e| Error::io("shard log", e);
            idx.write_all(&key.hash64().to_le_bytes()).map_err(io)?;
            idx.write_all(&self.state.bytes.to_le_bytes()).map_err(io)?;
            log.write_all(&line).map_err(io)?;
            self.state.bytes += line.len() as u64;
            self.state.checksum = fnv1a_update(self.state.checksum, &line);
        }
        self.state.records += 1;
        let i = (key.invariants().interior_points as usize).min(2);
        self.state.by_interior[i] += 1;
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        for w in [self.log.as_mut(), self.idx.as_mut()].into_iter().flatten() {
            w.flush().map_err(|e| Error::io("shard", e))?;
            w.get_ref().sync_data().map_err(|e| Error::io("shard", e))?;
        }
        Ok(())
    }
}

/// Committed progress of a growth run.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Checkpoint {
    pub version: u32,
    pub dim: usize,
    pub k: usize,
    pub wave: usize,
    pub complete: bool,
    pub frontier: usize,
    pub seeds: BTreeMap<String, usize>,
    pub shards: Vec<ShardState>,
}

#[derive(Serialize, Deserialize)]
struct FrontierEntry {
    form: Vec<Vec<i64>>,
    invariants: Invariants,
}

/// Concurrent insert-if-absent set of canonical keys.
pub struct DedupStore {
    dir: Option<PathBuf>,
    dim: usize,
    shards: Vec<Mutex<Shard>>,
}

pub fn shard_path(dir: &Path, i: usize, ext: &str) -> PathBuf {
    dir.join("shards").join(format!("{i:02x}.{ext}"))
}

fn open_append(path: &Path) -> Result<BufWriter<File>> {
    let f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    Ok(BufWriter::new(f))
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let mut f = File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
    f.write_all(bytes).map_err(|e| Error::io(&tmp, e))?;
    f.sync_all().map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

impl DedupStore {
    pub fn in_memory(dim: usize) -> Self {
        Self {
            dir: None,
            dim,
            shards: (0..SHARDS).map(|_| Mutex::new(Shard::default())).collect(),
        }
    }

    /// Starts an empty on-disk store; refuses a directory that already holds
    /// shards.
    pub fn create(dir: &Path, dim: usize) -> Result<Self> {
        let sd = dir.join("shards");
        if sd.exists()
            && fs::read_dir(&sd)
                .map_err(|e| Error::io(&sd, e))?
                .next()
                .is_some()
        {
            return Err(Error::Dataset(format!(
                "{} already contains shards; use resume",
                dir.display()
            )));
        }
        fs::create_dir_all(&sd).map_err(|e| Error::io(&sd, e))?;
        let mut shards = Vec::with_capacity(SHARDS);
        for i in 0..SHARDS {
            let shard = Shard {
                log: Some(open_append(&shard_path(dir, i, "log"))?),
                idx: Some(open_append(&shard_path(dir, i, "idx"))?),
                state: ShardState {
                    checksum: FNV_OFFSET,
                    ..Default::default()
                },
                ..Default::default()
            };
            shards.push(Mutex::new(shard));
        }
        Ok(Self {
            dir: Some(dir.to_path_buf()),
            dim,
            shards,
        })
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.shards
            .iter()
            .map(|s| s.lock().unwrap().keys.len())
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.shards[shard_of(key)]
            .lock()
            .unwrap()
            .keys
            .contains(&compact_key(key))
    }

    /// Inserts `key` unless present. The record is built outside the shard
    /// lock, so it may occasionally be computed and then discarded.
    pub fn insert_with(
        &self,
        key: &CanonicalKey,
        record: impl FnOnce() -> Result<ClassificationRecord>,
    ) -> Result<bool> {
        let c = compact_key(key);
        let shard = &self.shards[shard_of(key)];
        if shard.lock().unwrap().keys.contains(&c) {
            return Ok(false);
        }
        let rec = if self.dir.is_some() {
            Some(record()?)
        } else {
            None
        };
        let mut s = shard.lock().unwrap();
        if !s.keys.insert(c) {
            return Ok(false);
        }
        s.append(key, rec.as_ref())?;
        Ok(true)
    }

    /// Sorted membership encodings; equal sets of keys give equal vectors.
    pub fn key_set(&self) -> Vec<Box<[u8]>> {
        let mut all: Vec<Box<[u8]>> = self
            .shards
            .iter()
            .flat_map(|s| s.lock().unwrap().keys.iter().cloned().collect::<Vec<_>>())
            .collect();
        all.sort();
        all
    }

    /// Stored classes by number of interior points.
    pub fn counts_by_interior(&self) -> [u64; 3] {
        let mut out = [0; 3];
        for st in self.shard_states() {
            for (o, x) in out.iter_mut().zip(st.by_interior) {
                *o += x;
            }
        }
        out
    }

    pub fn shard_states(&self) -> Vec<ShardState> {
        self.shards
            .iter()
            .map(|s| s.lock().unwrap().state)
            .collect()
    }

    /// Flushes the shards and commits their lengths, checksums and the
    /// frontier.
    pub fn checkpoint(&self, mut cp: Checkpoint, frontier: &[CanonicalKey]) -> Result<()> {
        let Some(dir) = &self.dir else {
            return Ok(());
        };
        for s in &self.shards {
            s.lock().unwrap().flush()?;
        }
        let mut buf = Vec::new();
        for k in frontier {
            let m = k.matrix();
            let e = FrontierEntry {
                form: (0..m.rows()).map(|r| m.row(r).to_vec()).collect(),
                invariants: *k.invariants(),
            };
            serde_json::to_writer(&mut buf, &e)?;
            buf.push(b'\n');
        }
        write_atomic(&dir.join("frontier.jsonl"), &buf)?;
        cp.version = FORMAT_VERSION;
        cp.frontier = frontier.len();
        cp.shards = self.shard_states();
        write_atomic(
            &dir.join("checkpoint.json"),
            &serde_json::to_vec_pretty(&cp)?,
        )
    }

    /// Reopens a checkpointed store. Bytes appended after the checkpoint are
    /// discarded; a checksum mismatch in the committed prefix is an error.
    pub fn resume(dir: &Path) -> Result<(Self, Checkpoint, Vec<CanonicalKey>)> {
        let cp = read_checkpoint(dir)?;
        let mut shards = Vec::with_capacity(SHARDS);
        for (i, st) in cp.shards.iter().enumerate() {
            let log_path = shard_path(dir, i, "log");
            let records = read_committed(&log_path, st)?;
            let idx_path = shard_path(dir, i, "idx");
            truncate(&log_path, st.bytes)?;
            truncate(&idx_path, st.records * 16)?;
            let mut keys = HashSet::with_capacity(records.len());
            for r in records {
                keys.insert(compact_key(&r.key()?));
            }
            shards.push(Mutex::new(Shard {
                keys,
                log: Some(open_append(&log_path)?),
                idx: Some(open_append(&idx_path)?),
                state: *st,
            }));
        }
        let fpath = dir.join("frontier.jsonl");
        let text = fs::read_to_string(&fpath).map_err(|e| Error::io(&fpath, e))?;
        let mut frontier = Vec::new();
        for line in text.lines().filter(|l| !l.is_empty()) {
            let e: FrontierEntry = serde_json::from_str(line)?;
            let m = crate::exact::IntMatrix::from_rows(&e.form)?;
            frontier.push(CanonicalKey::from_parts(
                crate::normal_form::encode_matrix(&m),
                e.invariants,
            )?);
        }
        if frontier.len() != cp.frontier {
            return Err(Error::Checkpoint(format!(
                "frontier has {} entries, checkpoint records {}",
                frontier.len(),
                cp.frontier
            )));
        }
        let store = Self {
            dir: Some(dir.to_path_buf()),
            dim: cp.dim,
            shards,
        };
        Ok((store, cp, frontier))
    }
}

pub fn read_checkpoint(dir: &Path) -> Result<Checkpoint> {
    let path = dir.join("checkpoint.json");
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let cp: Checkpoint = serde_json::from_str(&text)?;
    if cp.version != FORMAT_VERSION {
        return Err(Error::Checkpoint(format!(
            "format version {} is not supported (expected {FORMAT_VERSION})",
            cp.version
        )));
    }
    if cp.shards.len() != SHARDS {
        return Err(Error::Checkpoint(format!(
            "{} shard entries, expected {SHARDS}",
            cp.shards.len()
        )));
    }
    Ok(cp)
}

/// Reads the committed prefix of a shard log, verifying length, checksum and
/// record count.
pub fn read_committed(path: &Path, st: &ShardState) -> Result<Vec<ClassificationRecord>> {
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut buf = Vec::with_capacity(st.bytes as usize);
    f.take(st.bytes)
        .read_to_end(&mut buf)
        .map_err(|e| Error::io(path, e))?;
    if buf.len() as u64 != st.bytes {
        return Err(Error::Checkpoint(format!(
            "{} is shorter than its committed length {}",
            path.display(),
            st.bytes
        )));
    }
    if fnv1a_update(FNV_OFFSET, &buf) != st.checksum {
        return Err(Error::Checkpoint(format!(
            "{} fails its checksum",
            path.display()
        )));
    }
    let mut out = Vec::with_capacity(st.records as usize);
    for line in BufReader::new(buf.as_slice()).lines() {
        let line = line.map_err(|e| Error::io(path, e))?;
        out.push(serde_json::from_str(&line)?);
    }
    if out.len() as u64 != st.records {
        return Err(Error::Checkpoint(format!(
            "{} holds {} records, checkpoint records {}",
            path.display(),
            out.len(),
            st.records
        )));
    }
    Ok(out)
}

fn truncate(path: &Path, len: u64) -> Result<()> {
    let f = OpenOptions::new()
        .write(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    f.set_len(len).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::affine_normal_form;
    use crate::polytope::conv;

    fn keys() -> Vec<CanonicalKey> {
        (1..=6)
            .map(|m| affine_normal_form(&conv(&[[-1, -1], [1, 0], [0, m]])).unwrap())
            .collect()
    }

    #[test]
    fn compact_encoding_is_injective_on_samples() {
        let ks = keys();
        let set: HashSet<_> = ks.iter().map(compact_key).collect();
        let distinct: HashSet<_> = ks.iter().map(|k| k.bytes().to_vec()).collect();
        assert_eq!(set.len(), distinct.len());
    }

    #[test]
    fn insert_if_absent() {
        let s = DedupStore::in_memory(2);
        let k = &keys()[0];
        assert!(s.insert_with(k, || unreachable!()).unwrap());
        assert!(!s.insert_with(k, || unreachable!()).unwrap());
        assert!(s.contains(k));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn checkpoint_round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let ks = keys();
        let s = DedupStore::create(dir.path(), 2).unwrap();
        for k in &ks {
            if k.invariants().interior_points >= 1 {
                s.insert_with(k, || ClassificationRecord::new::<2>(k))
                    .unwrap();
            }
        }
        let n = s.len();
        let cp = Checkpoint {
            version: 0,
            dim: 2,
            k: 2,
            wave: 3,
            complete: false,
            frontier: 0,
            seeds: BTreeMap::new(),
            shards: Vec::new(),
        };
        s.checkpoint(cp, &ks[..2]).unwrap();
        // uncommitted tail is rolled back on resume
        let extra = affine_normal_form(&conv(&[[-1, -1], [2, 0], [0, 2]])).unwrap();
        s.insert_with(&extra, || ClassificationRecord::new::<2>(&extra))
            .unwrap();
        drop(s);

        let (r, cp, frontier) = DedupStore::resume(dir.path()).unwrap();
        assert_eq!(r.len(), n);
        assert_eq!(cp.wave, 3);
        assert_eq!(frontier, ks[..2].to_vec());
        drop(r);

        let (i, st) = read_checkpoint(dir.path())
            .unwrap()
            .shards
            .iter()
            .copied()
            .enumerate()
            .find(|(_, st)| st.bytes > 0)
            .unwrap();
        let path = shard_path(dir.path(), i, "log");
        let mut bytes = fs::read(&path).unwrap();
        bytes[(st.bytes / 2) as usize] ^= 1;
        fs::write(&path, bytes).unwrap();
        assert!(matches!(
            DedupStore::resume(dir.path()),
            Err(Error::Checkpoint(_))
        ));
    }

    #[test]
    fn create_refuses_existing_shards() {
        let dir = tempfile::tempdir().unwrap();
        let s = DedupStore::create(dir.path(), 3).unwrap();
        drop(s);
        assert!(DedupStore::create(dir.path(), 3).is_err());
    }
}
