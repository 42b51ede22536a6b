//! Per-dimension JSON result cache.
//!
//! One file `corners-k<k>.json` per dimension in the cache directory. Writes
//! take a lock file, re-read the current contents, merge, write a temporary
//! file and rename it over the old one. A file that fails to parse or
//! validate is never overwritten.

use std::fs::{self, OpenOptions};
use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::thread;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use corners_core::census::{CensusMethod, CensusRecord};
use corners_core::extremal::{ExtremalRecord, ExtremalTable, Status};
use corners_core::{GridParams, GridSet, Point};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA: &str = "corners-cache/1";
pub const ENV_DIR: &str = "CORNERS_CACHE_DIR";

const LOCK_ATTEMPTS: u32 = 400;
const LOCK_WAIT: Duration = Duration::from_millis(25);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub tool_version: String,
    pub created_at: u64,
    pub updated_at: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtremalEntry {
    pub n: usize,
    pub status: String,
    pub lower: usize,
    pub upper: usize,
    pub witness: Option<Vec<Vec<usize>>>,
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusEntry {
    pub n: usize,
    pub count: String,
    pub complete: bool,
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheFile {
    pub schema: String,
    pub k: usize,
    pub provenance: Provenance,
    pub extremal: Vec<ExtremalEntry>,
    pub census: Vec<CensusEntry>,
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

impl CacheFile {
    pub fn empty(k: usize) -> Self {
        let t = now();
        CacheFile {
            schema: SCHEMA.into(),
            k,
            provenance: Provenance { tool_version: env!("CARGO_PKG_VERSION").into(), created_at: t, updated_at: t },
            extremal: Vec::new(),
            census: Vec::new(),
        }
    }

    /// Canonical encoding: fixed field order, pretty-printed, trailing newline.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut s = serde_json::to_string_pretty(self).expect("cache serialises");
        s.push('\n');
        s.into_bytes()
    }

    /// Parses and validates; the error string says what is wrong.
    pub fn from_bytes(bytes: &[u8], k: usize) -> Result<Self, String> {
        let file: CacheFile = serde_json::from_slice(bytes).map_err(|e| e.to_string())?;
        if file.schema != SCHEMA {
            return Err(format!("unknown schema {:?}", file.schema));
        }
        if file.k != k {
            return Err(format!("file holds k = {}, expected {k}", file.k));
        }
        file.table().map_err(|e| e.to_string())?;
        file.census_records().map_err(|e| e.to_string())?;
        if file.census.windows(2).any(|w| w[0].n >= w[1].n) {
            return Err("census entries not sorted by n or duplicated".into());
        }
        Ok(file)
    }

    pub fn table(&self) -> Result<ExtremalTable, CliError> {
        let mut t = ExtremalTable::new();
        let mut last = 0;
        for e in &self.extremal {
            if e.n <= last {
                return Err(CliError::Parse("extremal entries not sorted by n or duplicated".into()));
            }
            last = e.n;
            t.insert(entry_to_record(self.k, e)?)?;
        }
        Ok(t)
    }

    pub fn census_records(&self) -> Result<Vec<CensusRecord>, CliError> {
        self.census.iter().map(|e| census_from_entry(self.k, e)).collect()
    }

    pub fn census_for(&self, n: usize) -> Result<Option<CensusRecord>, CliError> {
        self.census.iter().find(|e| e.n == n).map(|e| census_from_entry(self.k, e)).transpose()
    }

    /// Merges an extremal record; exact values are never replaced by bounds.
    pub fn merge_extremal(&mut self, rec: &ExtremalRecord) -> Result<(), CliError> {
        let mut table = self.table()?;
        table.insert(rec.clone())?;
        self.extremal = table.records().filter(|r| r.k == self.k).map(record_to_entry).collect();
        Ok(())
    }

    /// Merges a census record; complete counts are never replaced by partial ones.
    pub fn merge_census(&mut self, rec: &CensusRecord) -> Result<(), CliError> {
        let entry = census_to_entry(rec);
        match self.census.iter_mut().find(|e| e.n == rec.n) {
            None => {
                self.census.push(entry);
                self.census.sort_by_key(|e| e.n);
            }
            Some(old) => {
                let old_rec = census_from_entry(self.k, old)?;
                match (old_rec.complete, rec.complete) {
                    (true, true) if old_rec.count != rec.count => {
                        return Err(corners_core::Error::VerificationFailed {
                            property: format!(
                                "conflicting census counts {} and {} for n = {}",
                                old_rec.count, rec.count, rec.n
                            ),
                        }
                        .into());
                    }
                    (true, _) => {}
                    (false, true) => *old = entry,
                    (false, false) if rec.count > old_rec.count => *old = entry,
                    (false, false) => {}
                }
            }
        }
        Ok(())
    }
}

fn record_to_entry(r: &ExtremalRecord) -> ExtremalEntry {
    ExtremalEntry {
        n: r.n,
        status: match r.status {
            Status::Exact => "exact",
            Status::Bounded => "bounded",
        }
        .into(),
        lower: r.lower,
        upper: r.upper,
        witness: r.witness.as_ref().map(|w| w.points().into_iter().map(|p| p.coords).collect()),
        method: r.method.clone(),
    }
}

fn entry_to_record(k: usize, e: &ExtremalEntry) -> Result<ExtremalRecord, CliError> {
    let status = match e.status.as_str() {
        "exact" => Status::Exact,
        "bounded" => Status::Bounded,
        s => return Err(CliError::Parse(format!("unknown status {s:?}"))),
    };
    let witness = match &e.witness {
        None => None,
        Some(points) => {
            let params = GridParams::new(e.n, k)?;
            let pts: Vec<Point> = points.iter().cloned().map(Point::new).collect();
            Some(GridSet::from_points(params, &pts)?)
        }
    };
    let rec = ExtremalRecord { k, n: e.n, status, lower: e.lower, upper: e.upper, witness, method: e.method.clone() };
    rec.validate()?;
    Ok(rec)
}

fn census_to_entry(r: &CensusRecord) -> CensusEntry {
    CensusEntry { n: r.n, count: r.count.to_string(), complete: r.complete, method: r.method.as_str().into() }
}

fn census_from_entry(k: usize, e: &CensusEntry) -> Result<CensusRecord, CliError> {
    let count: BigUint = e.count.parse().map_err(|_| CliError::Parse(format!("bad count {:?}", e.count)))?;
    let method = match e.method.as_str() {
        "oracle" => CensusMethod::Oracle,
        "pruned" => CensusMethod::Pruned,
        m => return Err(CliError::Parse(format!("unknown census method {m:?}"))),
    };
    Ok(CensusRecord { k, n: e.n, count, complete: e.complete, method })
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

struct LockGuard(PathBuf);

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn path(&self, k: usize) -> PathBuf {
        self.dir.join(format!("corners-k{k}.json"))
    }

    /// Reads the file for `k`; a missing file is an empty cache.
    pub fn load(&self, k: usize) -> Result<CacheFile, CliError> {
        let path = self.path(k);
        match fs::read(&path) {
            Ok(bytes) => CacheFile::from_bytes(&bytes, k)
                .map_err(|reason| CliError::CacheCorrupt { path: path.display().to_string(), reason }),
            Err(e) if e.kind() == ErrorKind::NotFound => Ok(CacheFile::empty(k)),
            Err(e) => Err(e.into()),
        }
    }

    /// Applies `f` to the current contents under the lock and replaces the file atomically.
    pub fn update(&self, k: usize, f: impl FnOnce(&mut CacheFile) -> Result<(), CliError>) -> Result<CacheFile, CliError> {
        fs::create_dir_all(&self.dir)?;
        let _lock = self.lock(k)?;
        let mut file = self.load(k)?;
        let before = file.clone();
        f(&mut file)?;
        if file != before {
            file.provenance.updated_at = now();
            file.provenance.tool_version = env!("CARGO_PKG_VERSION").into();
            let path = self.path(k);
            let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
            {
                let mut out = fs::File::create(&tmp)?;
                out.write_all(&file.to_bytes())?;
                out.sync_all()?;
            }
            fs::rename(&tmp, &path)?;
        }
        Ok(file)
    }

    fn lock(&self, k: usize) -> Result<LockGuard, CliError> {
        let path = self.dir.join(format!("corners-k{k}.json.lock"));
        for _ in 0..LOCK_ATTEMPTS {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(_) => return Ok(LockGuard(path)),
                Err(e) if e.kind() == ErrorKind::AlreadyExists => thread::sleep(LOCK_WAIT),
                Err(e) => return Err(e.into()),
            }
        }
        Err(CliError::Io(std::io::Error::new(
            ErrorKind::WouldBlock,
            format!("cache lock {} held too long", path.display()),
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use corners_core::census::count_corner_free;
    use corners_core::extremal::exact_c;
    use corners_core::Limits;

    fn g(n: usize, k: usize) -> GridParams {
        GridParams::new(n, k).unwrap()
    }

    #[test]
    fn round_trip_is_byte_stable() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        cache
            .update(2, |f| {
                f.merge_extremal(&exact_c(g(3, 2), Limits::default()).unwrap())?;
                f.merge_extremal(&exact_c(g(2, 2), Limits::default()).unwrap())?;
                f.merge_census(&count_corner_free(g(2, 2), Limits::default()).unwrap())
            })
            .unwrap();
        let bytes = fs::read(cache.path(2)).unwrap();
        let loaded = cache.load(2).unwrap();
        assert_eq!(loaded.to_bytes(), bytes);
        assert_eq!(loaded.table().unwrap().exact_value(2, 3), Some(7));
        assert_eq!(loaded.extremal[0].n, 2);
        assert_eq!(loaded.census_for(2).unwrap().unwrap().count, 14u32.into());
    }

    #[test]
    fn bounded_never_replaces_exact() {
        let mut f = CacheFile::empty(2);
        f.merge_extremal(&exact_c(g(3, 2), Limits::default()).unwrap()).unwrap();
        f.merge_extremal(&exact_c(g(3, 2), Limits::with_nodes(1)).unwrap()).unwrap();
        assert_eq!(f.extremal[0].status, "exact");
        f.merge_census(&count_corner_free(g(3, 2), Limits::default()).unwrap()).unwrap();
        f.merge_census(&count_corner_free(g(3, 2), Limits::with_nodes(1)).unwrap()).unwrap();
        assert!(f.census[0].complete);
    }

    #[test]
    fn corrupt_file_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        fs::write(cache.path(2), b"{ not json").unwrap();
        assert!(matches!(cache.load(2), Err(CliError::CacheCorrupt { .. })));
        assert!(cache.update(2, |_| Ok(())).is_err());
        assert_eq!(fs::read(cache.path(2)).unwrap(), b"{ not json");

        let mut f = CacheFile::empty(2);
        f.merge_extremal(&exact_c(g(3, 2), Limits::default()).unwrap()).unwrap();
        f.extremal[0].lower = 8;
        f.extremal[0].upper = 8;
        fs::write(cache.path(2), f.to_bytes()).unwrap();
        assert!(matches!(cache.load(2), Err(CliError::CacheCorrupt { .. })));
    }

    #[test]
    fn wrong_dimension_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        fs::write(cache.path(3), CacheFile::empty(2).to_bytes()).unwrap();
        assert!(cache.load(3).is_err());
    }
}
