//! Append-only CSV cache of exact volumes, `d,n,volume`.
//!
//! Rows are trusted only after a sample of them has been recomputed; a
//! single mismatch disables the whole file for the run.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use permcode::permanent::ball_volume;
use serde::{Deserialize, Serialize};

/// One row in every `SPOT_CHECK_STRIDE` (and always the first) is recomputed.
pub const SPOT_CHECK_STRIDE: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRow {
    pub d: usize,
    pub n: usize,
    #[serde(with = "permcode::serde_decimal")]
    pub volume: BigUint,
}

#[derive(Debug)]
pub struct VolumeCache {
    path: PathBuf,
    rows: BTreeMap<(usize, usize), BigUint>,
    trusted: bool,
}

#[derive(Debug)]
pub enum CacheError {
    Io(std::io::Error),
    Csv(csv::Error),
}

impl std::fmt::Display for CacheError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "cache I/O: {e}"),
            CacheError::Csv(e) => write!(f, "cache format: {e}"),
        }
    }
}

impl From<std::io::Error> for CacheError {
    fn from(e: std::io::Error) -> Self {
        CacheError::Io(e)
    }
}

impl From<csv::Error> for CacheError {
    fn from(e: csv::Error) -> Self {
        CacheError::Csv(e)
    }
}

impl VolumeCache {
    /// Loads the file if it exists and spot-checks it. A missing file is an
    /// empty, trusted cache.
    pub fn open(path: &Path) -> Result<Self, CacheError> {
        let mut rows = BTreeMap::new();
        let mut ordered = Vec::new();
        if path.exists() {
            let mut reader = csv::Reader::from_path(path)?;
            for row in reader.deserialize::<CacheRow>() {
                let row = row?;
                ordered.push(row.clone());
                rows.insert((row.d, row.n), row.volume);
            }
        }
        let trusted = ordered
            .iter()
            .step_by(SPOT_CHECK_STRIDE)
            .all(|row| ball_volume(row.d, row.n).is_ok_and(|v| v == row.volume));
        // duplicated keys with different values are never trusted either
        let consistent = ordered
            .iter()
            .all(|row| rows[&(row.d, row.n)] == row.volume);
        Ok(VolumeCache {
            path: path.to_path_buf(),
            rows,
            trusted: trusted && consistent,
        })
    }

    pub fn is_trusted(&self) -> bool {
        self.trusted
    }

    pub fn get(&self, d: usize, n: usize) -> Option<&BigUint> {
        if self.trusted {
            self.rows.get(&(d, n))
        } else {
            None
        }
    }

    /// Appends a freshly computed value unless the key is already present.
    pub fn record(&mut self, d: usize, n: usize, volume: &BigUint) -> Result<(), CacheError> {
        if !self.trusted || self.rows.contains_key(&(d, n)) {
            return Ok(());
        }
        let needs_header = !self.path.exists() || std::fs::metadata(&self.path)?.len() == 0;
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        let mut writer = csv::WriterBuilder::new()
            .has_headers(needs_header)
            .from_writer(file);
        writer.serialize(CacheRow {
            d,
            n,
            volume: volume.clone(),
        })?;
        writer.flush()?;
        self.rows.insert((d, n), volume.clone());
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_reuse() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("volumes.csv");
        let mut cache = VolumeCache::open(&path).unwrap();
        assert!(cache.is_trusted());
        cache.record(1, 5, &BigUint::from(8u32)).unwrap();
        cache.record(2, 4, &BigUint::from(14u32)).unwrap();
        cache.record(2, 4, &BigUint::from(14u32)).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "d,n,volume\n1,5,8\n2,4,14\n");
        let reopened = VolumeCache::open(&path).unwrap();
        assert_eq!(reopened.get(2, 4), Some(&BigUint::from(14u32)));
    }

    #[test]
    fn corrupted_first_row_disables_cache() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("volumes.csv");
        std::fs::write(&path, "d,n,volume\n1,5,9\n").unwrap();
        let cache = VolumeCache::open(&path).unwrap();
        assert!(!cache.is_trusted());
        assert_eq!(cache.get(1, 5), None);
    }

    #[test]
    fn conflicting_duplicates_disable_cache() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("volumes.csv");
        std::fs::write(&path, "d,n,volume\n1,5,8\n1,5,9\n").unwrap();
        assert!(!VolumeCache::open(&path).unwrap().is_trusted());
    }
}
