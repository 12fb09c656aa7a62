//! On-disk memo of computed distributions, one JSON file per
//! `(statistic, n, method)`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::stats::StatId;

use super::{Distribution, Method};

/// The serialized form of a [`Distribution`]. Coefficients are decimal
/// strings so they survive any JSON reader.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub stat: String,
    pub n: usize,
    pub method: String,
    pub coeffs: Vec<String>,
}

impl CacheEntry {
    pub fn new(dist: &Distribution, method: Method) -> Self {
        Self {
            stat: dist.stat().to_string(),
            n: dist.n(),
            method: method.name().to_string(),
            coeffs: dist.coeffs().iter().map(BigUint::to_string).collect(),
        }
    }

    pub fn to_distribution(&self) -> Result<Distribution> {
        let stat: StatId = self.stat.parse()?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.parse::<BigUint>().map_err(|e| Error::Cache(format!("bad coefficient {c:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != self.n + 1 {
            return Err(Error::Cache(format!("expected {} coefficients, found {}", self.n + 1, coeffs.len())));
        }
        Ok(Distribution::new(self.n, stat, coeffs))
    }
}

#[derive(Debug, Clone)]
pub struct DistCache {
    dir: PathBuf,
}

impl DistCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, stat: &StatId, n: usize, method: Method) -> PathBuf {
        let key = format!("{stat}\n{n}\n{}", method.name());
        let digest = Sha256::digest(key.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    /// A cached distribution, or `None` if absent. A file that exists but
    /// does not describe the requested key is an error.
    pub fn get(&self, stat: &StatId, n: usize, method: Method) -> Result<Option<Distribution>> {
        let path = self.path_for(stat, n, method);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let entry: CacheEntry = serde_json::from_str(&text)?;
        if entry.stat != stat.to_string() || entry.n != n || entry.method != method.name() {
            return Err(Error::Cache(format!("{} holds a different key", path.display())));
        }
        entry.to_distribution().map(Some)
    }

    /// Writes through a temporary file in the same directory, then renames.
    pub fn put(&self, dist: &Distribution, method: Method) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(dist.stat(), dist.n(), method);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer_pretty(&mut tmp, &CacheEntry::new(dist, method))?;
        tmp.write_all(b"\n")?;
        tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
        Ok(path)
    }

    /// Looks up, or computes and stores.
    pub fn get_or_compute<F>(&self, stat: &StatId, n: usize, method: Method, compute: F) -> Result<Distribution>
    where
        F: FnOnce() -> Result<Distribution>,
    {
        if let Some(d) = self.get(stat, n, method)? {
            return Ok(d);
        }
        let d = compute()?;
        self.put(&d, method)?;
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::des_recurrence;
    use crate::setspec::SetSpec;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DistCache::new(dir.path());
        let d = des_recurrence(&SetSpec::Even, &SetSpec::All, 6);
        assert!(cache.get(d.stat(), 6, Method::Recurrence).unwrap().is_none());
        let path = cache.put(&d, Method::Recurrence).unwrap();
        assert!(path.exists());
        assert_eq!(cache.get(d.stat(), 6, Method::Recurrence).unwrap(), Some(d.clone()));
        assert!(cache.get(d.stat(), 6, Method::Brute).unwrap().is_none());
        let text = fs::read_to_string(path).unwrap();
        let entry: CacheEntry = serde_json::from_str(&text).unwrap();
        assert_eq!(entry.stat, "des:even;all");
        assert_eq!(entry.coeffs.len(), 7);
    }

    #[test]
    fn mismatched_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DistCache::new(dir.path());
        let d = des_recurrence(&SetSpec::Even, &SetSpec::All, 4);
        let path = cache.path_for(d.stat(), 5, Method::Recurrence);
        fs::write(&path, serde_json::to_string(&CacheEntry::new(&d, Method::Recurrence)).unwrap()).unwrap();
        assert!(cache.get(d.stat(), 5, Method::Recurrence).is_err());
    }
}
