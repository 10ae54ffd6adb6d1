//! Append-only CSV cache of per-n results.
//!
//! Header `n,g,nullity,t_min,computed_at`; an empty `t_min` means it was
//! not computed; timestamps are RFC 3339. When a file holds several rows for
//! the same n, the last one wins.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const HEADER: &str = "n,g,nullity,t_min,computed_at";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub n: u64,
    pub g: u64,
    pub nullity: usize,
    pub t_min: Option<usize>,
    pub computed_at: String,
}

impl CacheRecord {
    pub fn now(n: u64, g: u64, nullity: usize, t_min: Option<usize>) -> Self {
        Self {
            n,
            g,
            nullity,
            t_min,
            computed_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    fn validate(&self) -> Result<(), String> {
        if self.g < self.n {
            return Err(format!("g = {} is below n = {}", self.g, self.n));
        }
        if self.t_min == Some(2) {
            return Err("t_min = 2 is impossible".into());
        }
        chrono::DateTime::parse_from_rfc3339(&self.computed_at)
            .map_err(|e| format!("bad timestamp {:?}: {e}", self.computed_at))?;
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cache {path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("cache {path}, record {record}: {reason}")]
    Invalid {
        path: PathBuf,
        record: usize,
        reason: String,
    },
}

/// Read every record in file order. A missing file is an empty cache.
pub fn load_records(path: &Path) -> Result<Vec<CacheRecord>, CacheError> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let mut reader = csv::Reader::from_path(path).map_err(|source| CacheError::Csv {
        path: path.to_owned(),
        source,
    })?;
    let mut out = Vec::new();
    for (i, row) in reader.deserialize::<CacheRecord>().enumerate() {
        let rec = row.map_err(|source| CacheError::Csv {
            path: path.to_owned(),
            source,
        })?;
        rec.validate().map_err(|reason| CacheError::Invalid {
            path: path.to_owned(),
            record: i + 1,
            reason,
        })?;
        out.push(rec);
    }
    Ok(out)
}

/// Records keyed by n, later rows replacing earlier ones.
pub fn load(path: &Path) -> Result<BTreeMap<u64, CacheRecord>, CacheError> {
    Ok(load_records(path)?
        .into_iter()
        .map(|r| (r.n, r))
        .collect())
}

/// Append records, writing the header first if the file is new or empty.
pub fn store(path: &Path, records: &[CacheRecord]) -> Result<(), CacheError> {
    let io = |source| CacheError::Io {
        path: path.to_owned(),
        source,
    };
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(io)?;
    let fresh = file.metadata().map_err(io)?.len() == 0;
    let mut buf = Vec::new();
    {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(&mut buf);
        for r in records {
            w.serialize(r).map_err(|source| CacheError::Csv {
                path: path.to_owned(),
                source,
            })?;
        }
        w.flush().map_err(io)?;
    }
    if fresh {
        writeln!(file, "{HEADER}").map_err(io)?;
    }
    file.write_all(&buf).map_err(io)
}
