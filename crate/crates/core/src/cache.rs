//! Append-only JSON-lines store for computed constant results.
//!
//! The cache is one directory holding `constants.jsonl`.  Each line is a
//! self-describing entry: the engine version plus a full constant result,
//! keyed by (kind, n, A, B).  Appending a fresh computation supersedes
//! older lines without rewriting the file; lookups scan the file and the
//! last matching line wins.  Entries from other engine versions are kept
//! on disk but ignored by lookups.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::constants::{ConstantKind, ConstantResult};
use crate::Error;

/// Environment variable overriding the cache directory.
pub const CACHE_ENV_VAR: &str = "ZEROSUM_CACHE_DIR";

const CACHE_FILE: &str = "constants.jsonl";

/// One stored line: the engine version that produced the result, then the
/// result fields inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub engine: String,
    #[serde(flatten)]
    pub result: ConstantResult,
}

/// Resolves the cache directory: an explicit override wins, then the
/// environment variable, then the platform data directory
/// (`$XDG_DATA_HOME` or `~/.local/share`) plus `zerosum`.
pub fn resolve_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(dir) = explicit {
        return dir.to_path_buf();
    }
    if let Some(dir) = std::env::var_os(CACHE_ENV_VAR) {
        if !dir.is_empty() {
            return PathBuf::from(dir);
        }
    }
    let data_home = std::env::var_os("XDG_DATA_HOME")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or_else(|| {
            std::env::var_os("HOME")
                .filter(|v| !v.is_empty())
                .map(|home| PathBuf::from(home).join(".local").join("share"))
        })
        .unwrap_or_else(|| PathBuf::from("."));
    data_home.join("zerosum")
}

#[derive(Debug, Clone)]
pub struct ConstantCache {
    dir: PathBuf,
    file: PathBuf,
}

impl ConstantCache {
    /// Opens a cache rooted at `dir`.  Nothing is created until the first
    /// store.
    pub fn at_dir(dir: impl Into<PathBuf>) -> ConstantCache {
        let dir = dir.into();
        let file = dir.join(CACHE_FILE);
        ConstantCache { dir, file }
    }

    pub fn path(&self) -> &Path {
        &self.file
    }

    /// All entries in file order, including ones written by other engine
    /// versions.  A malformed line is an error, not a silent skip: the file
    /// is meant to be hand-inspectable, and hand edits that break it should
    /// surface immediately.
    pub fn entries(&self) -> crate::Result<Vec<CacheEntry>> {
        let text = match fs::read_to_string(&self.file) {
            Ok(text) => text,
            Err(err) if err.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(err) => return Err(self.io_error(err)),
        };
        let mut entries = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let entry: CacheEntry = serde_json::from_str(line).map_err(|err| Error::CacheIo {
                path: self.file.display().to_string(),
                reason: format!("malformed entry on line {}: {err}", idx + 1),
            })?;
            entries.push(entry);
        }
        Ok(entries)
    }

    /// The newest entry for (kind, n, a, b) written by the current engine
    /// version.  `a` and `b` are canonical weight-set strings.
    pub fn lookup(
        &self,
        kind: ConstantKind,
        n: u32,
        a: &str,
        b: &str,
    ) -> crate::Result<Option<CacheEntry>> {
        let entries = self.entries()?;
        Ok(entries
            .into_iter()
            .rev()
            .find(|entry| {
                entry.engine == crate::ENGINE_VERSION
                    && entry.result.kind == kind
                    && entry.result.n == n
                    && entry.result.a == a
                    && entry.result.b == b
            }))
    }

    /// Appends one result line, creating the directory and file on first
    /// use.
    pub fn store(&self, result: &ConstantResult) -> crate::Result<()> {
        fs::create_dir_all(&self.dir).map_err(|err| Error::CacheIo {
            path: self.dir.display().to_string(),
            reason: format!("creating cache directory: {err}"),
        })?;
        let entry = CacheEntry {
            engine: crate::ENGINE_VERSION.to_string(),
            result: result.clone(),
        };
        let mut line = serde_json::to_string(&entry).map_err(|err| Error::Internal(format!(
            "serializing cache entry: {err}"
        )))?;
        line.push('\n');
        let mut file = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.file)
            .map_err(|err| self.io_error(err))?;
        file.write_all(line.as_bytes())
            .map_err(|err| self.io_error(err))
    }

    /// Removes the cache file, returning how many entries it held.
    pub fn clear(&self) -> crate::Result<usize> {
        let count = self.entries()?.len();
        match fs::remove_file(&self.file) {
            Ok(()) => Ok(count),
            Err(err) if err.kind() == std::io::ErrorKind::NotFound => Ok(0),
            Err(err) => Err(self.io_error(err)),
        }
    }

    fn io_error(&self, err: std::io::Error) -> Error {
        Error::CacheIo {
            path: self.file.display().to_string(),
            reason: err.to_string(),
        }
    }
}
