//! Append-only result cache for oracle runs.
//!
//! One record per line:
//!
//! ```text
//! pattern_g6 | kind | n | q | value | witness_g6_list | examined | version
//! ```
//!
//! Fields are separated by `" | "` (space, pipe, space); graph6 strings
//! never contain a space. `witness_g6_list` is comma separated and may be
//! empty. Records whose version differs from [`FORMAT_VERSION`] or that do
//! not parse are ignored, so format changes invalidate cleanly. Lookups
//! return the last matching record.

use crate::error::Result;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

pub const FORMAT_VERSION: &str = "1";
pub const ENV_VAR: &str = "SUPERSAT_CACHE_FILE";
pub const DEFAULT_FILE: &str = ".supersat_oracle_cache";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheRecord {
    pub pattern_g6: String,
    pub kind: String,
    pub n: usize,
    pub q: usize,
    pub value: u64,
    pub witnesses_g6: Vec<String>,
    pub examined: u64,
}

pub struct Cache {
    path: PathBuf,
    write_lock: Mutex<()>,
}

impl Cache {
    pub fn new(path: impl AsRef<Path>) -> Cache {
        Cache {
            path: path.as_ref().to_path_buf(),
            write_lock: Mutex::new(()),
        }
    }

    /// Resolves the cache location: explicit path, else the environment
    /// variable, else the default file in the working directory.
    pub fn resolve(explicit: Option<&str>) -> Cache {
        let path = explicit
            .map(PathBuf::from)
            .or_else(|| std::env::var(ENV_VAR).ok().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_FILE));
        Cache::new(path)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn lookup(&self, pattern_g6: &str, kind: &str, n: usize, q: usize) -> Option<CacheRecord> {
        let text = std::fs::read_to_string(&self.path).ok()?;
        let mut hit = None;
        for line in text.lines() {
            if let Some(rec) = parse_line(line) {
                if rec.pattern_g6 == pattern_g6 && rec.kind == kind && rec.n == n && rec.q == q {
                    hit = Some(rec);
                }
            }
        }
        hit
    }

    /// Appends one record with a single write call.
    pub fn append(&self, rec: &CacheRecord) -> Result<()> {
        let _guard = self.write_lock.lock().unwrap();
        let line = format!(
            "{} | {} | {} | {} | {} | {} | {} | {}\n",
            rec.pattern_g6,
            rec.kind,
            rec.n,
            rec.q,
            rec.value,
            rec.witnesses_g6.join(","),
            rec.examined,
            FORMAT_VERSION
        );
        let mut file = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        file.write_all(line.as_bytes())?;
        Ok(())
    }
}

fn parse_line(line: &str) -> Option<CacheRecord> {
    let fields: Vec<&str> = line.trim_end().split(" | ").collect();
    if fields.len() != 8 || fields[7] != FORMAT_VERSION {
        return None;
    }
    Some(CacheRecord {
        pattern_g6: fields[0].to_string(),
        kind: fields[1].to_string(),
        n: fields[2].parse().ok()?,
        q: fields[3].parse().ok()?,
        value: fields[4].parse().ok()?,
        witnesses_g6: if fields[5].is_empty() {
            Vec::new()
        } else {
            fields[5].split(',').map(str::to_string).collect()
        },
        examined: fields[6].parse().ok()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_versioning() {
        let dir = std::env::temp_dir().join(format!("supersat-cache-test-{}", std::process::id()));
        let _ = std::fs::remove_file(&dir);
        let cache = Cache::new(&dir);
        let rec = CacheRecord {
            pattern_g6: "Bw".into(),
            kind: "h".into(),
            n: 6,
            q: 1,
            value: 3,
            witnesses_g6: vec!["E?~o".into(), "E@~o".into()],
            examined: 3003,
        };
        cache.append(&rec).unwrap();
        assert_eq!(cache.lookup("Bw", "h", 6, 1), Some(rec.clone()));
        assert_eq!(cache.lookup("Bw", "h", 6, 2), None);
        // a newer record for the same key wins
        let rec2 = CacheRecord {
            witnesses_g6: vec![],
            ..rec.clone()
        };
        cache.append(&rec2).unwrap();
        assert_eq!(cache.lookup("Bw", "h", 6, 1), Some(rec2));
        // stale version lines are skipped
        std::fs::write(&dir, "Bw | h | 6 | 1 | 99 |  | 1 | 0\n").unwrap();
        assert_eq!(cache.lookup("Bw", "h", 6, 1), None);
        let _ = std::fs::remove_file(&dir);
    }
}
