//! On-disk cache of exhaustive invariant results, keyed by Cayley table.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use davenport_core::search::{Invariant, InvariantResult};
use davenport_core::{FiniteGroup, Sequence};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Bumped whenever search semantics or the file layout change.
pub const CACHE_VERSION: &str = concat!("davenport-", env!("CARGO_PKG_VERSION"), "/1");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedResult {
    pub invariant: String,
    pub value: usize,
    pub upper: Option<usize>,
    /// Multiplicity of each element index.
    pub witness: Vec<u32>,
    pub exhaustive: bool,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: String,
    pub order: usize,
    /// Hex-encoded multiplication table, compared in full on every read.
    pub table: String,
    pub entries: BTreeMap<String, CachedResult>,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

/// Hex SHA-256 of the order followed by the multiplication table.
pub fn fingerprint(g: &FiniteGroup) -> String {
    let mut h = Sha256::new();
    h.update((g.order() as u64).to_le_bytes());
    h.update(g.table());
    hex::encode(h.finalize())
}

fn entry_key(inv: Invariant, use_automorphisms: bool) -> String {
    format!("{}/{}", inv.symbol(), if use_automorphisms { "aut" } else { "plain" })
}

impl From<&InvariantResult> for CachedResult {
    fn from(r: &InvariantResult) -> Self {
        CachedResult {
            invariant: r.invariant.symbol().to_string(),
            value: r.value,
            upper: r.upper,
            witness: r.witness.multiplicities().to_vec(),
            exhaustive: r.exhaustive,
            nodes: r.nodes,
        }
    }
}

impl CachedResult {
    fn to_result(&self, g: &FiniteGroup) -> Option<InvariantResult> {
        if self.witness.len() != g.order() {
            return None;
        }
        Some(InvariantResult {
            invariant: self.invariant.parse().ok()?,
            value: self.value,
            upper: self.upper,
            witness: Sequence::from_mult(self.witness.clone()),
            exhaustive: self.exhaustive,
            nodes: self.nodes,
        })
    }
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self, CliError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, g: &FiniteGroup) -> PathBuf {
        self.dir.join(format!("{}.json", fingerprint(g)))
    }

    /// The cache file for `g`, if present, current and really for `g`.
    fn load(&self, g: &FiniteGroup) -> Option<CacheFile> {
        let text = fs::read_to_string(self.path_for(g)).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        let same = file.version == CACHE_VERSION && file.order == g.order() && file.table == hex::encode(g.table());
        same.then_some(file)
    }

    pub fn get(&self, g: &FiniteGroup, inv: Invariant, use_automorphisms: bool) -> Option<InvariantResult> {
        let file = self.load(g)?;
        let r = file.entries.get(&entry_key(inv, use_automorphisms))?.to_result(g)?;
        (r.invariant == inv && r.exhaustive).then_some(r)
    }

    /// Store an exhaustive result; other results are ignored.
    pub fn put(&self, g: &FiniteGroup, r: &InvariantResult, use_automorphisms: bool) -> Result<(), CliError> {
        if !r.exhaustive {
            return Ok(());
        }
        let mut file = self.load(g).unwrap_or_else(|| CacheFile {
            version: CACHE_VERSION.to_string(),
            order: g.order(),
            table: hex::encode(g.table()),
            entries: BTreeMap::new(),
        });
        file.entries.insert(entry_key(r.invariant, use_automorphisms), r.into());
        let path = self.path_for(g);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        serde_json::to_writer_pretty(&mut tmp, &file)?;
        tmp.write_all(b"\n").map_err(|e| CliError::io(tmp.path(), e))?;
        tmp.persist(&path).map_err(|e| CliError::io(&path, e.error))?;
        Ok(())
    }
}
