//! Persistent JSON cache of group tables and Kazhdan–Lusztig tables.
//!
//! One file per Cartan type, `<dir>/<type>.json`. Anything that fails to
//! parse or validate is discarded with a warning and rebuilt.

use std::env;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};
use crate::kl::{KlEntry, KlTable};
use crate::rootsys::CartanType;
use crate::verify::Context;
use crate::weyl::WeylGroup;

pub const SCHEMA_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "CASSELMAN_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".casselman-cache";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionEntry {
    pub root: Vec<i32>,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub cartan_type: CartanType,
    pub checksum: String,
    pub elements: Vec<String>,
    pub lengths: Vec<usize>,
    /// Row `i` of the Bruhat matrix as hex: bit `j` set iff `elements[i] ≤ elements[j]`.
    pub bruhat: Vec<String>,
    pub reflections: Vec<ReflectionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kl: Option<Vec<KlEntry>>,
}

impl CacheEntry {
    pub fn from_group(g: &WeylGroup, kl: Option<&KlTable>) -> Self {
        let rs = g.roots();
        CacheEntry {
            schema_version: SCHEMA_VERSION,
            cartan_type: g.cartan(),
            checksum: g.checksum(),
            elements: g.elements().map(|w| g.format(w)).collect(),
            lengths: g.elements().map(|w| g.length(w)).collect(),
            bruhat: g.bruhat_matrix().to_hex_rows(),
            reflections: rs
                .positive()
                .map(|a| ReflectionEntry {
                    root: rs.coords(a).to_vec(),
                    element: g.format(g.reflection(a).expect("positive root")),
                })
                .collect(),
            kl: kl.map(|t| t.entries(g)),
        }
    }

    /// Rebuilds the group around the cached Bruhat matrix, checking every
    /// stored table against a fresh enumeration.
    pub fn into_context(self) -> Result<Context> {
        let stale = |what: &str| Error::Verification(format!("cache entry for {}: {what}", self.cartan_type));
        if self.schema_version != SCHEMA_VERSION {
            return Err(stale("schema version mismatch"));
        }
        let n = self.cartan_type.group_order();
        let bruhat = BitMatrix::from_hex_rows(n, &self.bruhat).ok_or_else(|| stale("malformed Bruhat rows"))?;
        let g = WeylGroup::with_bruhat(self.cartan_type, bruhat)?;
        if g.checksum() != self.checksum {
            return Err(stale("checksum mismatch"));
        }
        let words: Vec<String> = g.elements().map(|w| g.format(w)).collect();
        let lengths: Vec<usize> = g.elements().map(|w| g.length(w)).collect();
        if words != self.elements || lengths != self.lengths {
            return Err(stale("element tables differ"));
        }
        let fresh = CacheEntry::from_group(&g, None);
        if fresh.reflections != self.reflections {
            return Err(stale("reflection map differs"));
        }
        let kl = match &self.kl {
            Some(entries) => Some(KlTable::from_entries(&g, entries)?),
            None => None,
        };
        Ok(Context::from_parts(g, kl))
    }
}

/// `flag`, else `$CASSELMAN_CACHE_DIR`, else `./.casselman-cache`.
pub fn resolve_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    match env::var_os(CACHE_DIR_ENV) {
        Some(p) if !p.is_empty() => PathBuf::from(p),
        _ => PathBuf::from(DEFAULT_CACHE_DIR),
    }
}

pub fn cache_path(dir: &Path, cartan: CartanType) -> PathBuf {
    dir.join(format!("{cartan}.json"))
}

/// Writes the entry for `ctx` atomically (temporary file, then rename).
pub fn cache_store(dir: &Path, ctx: &Context) -> Result<()> {
    fs::create_dir_all(dir)?;
    let entry = CacheEntry::from_group(ctx.group(), ctx.kl_if_computed());
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer(&mut tmp, &entry)?;
    tmp.flush()?;
    tmp.persist(cache_path(dir, ctx.group().cartan())).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// The cached context, or `None` when absent. Unreadable or stale entries are
/// reported with a warning and treated as absent.
pub fn cache_load(dir: &Path, cartan: CartanType) -> Option<Context> {
    let path = cache_path(dir, cartan);
    let text = fs::read_to_string(&path).ok()?;
    let entry: CacheEntry = match serde_json::from_str(&text) {
        Ok(e) => e,
        Err(e) => {
            log::warn!("ignoring corrupt cache file {}: {e}", path.display());
            return None;
        }
    };
    if entry.cartan_type != cartan {
        log::warn!("ignoring cache file {}: it holds {}", path.display(), entry.cartan_type);
        return None;
    }
    match entry.into_context() {
        Ok(ctx) => Some(ctx),
        Err(e) => {
            log::warn!("rebuilding {}: {e}", path.display());
            None
        }
    }
}

/// Loads from the cache or builds; with `need_kl` the KL table is computed
/// if missing. The cache file is rewritten whenever something was computed.
pub fn load_or_build(dir: &Path, cartan: CartanType, need_kl: bool) -> Result<Context> {
    let (ctx, mut dirty) = match cache_load(dir, cartan) {
        Some(ctx) => (ctx, false),
        None => (Context::new(cartan)?, true),
    };
    if need_kl && ctx.kl_if_computed().is_none() {
        ctx.kl();
        dirty = true;
    }
    if dirty {
        if let Err(e) = cache_store(dir, &ctx) {
            log::warn!("could not write cache in {}: {e}", dir.display());
        }
    }
    Ok(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_guards() {
        let dir = tempfile::tempdir().unwrap();
        let a2: CartanType = "A2".parse().unwrap();
        let ctx = load_or_build(dir.path(), a2, true).unwrap();
        let warm = cache_load(dir.path(), a2).unwrap();
        assert_eq!(warm.group().bruhat_matrix(), ctx.group().bruhat_matrix());
        assert!(warm.kl_if_computed().is_some());

        let path = cache_path(dir.path(), a2);
        let mut entry: CacheEntry = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        entry.checksum = "0".repeat(64);
        fs::write(&path, serde_json::to_string(&entry).unwrap()).unwrap();
        assert!(cache_load(dir.path(), a2).is_none());

        fs::write(&path, "{ not json").unwrap();
        assert!(cache_load(dir.path(), a2).is_none());
        let rebuilt = load_or_build(dir.path(), a2, false).unwrap();
        assert_eq!(rebuilt.group().order(), 6);
        assert!(cache_load(dir.path(), a2).is_some());
    }
}
