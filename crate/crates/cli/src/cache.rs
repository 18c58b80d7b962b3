//! Character tables on disk, keyed by a SHA-256 of the multiplication table.
//!
//! Each table is stored as `<key>.json` next to a `manifest.json`. A stored
//! table is only used after it passes the orthogonality check; anything else
//! is recomputed and overwritten.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use finite_group::FiniteGroup;
use projective_characters::{character_table, CharacterTable, TableCache, TableData, TableError};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize, Deserialize)]
struct StoredTable {
    order: usize,
    exponent: usize,
    values: Vec<Vec<Vec<(usize, i64)>>>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct Manifest {
    tables: BTreeMap<String, ManifestEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ManifestEntry {
    order: usize,
    classes: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
    /// Stored tables that failed to parse or to verify.
    pub rejected: usize,
}

#[derive(Debug, Default)]
pub struct DiskCache {
    dir: Option<PathBuf>,
    memory: TableCache,
    hits: AtomicUsize,
    misses: AtomicUsize,
    rejected: AtomicUsize,
    manifest_lock: Mutex<()>,
}

pub fn table_key(g: &FiniteGroup) -> String {
    let mut h = Sha256::new();
    h.update((g.order() as u64).to_le_bytes());
    for &x in g.table() {
        h.update((x as u64).to_le_bytes());
    }
    format!("{:x}", h.finalize())
}

impl DiskCache {
    /// A memory-only cache.
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn open(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: Some(dir.to_path_buf()),
            ..Self::default()
        })
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            rejected: self.rejected.load(Ordering::Relaxed),
        }
    }

    pub fn table(&self, g: &FiniteGroup) -> Result<Arc<CharacterTable>, TableError> {
        if let Some(t) = self.memory.get(g) {
            return Ok(t);
        }
        let Some(dir) = &self.dir else {
            self.misses.fetch_add(1, Ordering::Relaxed);
            return self.memory.get_or_compute(g);
        };
        let key = table_key(g);
        let path = dir.join(format!("{key}.json"));
        match load(&path, g) {
            Some(Ok(t)) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return Ok(self.memory.insert(t));
            }
            Some(Err(())) => {
                self.rejected.fetch_add(1, Ordering::Relaxed);
            }
            None => {}
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let t = character_table(g)?;
        // a cache that cannot be written is only slower
        let _ = self.store(dir, &key, &t);
        Ok(self.memory.insert(t))
    }

    fn store(&self, dir: &Path, key: &str, t: &CharacterTable) -> io::Result<()> {
        let data = t.to_data();
        let stored = StoredTable {
            order: t.group().order(),
            exponent: data.exponent,
            values: data.values,
        };
        write_atomic(&dir.join(format!("{key}.json")), &serde_json::to_vec(&stored)?)?;
        let _guard = self.manifest_lock.lock().expect("manifest lock poisoned");
        let mpath = dir.join("manifest.json");
        let mut manifest: Manifest = fs::read(&mpath).ok().and_then(|b| serde_json::from_slice(&b).ok()).unwrap_or_default();
        manifest.tables.insert(
            key.to_string(),
            ManifestEntry {
                order: t.group().order(),
                classes: t.num_classes(),
            },
        );
        write_atomic(&mpath, &serde_json::to_vec_pretty(&manifest)?)
    }
}

/// `None` when nothing is stored, `Some(Err)` when the stored table is unusable.
fn load(path: &Path, g: &FiniteGroup) -> Option<Result<CharacterTable, ()>> {
    let bytes = fs::read(path).ok()?;
    Some((|| {
        let s: StoredTable = serde_json::from_slice(&bytes).map_err(|_| ())?;
        if s.order != g.order() {
            return Err(());
        }
        let t = CharacterTable::from_data(
            g,
            &TableData {
                exponent: s.exponent,
                values: s.values,
            },
        )
        .map_err(|_| ())?;
        t.verify().map_err(|_| ())?;
        Ok(t)
    })())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, bytes)?;
    fs::rename(tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_separate_groups() {
        let a = table_key(&FiniteGroup::cyclic(4));
        let b = table_key(&FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)));
        assert_ne!(a, b);
        assert_eq!(a, table_key(&FiniteGroup::cyclic(4)));
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn stored_tables_are_reverified() {
        let dir = tempfile::tempdir().unwrap();
        let g = FiniteGroup::symmetric(3);
        let first = DiskCache::open(dir.path()).unwrap();
        let t1 = first.table(&g).unwrap();
        assert_eq!(first.stats().misses, 1);

        let second = DiskCache::open(dir.path()).unwrap();
        let t2 = second.table(&g).unwrap();
        assert_eq!(second.stats(), CacheStats { hits: 1, misses: 0, rejected: 0 });
        assert_eq!(t1.to_data(), t2.to_data());

        // swap two entries of the stored table: orthogonality fails on load
        let path = dir.path().join(format!("{}.json", table_key(&g)));
        let mut s: StoredTable = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
        let row = s.values[0].clone();
        s.values[0] = s.values[1].clone();
        s.values[1][0] = row[1].clone();
        fs::write(&path, serde_json::to_vec(&s).unwrap()).unwrap();
        let third = DiskCache::open(dir.path()).unwrap();
        let t3 = third.table(&g).unwrap();
        assert_eq!(third.stats(), CacheStats { hits: 0, misses: 1, rejected: 1 });
        assert_eq!(t3.to_data(), t1.to_data());

        fs::write(&path, b"not json").unwrap();
        let fourth = DiskCache::open(dir.path()).unwrap();
        fourth.table(&g).unwrap();
        assert_eq!(fourth.stats().rejected, 1);
        assert!(dir.path().join("manifest.json").exists());
    }
}
