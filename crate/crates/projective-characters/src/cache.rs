//! A shared cache of character tables keyed by the multiplication table.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, RwLock};

use finite_group::FiniteGroup;

use crate::table::{character_table, CharacterTable, TableError};

/// Concurrent reads, exclusive insertion. Tables are built outside the lock;
/// when two threads race on the same group the first insertion wins.
#[derive(Debug, Default)]
pub struct TableCache {
    inner: RwLock<HashMap<u64, Vec<Arc<CharacterTable>>>>,
}

pub fn group_key(g: &FiniteGroup) -> u64 {
    let mut h = DefaultHasher::new();
    g.table().hash(&mut h);
    h.finish()
}

impl TableCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, g: &FiniteGroup) -> Option<Arc<CharacterTable>> {
        let map = self.inner.read().expect("cache lock poisoned");
        map.get(&group_key(g))?.iter().find(|t| t.group() == g).cloned()
    }

    /// Stores `t` unless a table for the same group is present; returns the stored table.
    pub fn insert(&self, t: CharacterTable) -> Arc<CharacterTable> {
        let key = group_key(t.group());
        let mut map = self.inner.write().expect("cache lock poisoned");
        let bucket = map.entry(key).or_default();
        if let Some(old) = bucket.iter().find(|old| old.group() == t.group()) {
            return old.clone();
        }
        let t = Arc::new(t);
        bucket.push(t.clone());
        t
    }

    pub fn get_or_compute(&self, g: &FiniteGroup) -> Result<Arc<CharacterTable>, TableError> {
        if let Some(t) = self.get(g) {
            return Ok(t);
        }
        let t = character_table(g)?;
        Ok(self.insert(t))
    }

    pub fn len(&self) -> usize {
        self.inner.read().expect("cache lock poisoned").values().map(|b| b.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
