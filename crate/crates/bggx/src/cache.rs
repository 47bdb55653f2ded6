use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use bggx_core::symchern::{sym_power_chern, SymChernTable};

/// Shared `c(Sym^r)` tables keyed by `(rank, power, max_degree)`.
///
/// Two threads asking for the same missing key may both compute it; the
/// tables are identical, so whichever insert lands first wins.
#[derive(Default)]
pub struct TableCache {
    tables: RwLock<HashMap<(usize, usize, usize), Arc<SymChernTable>>>,
}

impl TableCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, k: usize, r: usize, max_degree: usize) -> bggx_core::Result<Arc<SymChernTable>> {
        let key = (k, r, max_degree);
        if let Some(t) = self.tables.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(sym_power_chern(k, r, max_degree)?);
        let mut guard = self.tables.write().expect("cache lock");
        Ok(Arc::clone(guard.entry(key).or_insert(table)))
    }

    pub fn len(&self) -> usize {
        self.tables.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
