//! Write-once memo tables shared by the generators.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

pub(crate) struct Memo<K, V> {
    map: Mutex<HashMap<K, Arc<V>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub(crate) fn new() -> Self {
        Memo { map: Mutex::new(HashMap::new()) }
    }

    /// Computes outside the lock so recursive lookups do not deadlock; a
    /// racing computation of the same key yields an identical value.
    pub(crate) fn get_or(&self, key: K, compute: impl FnOnce() -> V) -> Arc<V> {
        if let Some(v) = self.map.lock().expect("memo poisoned").get(&key) {
            return Arc::clone(v);
        }
        let v = Arc::new(compute());
        let mut map = self.map.lock().expect("memo poisoned");
        Arc::clone(map.entry(key).or_insert(v))
    }
}
