use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Lazily built values keyed by rank. The first caller computes while holding
/// the lock; concurrent callers wait and share the result.
pub(crate) struct RankCache<T>(OnceLock<Mutex<HashMap<usize, Arc<T>>>>);

impl<T> RankCache<T> {
    pub(crate) const fn new() -> Self {
        Self(OnceLock::new())
    }

    pub(crate) fn get_or(&self, n: usize, build: impl FnOnce() -> T) -> Arc<T> {
        let map = self.0.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = map.lock().expect("rank cache poisoned");
        guard.entry(n).or_insert_with(|| Arc::new(build())).clone()
    }
}
