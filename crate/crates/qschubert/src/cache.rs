//! Process-wide caches of ring presentations and residue evaluators.
//!
//! Both are immutable once built, so they are shared as `Arc`s. A racing
//! build of the same key is harmless: the first insert wins.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, OnceLock, RwLock};

use qschubert_core::invariants::Evaluator;
use qschubert_core::{Backend, GrassmannSpec, Result, RingPresentation};

struct Cache<K, V> {
    map: RwLock<HashMap<K, Arc<V>>>,
}

impl<K: Eq + Hash + Copy, V> Cache<K, V> {
    fn new() -> Self {
        Cache {
            map: RwLock::new(HashMap::new()),
        }
    }

    fn get_or_try_insert(&self, key: K, build: impl FnOnce() -> Result<V>) -> Result<Arc<V>> {
        if let Some(v) = self.map.read().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Ok(Arc::clone(v));
        }
        let built = Arc::new(build()?);
        let mut map = self.map.write().unwrap_or_else(|e| e.into_inner());
        Ok(Arc::clone(map.entry(key).or_insert(built)))
    }
}

/// The presentation of `spec`, built at most once per process.
pub fn presentation(spec: GrassmannSpec) -> Result<Arc<RingPresentation>> {
    static CACHE: OnceLock<Cache<GrassmannSpec, RingPresentation>> = OnceLock::new();
    CACHE
        .get_or_init(Cache::new)
        .get_or_try_insert(spec, || RingPresentation::build(spec))
}

/// The residue evaluator of `spec` in `backend`, built at most once per process.
pub fn evaluator(spec: GrassmannSpec, backend: Backend) -> Result<Arc<Evaluator>> {
    static CACHE: OnceLock<Cache<(GrassmannSpec, Backend), Evaluator>> = OnceLock::new();
    CACHE
        .get_or_init(Cache::new)
        .get_or_try_insert((spec, backend), || Evaluator::new(spec, backend))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::thread;

    #[test]
    fn shared_across_threads() {
        let spec = GrassmannSpec::new(2, 5).unwrap();
        let handles: Vec<_> = (0..4)
            .map(|_| thread::spawn(move || presentation(spec).unwrap()))
            .collect();
        let all: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        let first = presentation(spec).unwrap();
        assert!(all.iter().all(|p| Arc::ptr_eq(p, &first)));
    }

    #[test]
    fn keyed_by_backend() {
        let spec = GrassmannSpec::new(1, 3).unwrap();
        let a = evaluator(spec, Backend::Exact).unwrap();
        let b = evaluator(spec, Backend::float()).unwrap();
        assert!(!Arc::ptr_eq(&a, &b));
        assert!(Arc::ptr_eq(&a, &evaluator(spec, Backend::Exact).unwrap()));
    }
}
