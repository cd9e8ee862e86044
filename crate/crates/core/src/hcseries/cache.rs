use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::coeffs::{gamma_coeffs, CoeffTable};
use crate::space::{ktype_or_trivial, KType, Space};
use crate::value::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Key {
    p: u32,
    q: u32,
    k: i32,
    l: i32,
    ktype: bool,
    re: u64,
    im: u64,
    n_max: usize,
}

/// Memoized Γ_m tables. Readers proceed concurrently; insertions are
/// serialized by the write lock. A miss computes outside the lock, so two
/// racing threads may both compute the same table; the first insert wins
/// and both callers see identical values.
#[derive(Debug, Default)]
pub struct CoeffCache {
    map: RwLock<HashMap<Key, Arc<CoeffTable>>>,
}

impl CoeffCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_compute(
        &self,
        space: &Space,
        ktype: Option<KType>,
        lambda: C64,
        n_max: usize,
    ) -> Arc<CoeffTable> {
        let kt = ktype_or_trivial(ktype);
        let key = Key {
            p: space.p,
            q: space.q,
            k: kt.k,
            l: kt.l,
            ktype: ktype.is_some(),
            re: lambda.re.to_bits(),
            im: lambda.im.to_bits(),
            n_max,
        };
        if let Some(t) = self.map.read().expect("cache lock poisoned").get(&key) {
            return Arc::clone(t);
        }
        let table = Arc::new(gamma_coeffs(space, ktype, lambda, n_max));
        let mut w = self.map.write().expect("cache lock poisoned");
        Arc::clone(w.entry(key).or_insert(table))
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::thread;

    #[test]
    fn concurrent_readers_see_the_same_table() {
        let cache = Arc::new(CoeffCache::new());
        let s = Space::new(5, 3).unwrap();
        let lam = C64::new(0.4, 0.9);
        let handles: Vec<_> = (0..8)
            .map(|i| {
                let c = Arc::clone(&cache);
                thread::spawn(move || {
                    let lam_i = if i % 2 == 0 { lam } else { lam + 1.0 };
                    c.get_or_compute(&s, None, lam_i, 80)
                })
            })
            .collect();
        let tables: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert_eq!(cache.len(), 2);
        assert_eq!(*tables[0], gamma_coeffs(&s, None, lam, 80));
        assert_eq!(*tables[0], *tables[2]);
        assert_eq!(*tables[1], *tables[3]);
    }
}
