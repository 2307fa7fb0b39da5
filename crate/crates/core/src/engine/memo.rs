use crate::canon::CanonKey;
use crate::engine::NimValue;

/// Default number of local slots.
pub const DEFAULT_SLOTS: usize = 1 << 20;
/// Largest accepted slot count.
pub const MAX_SLOTS: usize = 1 << 25;

/// Fixed-size, direct-mapped table from canonical key to Nim value. A store
/// into an occupied slot overwrites whatever was there.
pub struct LocalCache {
    slots: Vec<Option<(CanonKey, NimValue)>>,
    mask: usize,
    occupied: usize,
}

impl LocalCache {
    /// `slots` is rounded up to a power of two and clamped to `1..=MAX_SLOTS`.
    pub fn new(slots: usize) -> LocalCache {
        let size = slots.clamp(1, MAX_SLOTS).next_power_of_two();
        let mut table = Vec::new();
        table.resize_with(size, || None);
        LocalCache { slots: table, mask: size - 1, occupied: 0 }
    }

    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    pub fn len(&self) -> usize {
        self.occupied
    }

    pub fn is_empty(&self) -> bool {
        self.occupied == 0
    }

    fn slot(&self, key: &CanonKey) -> usize {
        // FNV-1a; placement only affects hit rate, never correctness.
        let mut h: u64 = 0xcbf29ce484222325;
        for &b in key.as_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        (h ^ (h >> 29)) as usize & self.mask
    }

    pub fn get(&self, key: &CanonKey) -> Option<NimValue> {
        match &self.slots[self.slot(key)] {
            Some((k, v)) if k == key => Some(*v),
            _ => None,
        }
    }

    pub fn put(&mut self, key: CanonKey, value: NimValue) {
        let i = self.slot(&key);
        if self.slots[i].is_none() {
            self.occupied += 1;
        }
        self.slots[i] = Some((key, value));
    }

    pub fn clear(&mut self) {
        self.slots.iter_mut().for_each(|s| *s = None);
        self.occupied = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::graph::families::*;

    #[test]
    fn store_and_overwrite() {
        let mut t = LocalCache::new(1);
        assert_eq!(t.capacity(), 1);
        let a = canonical_form(&cycle(3));
        let b = canonical_form(&cycle(4));
        t.put(a.clone(), NimValue(2));
        assert_eq!(t.get(&a), Some(NimValue(2)));
        t.put(b.clone(), NimValue(0));
        assert_eq!(t.get(&a), None);
        assert_eq!(t.get(&b), Some(NimValue(0)));
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn rounds_to_power_of_two() {
        assert_eq!(LocalCache::new(1000).capacity(), 1024);
        assert_eq!(LocalCache::new(usize::MAX).capacity(), MAX_SLOTS);
    }
}
