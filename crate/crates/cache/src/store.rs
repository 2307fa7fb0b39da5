use std::io;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use dashmap::mapref::entry::Entry;
use dashmap::DashMap;

use crate::persist::Log;
use crate::protocol::{Request, Response, Stats};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PutOutcome {
    Stored,
    /// The key already held this value.
    Unchanged,
    /// The key holds a different value, which is kept.
    Conflict(u16),
}

/// Concurrent key-value map with optional write-ahead persistence.
#[derive(Default)]
pub struct Store {
    map: DashMap<Box<[u8]>, u16>,
    hits: AtomicU64,
    misses: AtomicU64,
    puts: AtomicU64,
    log: Option<Mutex<Log>>,
}

impl Store {
    pub fn in_memory() -> Store {
        Store::default()
    }

    /// Replays the log at `path` (creating it if absent) and appends every
    /// later store to it.
    pub fn open(path: &Path) -> io::Result<Store> {
        let (log, replayed) = Log::open(path)?;
        let store = Store { log: Some(Mutex::new(log)), ..Store::default() };
        let count = replayed.len();
        for (key, value) in replayed {
            match store.map.entry(key.into_boxed_slice()) {
                Entry::Vacant(e) => {
                    e.insert(value);
                }
                Entry::Occupied(e) if *e.get() != value => {
                    log::error!("cache log holds conflicting values for {:02x?}; keeping {}", e.key(), e.get());
                }
                Entry::Occupied(_) => {}
            }
        }
        log::info!("cache log {}: replayed {count} records, {} keys", path.display(), store.len());
        Ok(store)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, key: &[u8]) -> Option<u16> {
        let found = self.map.get(key).map(|v| *v);
        let counter = if found.is_some() { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    /// A new key is logged before it becomes visible, so every acknowledged
    /// store survives a restart.
    pub fn put(&self, key: &[u8], value: u16) -> io::Result<PutOutcome> {
        let outcome = match self.map.entry(key.into()) {
            Entry::Occupied(e) if *e.get() == value => PutOutcome::Unchanged,
            Entry::Occupied(e) => PutOutcome::Conflict(*e.get()),
            Entry::Vacant(e) => {
                if let Some(log) = &self.log {
                    log.lock().unwrap_or_else(|p| p.into_inner()).append(key, value)?;
                }
                e.insert(value);
                PutOutcome::Stored
            }
        };
        if !matches!(outcome, PutOutcome::Conflict(_)) {
            self.puts.fetch_add(1, Ordering::Relaxed);
        }
        Ok(outcome)
    }

    pub fn stats(&self) -> Stats {
        Stats {
            entries: self.map.len() as u64,
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            puts: self.puts.load(Ordering::Relaxed),
        }
    }

    pub fn handle(&self, request: &Request) -> Response {
        match request {
            Request::Get(key) => self.get(key).map_or(Response::Miss, Response::Hit),
            Request::Put(key, value) => match self.put(key, *value) {
                Ok(PutOutcome::Stored | PutOutcome::Unchanged) => Response::Ok,
                Ok(PutOutcome::Conflict(old)) => {
                    log::error!("conflicting store for {key:02x?}: have {old}, got {value}");
                    Response::Error
                }
                Err(e) => {
                    log::error!("cache log write failed: {e}");
                    Response::Error
                }
            },
            Request::Stats => Response::Stats(self.stats()),
        }
    }
}
