//! Sprague-Grundy solver.
//!
//! A position's value is computed by, in order: closed forms for the easy
//! families, splitting into blocks and taking the Nim sum, a canonical-key
//! lookup in the local table and then the remote cache, and finally the mex
//! over all options. Only biconnected blocks are memoised.

use std::fmt;
use std::ops::BitXor;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{Graph, Move};
use crate::theory;

mod bruteforce;
pub mod memo;
pub mod remote;

pub use bruteforce::nim_value_bruteforce;
pub use memo::LocalCache;
pub use remote::{RemoteCache, RemoteError};

/// Sprague-Grundy number of a position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NimValue(pub u16);

impl NimValue {
    pub const ZERO: NimValue = NimValue(0);

    pub fn get(self) -> u16 {
        self.0
    }
}

impl fmt::Display for NimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl BitXor for NimValue {
    type Output = NimValue;

    fn bitxor(self, rhs: NimValue) -> NimValue {
        NimValue(self.0 ^ rhs.0)
    }
}

/// Who wins under standard play from a position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// The player about to move wins.
    NPosition,
    /// The player who just moved wins.
    PPosition,
}

impl Outcome {
    pub fn of(value: NimValue) -> Outcome {
        if value == NimValue::ZERO {
            Outcome::PPosition
        } else {
            Outcome::NPosition
        }
    }

    pub fn letter(self) -> char {
        match self {
            Outcome::NPosition => 'N',
            Outcome::PPosition => 'P',
        }
    }
}

/// Least nonnegative integer not in `values`.
pub fn mex<I: IntoIterator<Item = NimValue>>(values: I) -> NimValue {
    let mut seen = ValueSet::default();
    for v in values {
        seen.insert(v);
    }
    seen.mex()
}

/// XOR of `values`; zero for an empty list.
pub fn nim_sum<I: IntoIterator<Item = NimValue>>(values: I) -> NimValue {
    values.into_iter().fold(NimValue::ZERO, BitXor::bitxor)
}

#[derive(Default)]
struct ValueSet {
    words: smallvec::SmallVec<[u64; 2]>,
}

impl ValueSet {
    fn insert(&mut self, v: NimValue) {
        let i = v.0 as usize;
        if self.words.len() <= i / 64 {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn mex(&self) -> NimValue {
        for (i, w) in self.words.iter().enumerate() {
            if *w != !0 {
                return NimValue((i * 64 + w.trailing_ones() as usize) as u16);
            }
        }
        NimValue((self.words.len() * 64) as u16)
    }
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Use the closed forms (acyclic, cycles, fused cycles, even property S).
    pub fast_paths: bool,
    /// Split positions into blocks and memoise blocks only. When off, every
    /// position is memoised whole.
    pub split_blocks: bool,
    /// Local table size in slots.
    pub local_slots: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { fast_paths: true, split_blocks: true, local_slots: memo::DEFAULT_SLOTS }
    }
}

impl SolverConfig {
    /// Plain memoised recursion: no closed forms.
    pub fn recursion_only() -> Self {
        SolverConfig { fast_paths: false, ..Default::default() }
    }

    pub fn with_slots(mut self, slots: usize) -> Self {
        self.local_slots = slots;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub calls: u64,
    pub fast_path: u64,
    pub local_hits: u64,
    pub remote_hits: u64,
    pub remote_misses: u64,
    pub expanded: u64,
}

/// Local table plus optional remote cache.
pub struct MemoTable {
    pub local: LocalCache,
    remote: Option<Box<dyn RemoteCache>>,
    degraded: bool,
}

impl MemoTable {
    pub fn new(slots: usize) -> MemoTable {
        MemoTable { local: LocalCache::new(slots), remote: None, degraded: false }
    }

    pub fn with_remote(mut self, remote: Box<dyn RemoteCache>) -> MemoTable {
        self.remote = Some(remote);
        self
    }

    pub fn has_remote(&self) -> bool {
        self.remote.is_some()
    }

    /// True once a remote failure has forced local-only operation.
    pub fn degraded(&self) -> bool {
        self.degraded
    }

    fn remote_failed(&mut self, err: RemoteError) {
        match err {
            RemoteError::Rejected => log::error!("remote cache rejected a store; values disagree"),
            err => {
                log::warn!("remote cache unavailable, continuing locally: {err}");
                self.remote = None;
                self.degraded = true;
            }
        }
    }

    fn remote_get(&mut self, key: &crate::canon::CanonKey) -> Option<NimValue> {
        let res = self.remote.as_mut()?.get(key);
        match res {
            Ok(v) => v,
            Err(e) => {
                self.remote_failed(e);
                None
            }
        }
    }

    fn remote_put(&mut self, key: &crate::canon::CanonKey, value: NimValue) {
        if let Some(remote) = self.remote.as_mut() {
            if let Err(e) = remote.put(key, value) {
                self.remote_failed(e);
            }
        }
    }
}

/// Per-move result table for one position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub value: NimValue,
    /// Every legal move, in move order, with the value of its result.
    pub per_move: Vec<(Move, NimValue)>,
}

/// A single-threaded solver owning its memo table.
pub struct Solver {
    config: SolverConfig,
    memo: MemoTable,
    stats: SolverStats,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new(SolverConfig::default())
    }
}

impl Solver {
    pub fn new(config: SolverConfig) -> Solver {
        let memo = MemoTable::new(config.local_slots);
        Solver { config, memo, stats: SolverStats::default() }
    }

    pub fn with_remote(mut self, remote: Box<dyn RemoteCache>) -> Solver {
        self.memo = self.memo.with_remote(remote);
        self
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn memo(&self) -> &MemoTable {
        &self.memo
    }

    pub fn memo_mut(&mut self) -> &mut MemoTable {
        &mut self.memo
    }

    pub fn stats(&self) -> &SolverStats {
        &self.stats
    }

    pub fn nim_value(&mut self, g: &Graph) -> NimValue {
        self.stats.calls += 1;
        if g.m() == 0 {
            return NimValue::ZERO;
        }
        if self.config.fast_paths {
            if let Some(v) = theory::closed_form_value(g) {
                self.stats.fast_path += 1;
                return v;
            }
        }
        if !self.config.split_blocks {
            return self.solve_memoized(&g.without_isolated());
        }
        let mut blocks = g.blocks();
        if blocks.len() == 1 {
            let block = blocks.pop().unwrap();
            return if block.m() == 1 { NimValue(1) } else { self.solve_memoized(&block) };
        }
        blocks.iter().map(|b| self.nim_value(b)).fold(NimValue::ZERO, BitXor::bitxor)
    }

    fn solve_memoized(&mut self, g: &Graph) -> NimValue {
        let key = canonical_form(g);
        if let Some(v) = self.memo.local.get(&key) {
            self.stats.local_hits += 1;
            return v;
        }
        if self.memo.has_remote() {
            if let Some(v) = self.memo.remote_get(&key) {
                self.stats.remote_hits += 1;
                self.memo.local.put(key, v);
                return v;
            }
            self.stats.remote_misses += 1;
        }
        self.stats.expanded += 1;
        let mut seen = ValueSet::default();
        for (_, opt) in g.options() {
            let v = self.nim_value(&opt);
            seen.insert(v);
        }
        let v = seen.mex();
        self.memo.remote_put(&key, v);
        self.memo.local.put(key, v);
        v
    }

    /// N/P class. Property-S graphs with an odd edge count are decided
    /// without a full solve.
    pub fn classify(&mut self, g: &Graph) -> Outcome {
        if self.config.fast_paths && g.m() % 2 == 1 && g.has_property_s() {
            return Outcome::NPosition;
        }
        Outcome::of(self.nim_value(g))
    }

    pub fn analyze(&mut self, g: &Graph) -> Analysis {
        let per_move: Vec<(Move, NimValue)> =
            g.options().into_iter().map(|(mv, opt)| (mv, self.nim_value(&opt))).collect();
        let value = mex(per_move.iter().map(|&(_, v)| v));
        Analysis { value, per_move }
    }

    /// From an N-position, the least move to a zero position. From a
    /// P-position, the move leaving the opponent the most replies of nonzero
    /// value (least move on ties).
    pub fn best_move(&mut self, g: &Graph) -> Result<Move> {
        let options = g.options();
        if options.is_empty() {
            return Err(Error::NoMoves);
        }
        let mut valued = Vec::with_capacity(options.len());
        for (mv, opt) in options {
            let v = self.nim_value(&opt);
            if v == NimValue::ZERO {
                return Ok(mv);
            }
            valued.push((mv, opt));
        }
        let mut best: Option<(usize, Move)> = None;
        for (mv, opt) in valued {
            let good = opt.options().iter().filter(|(_, reply)| self.nim_value(reply) != NimValue::ZERO).count();
            if best.is_none_or(|(n, _)| good > n) {
                best = Some((good, mv));
            }
        }
        Ok(best.expect("at least one move").1)
    }
}
