use thiserror::Error;

use crate::canon::CanonKey;
use crate::engine::NimValue;

#[derive(Debug, Error)]
pub enum RemoteError {
    #[error("connection lost: {0}")]
    ConnectionLost(String),
    #[error("protocol violation: {0}")]
    ProtocolViolation(String),
    /// The server refused a store, e.g. a conflicting value for a known key.
    #[error("store rejected by server")]
    Rejected,
}

/// A shared key-value store consulted after the local table misses.
///
/// Implementations are used from one worker at a time.
pub trait RemoteCache: Send {
    fn get(&mut self, key: &CanonKey) -> Result<Option<NimValue>, RemoteError>;
    fn put(&mut self, key: &CanonKey, value: NimValue) -> Result<(), RemoteError>;
}
