//! Shared memo table for solver workers: a TCP key-value server mapping
//! canonical keys to Nim values, and a client that plugs into
//! [`nimors::Solver`] as its remote cache.
//!
//! ```no_run
//! use nimors::{Solver, SolverConfig};
//! use nimors_cache::{server, CacheClient};
//!
//! let handle = server::spawn("127.0.0.1:0", None)?;
//! let client = CacheClient::connect(handle.local_addr())?;
//! let mut solver = Solver::new(SolverConfig::default()).with_remote(Box::new(client));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Stored values are never overwritten: a put that disagrees with the
//! stored value is answered with an error and logged, since values are
//! deterministic and a disagreement means a bug somewhere.

pub mod client;
pub mod persist;
pub mod protocol;
pub mod server;
pub mod store;

pub use client::{CacheClient, ClientError};
pub use protocol::{Request, Response, Stats};
pub use server::ServerHandle;
pub use store::{PutOutcome, Store};
