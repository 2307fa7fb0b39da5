//! Solver for Graph Nimors, the impartial game in which a move deletes or
//! contracts one edge and the player with no edge left to move on loses.
//!
//! ```
//! use nimors::{graph::families, Solver};
//!
//! let mut solver = Solver::default();
//! assert_eq!(solver.nim_value(&families::petersen()).0, 1);
//! ```

pub mod canon;
pub mod census;
pub mod engine;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod par;
pub mod theory;

pub use canon::CanonKey;
pub use engine::{NimValue, Outcome, Solver, SolverConfig};
pub use error::{Error, Result};
pub use graph::{Action, Edge, Graph, Move};
pub use par::Parallelism;
