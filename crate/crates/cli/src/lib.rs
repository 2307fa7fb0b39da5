//! Command implementations and the HTTP game API behind the `nimors`
//! binary.

pub mod api;
pub mod commands;
pub mod game;
pub mod spec;
