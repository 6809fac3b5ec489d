//! Anti-Ramsey numbers for vertex-disjoint triangles.
//!
//! The crate evaluates the known bounds on `ar(n, kC3)`, generates the
//! extremal colorings, finds rainbow triangle packings constructively, checks
//! the structural lemmas behind the upper bounds by exact search, and
//! certifies small anti-Ramsey values exhaustively.

pub mod bounds;
pub mod cli;
pub mod colorings;
pub mod constructions;
pub mod error;
pub mod exec;
pub mod graphs;
pub mod oracle;
pub mod rainbow;
pub mod sampling;
pub mod structure;
pub mod suites;

pub use error::{Error, FormatError, Result};
