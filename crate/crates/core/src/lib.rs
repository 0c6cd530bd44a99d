//! Additive cellular automata over Z/mZ and the balanced simplices that
//! appear in the orbits they generate from arithmetic arrays.
//!
//! The library evaluates orbit entries in closed form or by dependency-cone
//! simulation, extracts oriented simplices as residue multisets, generates
//! arithmetic simplices together with their analytic multiplicity tables, and
//! turns every balance statement into a runnable verifier. A search module
//! enumerates Steinhaus triangles exhaustively, with optional symmetry
//! reduction and work sharding.
//!
//! Modules:
//! - [`residue`]: exact arithmetic in Z/mZ, inverses and multiplicative orders.
//! - [`automaton`]: weight stencils, their derived coefficients, window steps.
//! - [`orbit`]: seeds, closed-form and cone evaluation of orbit entries.
//! - [`simplex`]: oriented simplex extraction, multisets, balance, boundaries.
//! - [`arith`]: arithmetic simplices, analytic tables, subsimplex decomposition.
//! - [`verify`]: a verifier per balance theorem, with replayable verdicts.
//! - [`search`]: exhaustive Steinhaus triangle searches over first rows.
//! - [`cli`]: the `balsim` command-line front end.

pub mod arith;
pub mod automaton;
pub mod cli;
mod error;
pub mod orbit;
pub mod residue;
pub mod search;
pub mod simplex;
pub mod verify;

pub use error::Error;
pub use residue::{Modulus, Residue};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
