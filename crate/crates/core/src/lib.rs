//! Witness search and certification for number fields and towers that are
//! ramified at few primes.
//!
//! The crate is organized around one pipeline: binary forms and sieve-style
//! searches over the projective line (`forms`), exact integer arithmetic and
//! factorization (`arith`), polynomial factorization over prime fields
//! (`ffpoly`), specializations of the trinomial cover family with full
//! ramification and Galois certification (`specfield`), finite permutation
//! group machinery (`groups`), and the tower builder that assembles direct
//! powers of symmetric groups with a small united ramified set (`tower`).
//!
//! Everything is deterministic: searches enumerate candidates in a fixed
//! documented order, randomized subroutines derive their seeds from their
//! inputs, and every certificate can be re-verified from scratch.

pub mod arith;
pub mod error;
pub mod ffpoly;
pub mod forms;
pub mod groups;
pub mod poly;
pub mod report;
pub mod specfield;
pub mod tower;

pub use error::{Error, Result};
