//! Weighted zero-sum sequences over Z/nZ.
//!
//! A sequence S = (x_1, ..., x_k) over Z/nZ is an (A,B)-weighted zero-sum
//! sequence when coefficients a_i in A and b_i in B exist with
//! sum(a_i * x_i) = 0 and sum(b_i * a_i) = 0 (mod n).  This crate decides
//! that predicate, searches subsequences under positional constraints,
//! computes the associated combinatorial constants C, D and E, enumerates
//! extremal sequences up to symmetry, and re-checks a catalog of known
//! results about these constants at small moduli.

pub mod cache;
pub mod constants;
pub mod engine;
pub mod extremal;
pub mod residue;
pub mod sequence;
pub mod verify;

mod error;

pub use error::Error;

/// Engine version stamped into cache records and reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

pub type Result<T> = std::result::Result<T, Error>;
