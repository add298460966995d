//! Exact canonical matrices of group-invariant Fourier transforms on
//! matrix spaces over finite fields.
//!
//! The crate computes the matrix of the Fourier transform restricted to
//! functions constant on orbits of a group action, three ways where possible:
//! brute-force orbit sums, two-term recursions from projection diagrams and
//! closed forms in Krawtchouk polynomials. All arithmetic is exact.

pub mod arith;
pub mod error;
pub mod export;
pub mod field;
pub mod qspecial;
pub mod recursions;
pub mod report;
pub mod spaces;
pub mod symspace;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
