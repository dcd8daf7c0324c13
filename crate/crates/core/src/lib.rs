//! Exact computations with rational functions under composition.
//!
//! The crate decides, for rational functions `X` and `Y` over a number field,
//! whether `C(X) ∩ C(Y)` has the smallest possible index `deg X * deg Y`, and
//! provides the surrounding machinery: compositum and Lüroth generators,
//! solving `A(X) = B(Y)`, deck groups, equivariance checks, and local
//! Böttcher coordinates.

pub mod algebra;
pub mod boettcher;
pub mod error;
pub mod lattice;
pub mod moebius;
pub mod ratfun;
pub mod verifiers;
pub mod workbench;

pub use error::{Error, Result};
