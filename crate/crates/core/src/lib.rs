//! Exact computations for torus representations and their separating invariants.
//!
//! A representation of a rank `r` torus on `k^n` is given by an integer weight
//! matrix `A` (`r x n`, column `i` is the weight of coordinate `i`). Its
//! invariant monomials are the exponent vectors in `L = ker_Z A ∩ N^n`.
//! This crate computes Hilbert bases of `L`, nullcone and separating-variety
//! decompositions, decides when a monomial subsemigroup `S ⊆ L` gives a
//! separating algebra, and covers the Segre-Veronese family explicitly.
//!
//! All indices are zero-based.

pub mod cli;
pub mod convexgeom;
mod error;
pub mod indexset;
pub mod lattice;
mod limits;
pub mod segre_veronese;
pub mod semigroup;
pub mod septest;
pub mod torusrep;

pub use error::{Error, Result};
pub use indexset::IndexSet;
pub use lattice::{IntMatrix, LatticeBasis};
pub use limits::Limits;
pub use semigroup::{ExponentVector, HilbertBasis, MonomialSemigroup};
pub use torusrep::TorusRep;
