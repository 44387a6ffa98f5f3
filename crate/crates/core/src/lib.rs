//! Exact computations around invariant gradient fields of the classical
//! simple Lie algebras and the index of the normalizer of a nilpotent
//! centralizer acting on its centre.

pub mod error;
pub mod exact;
pub mod index;
pub mod invariants;
pub mod liealg;
pub mod report;
pub mod triplets;

pub use error::{Error, Result};
pub use liealg::{AlgebraId, AlgebraRealization, Element, Family, Subspace};
pub use report::{Check, CheckReport};
pub use triplets::{Partition, Triplet};
