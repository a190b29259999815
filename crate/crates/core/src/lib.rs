//! Exact certification of reductions and joint reductions of ideal
//! filtrations in local rings.
//!
//! The crate computes minimal generator counts, integral closures of
//! monomial ideals via their Newton polyhedra, and binomial bounds that
//! gate a randomized search for reduction equations. Every positive answer
//! is backed by exact rational linear algebra in a deep enough Artinian
//! truncation, so certificates can be replayed bit for bit.

pub mod bounds;
pub mod certificate;
pub mod error;
pub mod files;
pub mod filtration;
pub mod sampler;
pub mod search;
pub mod ideal;
pub mod linalg;
pub mod newton;
pub mod registry;
pub mod ring;
pub mod truncated;
pub mod wire;

pub use error::{Error, Result};
