//! Exact-arithmetic experiments on multiplicative equations over generalized
//! arithmetic progressions in prime fields: solution counting, lattice
//! machinery, bilinear coefficient systems with their factored moduli,
//! rank-reduction certificates, and sum-product statistics.

pub mod error;
pub mod counting;
pub mod gap;
pub mod exact;

pub use error::{Error, Result};
