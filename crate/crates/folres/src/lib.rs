//! Exact resolution of plane 1-form singularities by iterated blow-ups,
//! with divisor invariants, balanced divisors of separatrices, and the
//! valuation identities relating them.

pub mod algebra;
pub mod blowup;
pub mod divisors;
pub mod error;
pub mod foliation;
pub mod parse;
pub mod projective;
pub mod report;
pub mod resolution;
pub mod valuation;

pub use error::{Error, Result};
