//! Exact arithmetic kernel: arbitrary-precision rationals, sparse bivariate
//! polynomials, univariate polynomials in a parameter `t`, and the
//! order/homogeneous/GCD toolkit the rest of the crate consumes.
//!
//! Every operation here is exact; there is no floating point anywhere.

mod bipoly;
mod gcd;
mod rational;
mod tripoly;
mod unipoly;

pub use bipoly::BiPoly;
pub use gcd::{gcd as bipoly_gcd, resultant_y};
pub use rational::{is_rational_square, parse_rational, rat, Rat};
pub use tripoly::{AffineChart, TriPoly};
pub use unipoly::{ord_t, ParamPoly, UniPoly};
