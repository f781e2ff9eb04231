//! Exact rational arithmetic: polynomials, Laurent polynomials, rational
//! functions, and the combinatorial generators used by the characteristic
//! number formulas.

pub mod as_string;
mod combinatorics;
mod laurent;
mod poly;
mod todd;

pub use combinatorics::{
    binomial, elementary_all, elementary_symmetric, factorial, partitions, stirling_first_unsigned,
};
pub use laurent::{laurent_limit, rfn_sum_normalize, rfn_to_laurent, LaurentPoly, LimitPoint, RationalFn};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::{q, qr, Poly};
pub use todd::{todd_polynomials, ChernPoly};

use crate::error::Result;

/// Interpolating polynomial through integer nodes.
pub fn poly_interpolate(points: &[(i64, BigRational)]) -> Result<Poly> {
    Poly::interpolate(points)
}
