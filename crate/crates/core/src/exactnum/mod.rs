//! Exact arithmetic over `Q(i)` and a multiprecision complex layer.

mod bigcomplex;
mod gauss;
mod irreducible;
mod poly;
mod ratfunc;
mod roots;

mod scalar;
pub use scalar::Scalar;
pub use bigcomplex::{BigComplex, NumPoly, NumRatFunc, DEFAULT_PRECISION, MIN_PRECISION};
pub use gauss::{parse_rational, rational_sqrt, GaussRat};
pub use irreducible::{irreducible_over_q, MAX_DEGREE as IRREDUCIBLE_MAX_DEGREE};
pub use poly::ExactPoly;
pub use ratfunc::ExactRatFunc;
pub use roots::{roots_clustered, roots_exact, roots_f64, roots_numeric, roots_with_multiplicity};

/// Discriminant of an exact polynomial; see [`ExactPoly::discriminant`].
pub fn discriminant(p: &ExactPoly) -> crate::Result<GaussRat> {
    p.discriminant()
}
