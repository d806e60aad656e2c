//! Exact computational commutative algebra over the rationals.

pub mod cotangent;
pub mod error;
pub mod groebner;
pub mod koszul_tate;
pub mod linalg;
pub mod linkage;
pub mod modules;
pub mod poly;
pub mod rational;
pub mod reports;
pub mod series;

#[cfg(test)]
pub(crate) mod test_corpus;

pub use error::{Error, Result};
pub use groebner::{Base, GradedMatrix, HilbertSeries, Ideal};
pub use poly::{Monomial, MonomialOrder, PolyRing, Polynomial, Term};
pub use rational::Rational;
pub use series::TruncatedSeries;
