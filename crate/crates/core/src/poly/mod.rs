//! Multivariate polynomials over the rationals in a standard-graded ring.

mod monomial;
mod order;
mod polynomial;
mod ring;

pub use monomial::{count_monomials, monomials_of_degree, Monomial};
pub use order::{compare_monomials, MonomialOrder};
pub use polynomial::{homogeneous_components, poly_arith, ArithKind, Polynomial, Term};
pub use ring::PolyRing;

pub(crate) use ring::check_same_ring;
