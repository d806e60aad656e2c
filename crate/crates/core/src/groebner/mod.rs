//! Gröbner bases for homogeneous ideals and submodules of graded free
//! modules, with the ideal-theoretic primitives built on them.

mod buchberger;
mod hilbert;
mod ideal;
mod matrix;
mod syzygy;
mod vector;

pub use buchberger::{buchberger, is_reduced, satisfies_buchberger_criterion, GbResult, Reducer};
pub use hilbert::{monomial_numerator, HilbertSeries};
pub use ideal::{check_homogeneous, Base, Ideal};
pub use matrix::GradedMatrix;
pub use syzygy::{
    ideal_quotient, image_contains, kernel, lift_columns, minimal_columns, minimal_columns_modulo,
    syzygy_matrix,
};
pub use vector::{axpy, ModOrder, VTerm, Vector};

pub(crate) use syzygy::{image_gb, reduce_entries};

use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::series::TruncatedSeries;

/// Returns the ideal with its reduced Gröbner basis computed.
pub fn groebner_basis(i: &Ideal) -> Ideal {
    i.groebner_basis();
    i.clone()
}

/// Normal form of `f` modulo `i`.
pub fn normal_form(f: &Polynomial, i: &Ideal) -> Polynomial {
    i.normal_form(f)
}

/// Krull dimension of `R/I`, `-1` for the unit ideal.
pub fn krull_dimension(i: &Ideal) -> i64 {
    i.krull_dimension()
}

/// Coefficients `0..=n` of the Hilbert series of `R/I`.
pub fn hilbert_series(i: &Ideal, n: usize) -> TruncatedSeries {
    let h = i.quotient_hilbert();
    TruncatedSeries::new((0..=n as i32).map(|d| Rational::from(h.value(d))).collect())
}

/// Buchberger's criterion for the reduced basis of `i`.
pub fn ideal_basis_is_groebner(i: &Ideal) -> bool {
    let ord = i.order1();
    let basis: Vec<Vector> = i
        .groebner_basis()
        .iter()
        .map(|g| Vector::from_polys(&ord, std::slice::from_ref(g)))
        .collect();
    satisfies_buchberger_criterion(&ord, &basis) && is_reduced(&ord, &basis)
}
