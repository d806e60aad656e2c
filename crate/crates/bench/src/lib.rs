//! Shared fixtures for the benchmarks.

use calg_core::reports::parse_problem;
use calg_core::{Ideal, Polynomial};

fn ideal(text: &str) -> Ideal {
    parse_problem(text).expect("fixture parses").ideal
}

pub fn maximal_square() -> Ideal {
    ideal("ring Q[x,y]; ideal (x^2, x*y, y^2);")
}

pub fn twisted_cubic() -> Ideal {
    ideal("ring Q[x,y,z,w]; ideal (xz - y^2, xw - yz, yw - z^2);")
}

/// Three quadrics in four variables with small coefficients.
pub fn quadric_ci() -> Ideal {
    ideal("ring Q[x,y,z,w]; ideal (x^2 - 2*y*z, y^2 + z*w, z^2 - x*w);")
}

/// `(x^2, y^3)` inside `m^2`, as a linking sequence.
pub fn linking_sequence(i: &Ideal) -> Vec<Polynomial> {
    calg_core::reports::parse_polynomial_list(i.ring(), "x^2, y^3").expect("sequence parses")
}
