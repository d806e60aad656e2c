//! Truncated power series, deviations and Poincaré series analysis.

mod analysis;
mod deviations;
mod truncated;

pub use analysis::{
    alpha_coefficients, alpha_from_series, ci_series_test, log_derivative, mahler_zero_pattern,
    odd_alpha_coefficients, zeros_at_odd_primes, CiVerdict, ZeroPattern,
};
pub use deviations::{
    deviations, deviations_from_betti, deviations_from_betti_table, deviations_from_closure,
    poincare_from_deviations, DeviationSeries, DeviationSource,
};
pub use truncated::TruncatedSeries;
