//! Exact-rational Laurent expansion of the extreme eigenvalues of the linear
//! families, by order matching and by Lagrange–Bürmann inversion.

mod eps;
mod lagrange;
mod ratpoly;
mod solve;
mod tables;

pub use eps::EpsSeries;
pub use lagrange::{lagrange_burmann_inverse, solve_lambda_series_lagrange};
pub use ratpoly::{parse_rat, rat, rat_string, RatPoly};
pub use solve::{
    extreme_series_eval, lambda_minus_series, lambda_series_eval, lambda_series_residual,
    solve_lambda_series, spread_series_eval, ACoeffList, SeriesFamily,
};
pub use tables::{
    compare_coefficients, derived_in_printed_variable, printed_variable,
    published_coefficient_tables, sixth_coefficient_report, CoeffComparison, CoeffRow,
    PrintedTables, SixthCoefficient,
};
