//! Exact scalars and polynomials.

pub mod field;
pub mod qpoly;
pub mod series;

pub use field::{build_field, two_cos, CyclotomicReal, FieldContext};
pub use qpoly::{palindromic_defect, q_integer, q_integer_signed, Defect, QPolynomial};
pub use series::{BivariatePoly, BivariateSeries};
