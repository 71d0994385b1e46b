//! Exact computations in Coxeter groups: Bruhat intervals, Poincare
//! polynomials, palindromicity and the enumerative series of uniform groups.

pub mod algebra;
pub mod bruhat;
pub mod census;
pub mod coxeter;
pub mod error;
pub mod fixtures;
pub mod smoothness;

pub use algebra::{BivariateSeries, CyclotomicReal, Defect, FieldContext, QPolynomial};
pub use coxeter::{Bond, CoxeterMatrix, CoxeterSystem, Gen, GenSet, GroupElement};
pub use error::{CoxError, Result};
