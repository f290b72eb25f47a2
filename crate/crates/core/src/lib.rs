//! Symbolic-numeric analysis of Poisson bivector fields with polynomial
//! coefficients on a coordinate chart.

pub mod algebra;
pub mod construct;
pub mod error;
pub mod groupoid;
pub mod linalg;
pub mod pipeline;
pub mod poisson;
pub mod poly;
pub mod scalar;
pub mod trace;

pub use error::{Error, Result};
pub use scalar::{Dual, ExactField, Field, Rational};

/// Polynomial with exact rational coefficients.
pub type QPolynomial = poly::Polynomial<Rational>;
/// Multivector field with exact rational coefficients.
pub type QMultivector = poly::MultivectorField<Rational>;
/// Differential form with exact rational coefficients.
pub type QForm = poly::DifferentialForm<Rational>;
/// Polynomial with `f64` coefficients.
pub type FPolynomial = poly::Polynomial<f64>;
