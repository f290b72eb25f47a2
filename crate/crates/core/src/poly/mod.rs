//! Exact polynomial arithmetic and multivector / differential-form calculus
//! on a single coordinate chart.

mod monomial;
mod multivector;
mod parse;
mod polynomial;

use std::sync::Arc;

pub use monomial::{monomials_up_to, Monomial};
pub use multivector::{
    ConstTensor, Contravariant, Covariant, DifferentialForm, MultivectorField, Tensor, TensorKind,
};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;

use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};

/// Ordered coordinate names of a chart `R^n`.
#[derive(Clone, Debug, Eq)]
pub struct Chart {
    names: Arc<[String]>,
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Chart {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Chart {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    /// Chart with coordinates `x1, ..., xn`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        Chart::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial<Rational>> {
        parse_polynomial(src, &self.names)
    }

    pub fn var<F: Field>(&self, i: usize) -> Polynomial<F> {
        Polynomial::var(self.dim(), i)
    }

    /// Concatenation of two charts, used by direct products.
    pub fn product(&self, other: &Chart) -> Chart {
        Chart::new(self.names.iter().chain(other.names.iter()).cloned())
    }

    pub fn render<F: Field>(&self, p: &Polynomial<F>) -> String {
        p.to_string_with(&self.names)
    }

    pub(crate) fn check(&self, other: &Chart) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ChartMismatch)
        }
    }
}
