use std::collections::BTreeMap;

use super::structure::PoissonStructure;
use crate::linalg::Matrix;
use crate::poly::{monomials_up_to, Monomial, Polynomial};
use crate::scalar::Rational;
use crate::{QForm, QPolynomial};

impl PoissonStructure {
    /// `true` iff `π♯df = 0` identically.
    pub fn is_casimir(&self, f: &QPolynomial) -> bool {
        self.hamiltonian(f).is_zero()
    }

    /// Basis of the polynomial Casimirs of degree at most `max_degree`,
    /// constants included. Each element is a nullspace vector of the linear
    /// map `c ↦ π♯d(Σ c_m m)` on monomial coefficients.
    pub fn casimirs(&self, max_degree: u32) -> Vec<QPolynomial> {
        let n = self.dim();
        let monomials = monomials_up_to(n, max_degree);
        let mut rows: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
        let mut columns: Vec<Vec<(usize, Monomial, Rational)>> = Vec::with_capacity(monomials.len());
        for m in &monomials {
            let f = Polynomial::term(n, m.clone(), Rational::from_integer(1.into()));
            let field = self.sharp(&QForm::differential(self.chart(), &f)).expect("same chart");
            let mut col = Vec::new();
            for (idx, c) in field.components() {
                for (t, a) in c.terms() {
                    let key = (idx[0], t.clone());
                    let next = rows.len();
                    rows.entry(key).or_insert(next);
                    col.push((idx[0], t.clone(), a.clone()));
                }
            }
            columns.push(col);
        }
        let mut a = Matrix::zeros(rows.len(), monomials.len());
        for (j, col) in columns.into_iter().enumerate() {
            for (i, t, c) in col {
                a[(rows[&(i, t)], j)] = c;
            }
        }
        a.nullspace()
            .into_iter()
            .map(|v| {
                let p = Polynomial::from_terms(n, monomials.iter().cloned().zip(v));
                let lc = p.leading_coefficient().cloned().expect("nonzero nullspace vector");
                p.scale(&(Rational::from_integer(1.into()) / lc))
            })
            .collect()
    }
}
