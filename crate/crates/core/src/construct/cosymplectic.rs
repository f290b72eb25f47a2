//! Reduction of a bivector to a cosymplectic subspace `W` (one with
//! `♯W° ⊕ W` the whole space): a covector on `W` is extended by the unique
//! covector vanishing on `♯W°`, and `π` is evaluated on the extensions.
//!
//! With `A` the rows spanning `W°` and `C = AΠAᵀ`, the reduced matrix is
//! `Π − ΠAᵀC⁻¹AΠ`.

use crate::algebra::PolyMatrix;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poisson::PoissonStructure;
use crate::scalar::{CoerceFrom, Field, Rational};
use crate::{QMultivector, QPolynomial};

/// Symbolic reduction for a constant subspace.
#[derive(Clone, Debug)]
pub struct CosymplecticReduction {
    pub reduced: QMultivector,
    /// `π − π^new`.
    pub transverse: QMultivector,
    /// Rows spanning `W°`.
    pub annihilator: Vec<Vec<Rational>>,
    /// `det C`; the cosymplectic condition holds exactly where it is nonzero.
    pub determinant: QPolynomial,
    pi: QMultivector,
}

/// Rows spanning the annihilator of the span of `w`.
pub fn annihilator_rows<S: Field>(n: usize, w: &[Vec<S>]) -> Vec<Vec<S>> {
    if w.is_empty() {
        return (0..n)
            .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
            .collect();
    }
    Matrix::from_rows(w.to_vec()).nullspace()
}

/// Reduces `π` to the constant subspace spanned by `w`.
pub fn cosymplectic_reduce(pi: &PoissonStructure, w: &[Vec<Rational>]) -> Result<CosymplecticReduction> {
    let n = pi.dim();
    for v in w {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
    }
    let dim_w = if w.is_empty() { 0 } else { Matrix::from_rows(w.to_vec()).rank() };
    let rows = annihilator_rows(n, w);
    let r = rows.len();
    let big_pi = pi.matrix();
    let a = PolyMatrix::from_fn(n, r, n, |i, j| QPolynomial::constant(n, rows[i][j].clone()));
    let pa_t = big_pi.mul(&a.transpose());
    let c = a.mul(&pa_t);
    let det = c.determinant();
    if det.is_zero() {
        return Err(Error::NotCosymplectic {
            defect: r - c.generic_rank(),
            dim_w,
            dim_ann: r,
        });
    }
    // Π − ΠAᵀ adj(C) AΠ / det C
    let a_pi = a.mul(&big_pi);
    let correction = pa_t.mul(&c.adjugate()).mul(&a_pi);
    let mut reduced = QMultivector::zero(pi.chart(), 2);
    for i in 0..n {
        for j in i + 1..n {
            let q = correction
                .get(i, j)
                .div_exact(&det)
                .ok_or_else(|| Error::NonPolynomialReduction(pi.chart().render(&det)))?;
            reduced.add_component(&[i, j], big_pi.get(i, j) - &q);
        }
    }
    let transverse = pi.bivector().sub(&reduced)?;
    Ok(CosymplecticReduction {
        reduced,
        transverse,
        annihilator: rows,
        determinant: det,
        pi: pi.bivector().clone(),
    })
}

impl CosymplecticReduction {
    /// `true` when `π − π^new` at `x` lies in `∧²(♯W°)`.
    pub fn transverse_in_wedge_at(&self, x: &[Rational]) -> bool {
        if self.annihilator.is_empty() {
            return self.transverse.evaluate_at(x).expect("point dimension").is_zero();
        }
        let pi_x = self.pi.evaluate_at(x).expect("point dimension").to_matrix();
        let a = Matrix::from_rows(self.annihilator.clone());
        // columns ♯a_i = Πᵀ a_i
        let u = pi_x.transpose().mul(&a.transpose());
        let t = self.transverse.evaluate_at(x).expect("point dimension").to_matrix();
        u.rank() == u.hstack(&t).rank()
    }
}

/// Induced bivector at one point on a subspace `W` given by a basis, as an
/// `n × n` matrix. Works over any field; over floats, pivots below
/// [`crate::scalar::FLOAT_CUTOFF`] count as zero.
pub fn induced_bivector_at<S>(pi: &QMultivector, w: &[Vec<S>], x: &[S]) -> Result<Matrix<S>>
where
    S: Field + CoerceFrom<Rational>,
{
    let n = pi.dim();
    let p = pi.evaluate_at(x)?.to_matrix();
    let rows = annihilator_rows(n, w);
    let r = rows.len();
    let dim_w = n - r;
    if r == 0 {
        return Ok(p);
    }
    let a = Matrix::from_rows(rows);
    let u = p.transpose().mul(&a.transpose());
    let span = if w.is_empty() {
        u.clone()
    } else {
        u.hstack(&Matrix::from_columns(n, w))
    };
    let defect = n - span.rank();
    if defect > 0 {
        return Err(Error::NotCosymplectic {
            defect,
            dim_w,
            dim_ann: r,
        });
    }
    let pa_t = p.mul(&a.transpose());
    let c = a.mul(&pa_t);
    let c_inv = c.inverse().ok_or(Error::NotCosymplectic {
        defect: r - c.rank(),
        dim_w,
        dim_ann: r,
    })?;
    Ok(p.sub(&pa_t.mul(&c_inv).mul(&a.mul(&p))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::bivector;
    use crate::poly::Chart;
    use crate::scalar::int;

    fn r6() -> PoissonStructure {
        let c = Chart::new(["t", "th", "x1", "x2", "x3", "x4"]);
        PoissonStructure::from_components(&c, &[(0, 1, "t"), (2, 3, "1"), (4, 5, "1")]).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<Rational> {
        (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect()
    }

    #[test]
    fn torus_chart_reduction() {
        let p = r6();
        let w: Vec<_> = [0, 1, 2, 3].iter().map(|&i| e(6, i)).collect();
        let red = cosymplectic_reduce(&p, &w).unwrap();
        let expect = bivector(p.chart(), &[(0, 1, "t"), (2, 3, "1")]).unwrap();
        assert_eq!(red.reduced, expect);
        let x: Vec<Rational> = (1..=6).map(int).collect();
        assert!(red.transverse_in_wedge_at(&x));
        let pointwise = induced_bivector_at(p.bivector(), &w, &x).unwrap();
        assert_eq!(pointwise, red.reduced.evaluate_at(&x).unwrap().to_matrix());
    }

    #[test]
    fn full_space_is_unchanged() {
        let p = r6();
        let w: Vec<_> = (0..6).map(|i| e(6, i)).collect();
        assert_eq!(cosymplectic_reduce(&p, &w).unwrap().reduced, p.bivector().clone());
    }

    #[test]
    fn non_cosymplectic_at_degenerate_point() {
        let p = r6();
        let w = vec![e(6, 0), e(6, 2)];
        let mut x = vec![int(0); 6];
        x[1] = int(1);
        let err = induced_bivector_at(p.bivector(), &w, &x).unwrap_err();
        assert!(matches!(err, Error::NotCosymplectic { .. }));
        assert!(cosymplectic_reduce(&p, &w).is_err());
    }

    #[test]
    fn float_path_matches_exact() {
        let p = r6();
        let w: Vec<Vec<f64>> = [0, 1, 2, 3]
            .iter()
            .map(|&i| (0..6).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let m = induced_bivector_at(p.bivector(), &w, &[0.5, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((m[(0, 1)] - 0.5).abs() < 1e-12);
        assert!(m[(4, 5)].abs() < 1e-12);
    }
}
