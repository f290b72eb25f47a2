use num_traits::Zero;

use super::structure::PoissonStructure;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Chart, Polynomial};
use crate::scalar::Rational;
use crate::QMultivector;

/// Lie algebra given by structure constants `[e_i, e_j] = Σ_k c^k_ij e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Rational>,
}

impl LieAlgebra {
    /// Builds from `(i, j, k, c^k_ij)` entries; the `(j, i)` entries follow by
    /// antisymmetry. Rejects contradictory entries and failures of the Jacobi
    /// identity.
    pub fn new(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut c = vec![Rational::zero(); dim * dim * dim];
        let mut set = vec![false; dim * dim * dim];
        for (i, j, k, v) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::StructureConstants(format!("index ({i}, {j}, {k}) out of range")));
            }
            if i == j {
                if !v.is_zero() {
                    return Err(Error::StructureConstants(format!("[e{i}, e{i}] must vanish")));
                }
                continue;
            }
            let (a, b) = (idx(dim, i, j, k), idx(dim, j, i, k));
            for (slot, val) in [(a, v.clone()), (b, -v.clone())] {
                if set[slot] && c[slot] != val {
                    return Err(Error::StructureConstants(format!(
                        "contradictory entries for [e{i}, e{j}] along e{k}"
                    )));
                }
                c[slot] = val;
                set[slot] = true;
            }
        }
        let alg = LieAlgebra { dim, c };
        if let Some((a, b, d, k)) = alg.jacobi_defect() {
            return Err(Error::StructureConstants(format!(
                "Jacobi identity fails for (e{a}, e{b}, e{d}) along e{k}"
            )));
        }
        Ok(alg)
    }

    /// Dense array `c[(i·n + j)·n + k] = c^k_ij`, not validated.
    pub fn from_dense_unchecked(dim: usize, c: Vec<Rational>) -> Self {
        assert_eq!(c.len(), dim * dim * dim);
        LieAlgebra { dim, c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[idx(self.dim, i, j, k)]
    }

    /// First `(a, b, c, k)` where the cyclic sum of `[[e_a, e_b], e_c]` has a
    /// nonzero `e_k` component.
    pub fn jacobi_defect(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.dim;
        for a in 0..n {
            for b in a + 1..n {
                for d in b + 1..n {
                    for k in 0..n {
                        let mut s = Rational::zero();
                        for m in 0..n {
                            s = s + self.constant(a, b, m).clone() * self.constant(m, d, k).clone()
                                + self.constant(b, d, m).clone() * self.constant(m, a, k).clone()
                                + self.constant(d, a, m).clone() * self.constant(m, b, k).clone();
                        }
                        if !s.is_zero() {
                            return Some((a, b, d, k));
                        }
                    }
                }
            }
        }
        None
    }

    /// Basis of the center `{z : [z, e_j] = 0 for all j}`.
    pub fn center(&self) -> Vec<Vec<Rational>> {
        let n = self.dim;
        let ad = Matrix::from_fn(n * n, n, |row, i| {
            let (j, k) = (row / n, row % n);
            self.constant(i, j, k).clone()
        });
        ad.nullspace()
    }

    /// `π = Σ_{i<j} (Σ_k c^k_ij x_k) ∂_i∧∂_j` on `g*` with coordinates `x1..xn`.
    pub fn linear_bivector(&self) -> QMultivector {
        let n = self.dim;
        let chart = Chart::numbered("x", n);
        let mut pi = QMultivector::zero(&chart, 2);
        for i in 0..n {
            for j in i + 1..n {
                let coeff = (0..n).fold(Polynomial::zero(n), |acc, k| {
                    &acc + &Polynomial::var(n, k).scale(self.constant(i, j, k))
                });
                pi.add_component(&[i, j], coeff);
            }
        }
        pi
    }

    /// Linear Poisson structure with the isotropy at the origin compared to
    /// the center.
    pub fn linear_poisson(&self) -> Result<LinearPoisson> {
        let structure = PoissonStructure::new(self.linear_bivector())?;
        let center = self.center();
        let origin = vec![Rational::zero(); self.dim];
        let h0 = structure.germinal_isotropy().basis_at(&origin);
        let joint: Vec<Vec<Rational>> = h0.iter().chain(center.iter()).cloned().collect();
        let joint_rank = if joint.is_empty() {
            0
        } else {
            Matrix::from_rows(joint).rank()
        };
        let h0_equals_center = h0.len() == center.len() && joint_rank == center.len();
        Ok(LinearPoisson {
            structure,
            center,
            h0,
            h0_equals_center,
        })
    }
}

fn idx(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}

/// Linear Poisson structure on `g*` and the comparison `h_0 = Z(g)`.
#[derive(Clone, Debug)]
pub struct LinearPoisson {
    pub structure: PoissonStructure,
    pub center: Vec<Vec<Rational>>,
    pub h0: Vec<Vec<Rational>>,
    pub h0_equals_center: bool,
}

/// Structure constants of the five reference algebras used across the test
/// suites: abelian, Heisenberg, `aff(1) ⊕ R`, `su(2)`, `sl(2,R)`.
pub mod library {
    use super::LieAlgebra;
    use crate::scalar::int;

    pub fn abelian(n: usize) -> LieAlgebra {
        LieAlgebra::new(n, &[]).expect("abelian")
    }

    pub fn heisenberg() -> LieAlgebra {
        LieAlgebra::new(3, &[(0, 1, 2, int(1))]).expect("heis3")
    }

    pub fn affine_plus_line() -> LieAlgebra {
        LieAlgebra::new(3, &[(0, 1, 0, int(1))]).expect("aff(1)+R")
    }

    pub fn su2() -> LieAlgebra {
        LieAlgebra::new(3, &[(0, 1, 2, int(1)), (1, 2, 0, int(1)), (2, 0, 1, int(1))]).expect("su(2)")
    }

    /// Basis `h, e, f` with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
    pub fn sl2() -> LieAlgebra {
        LieAlgebra::new(3, &[(0, 1, 1, int(2)), (0, 2, 2, int(-2)), (1, 2, 0, int(1))]).expect("sl(2)")
    }
}
