use super::structure::PoissonStructure;
use crate::algebra::{syzygies, PolyMatrix, PolyVec, RankProfile, Submodule};
use crate::scalar::Rational;
use crate::QForm;

/// Module of 1-forms `α` with `π♯α ≡ 0`, evaluated pointwise to give `h_x`.
///
/// Polynomial kernels stand in for smooth local extensions.
#[derive(Clone, Debug)]
pub struct GerminalIsotropy {
    kernel: Submodule<Rational>,
    profile: RankProfile<Rational>,
    chart: crate::poly::Chart,
}

impl GerminalIsotropy {
    pub fn kernel(&self) -> &Submodule<Rational> {
        &self.kernel
    }

    /// Generators as 1-forms.
    pub fn generators(&self) -> Vec<QForm> {
        self.kernel
            .generators()
            .iter()
            .map(|v| QForm::from_vector(&self.chart, v.clone()).expect("length n"))
            .collect()
    }

    /// Generator matrix, one column per generator.
    pub fn matrix(&self) -> PolyMatrix<Rational> {
        self.kernel.matrix()
    }

    pub fn generic_dim(&self) -> usize {
        self.profile.generic_rank
    }

    /// Ideal whose zero set is where `dim h_x` drops below its generic value.
    pub fn drop_ideal(&self) -> &[crate::QPolynomial] {
        &self.profile.drop_ideal
    }

    /// `dim h_x`, the rank of the evaluated generators.
    pub fn dim_at(&self, x: &[Rational]) -> usize {
        self.profile.rank_at(x)
    }

    /// Basis of `h_x`.
    pub fn basis_at(&self, x: &[Rational]) -> Vec<Vec<Rational>> {
        self.matrix().eval(x).transpose().row_space()
    }
}

impl PoissonStructure {
    /// Left kernel of `Π`; by skewness this is `{α : π♯α ≡ 0}`.
    pub fn germinal_isotropy(&self) -> GerminalIsotropy {
        let n = self.dim();
        let pi = self.matrix();
        let columns: Vec<PolyVec<Rational>> = (0..n).map(|j| pi.column(j)).collect();
        let kernel = syzygies(n, n, &columns);
        let profile = kernel.matrix().rank_profile();
        GerminalIsotropy {
            kernel,
            profile,
            chart: self.chart().clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::algebra::Submodule;
    use crate::poisson::PoissonStructure;
    use crate::poly::Chart;
    use crate::scalar::int;

    #[test]
    fn su2_isotropy() {
        let c = Chart::new(["x", "y", "z"]);
        let su2 = PoissonStructure::from_components(&c, &[(0, 1, "z"), (1, 2, "x"), (2, 0, "y")]).unwrap();
        let h = su2.germinal_isotropy();
        let radial = Submodule::new(3, 3, vec![["x", "y", "z"].iter().map(|s| c.parse(s).unwrap()).collect()]);
        assert!(h.kernel().same_as(&radial));
        assert_eq!(h.dim_at(&[int(0), int(0), int(0)]), 0);
        assert_eq!(h.dim_at(&[int(1), int(0), int(0)]), 1);
        assert_eq!(h.generic_dim(), 1);
    }

    #[test]
    fn heisenberg_and_symplectic_isotropy() {
        let c = Chart::new(["x", "y", "t"]);
        let h = PoissonStructure::from_components(&c, &[(0, 1, "t")]).unwrap().germinal_isotropy();
        let dt = Submodule::new(3, 3, vec![vec![c.parse("0").unwrap(), c.parse("0").unwrap(), c.parse("1").unwrap()]]);
        assert!(h.kernel().same_as(&dt));
        assert_eq!(h.dim_at(&[int(0), int(0), int(0)]), 1);

        let c = Chart::numbered("x", 4);
        let s = PoissonStructure::from_components(&c, &[(0, 1, "1"), (2, 3, "1")]).unwrap();
        let h = s.germinal_isotropy();
        assert!(h.kernel().is_zero());
        assert_eq!(h.generic_dim(), 0);
    }
}
