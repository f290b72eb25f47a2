use super::structure::PoissonStructure;
use crate::algebra::{
    constant_rank, EmptinessCertificate, PolyVec, RankJump, RankProfile, Submodule, Verdict, WitnessSearch,
};
use crate::error::Result;
use crate::poly::Chart;
use crate::scalar::Rational;
use crate::{QMultivector, QPolynomial};

/// Submodule of vector fields given by generators `V_1..V_m`.
///
/// The fiber `F/I_xF` has dimension `m − rank Syz(x)`.
#[derive(Clone, Debug)]
pub struct FoliationModule {
    chart: Chart,
    module: Submodule<Rational>,
    syzygy_profile: RankProfile<Rational>,
}

/// A generator of one module outside another.
#[derive(Clone, Debug, PartialEq)]
pub struct NotIncluded {
    pub generator: usize,
    pub normal_form: PolyVec<Rational>,
}

impl FoliationModule {
    pub fn new(chart: &Chart, generators: &[QMultivector]) -> Result<Self> {
        let mut vecs = Vec::with_capacity(generators.len());
        for g in generators {
            chart.check(g.chart())?;
            if g.grade() != 1 {
                return Err(crate::Error::GradeMismatch {
                    expected: 1,
                    got: g.grade(),
                });
            }
            vecs.push(g.to_vector());
        }
        let module = Submodule::new(chart.dim(), chart.dim(), vecs);
        let syzygy_profile = module.syzygies().matrix().rank_profile();
        Ok(FoliationModule {
            chart: chart.clone(),
            module,
            syzygy_profile,
        })
    }

    /// The Hamiltonian fields `π♯dx_i` of a bivector.
    pub fn hamiltonian(pi: &PoissonStructure) -> Self {
        let n = pi.dim();
        let gens: Vec<QMultivector> = (0..n).map(|i| pi.hamiltonian(&pi.chart().var(i))).collect();
        Self::new(pi.chart(), &gens).expect("same chart")
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn module(&self) -> &Submodule<Rational> {
        &self.module
    }

    pub fn num_generators(&self) -> usize {
        self.module.generators().len()
    }

    /// `dim F/I_xF`.
    pub fn fiber_dim_at(&self, x: &[Rational]) -> usize {
        self.num_generators() - self.syzygy_profile.rank_at(x)
    }

    /// Fiber dimension away from the locus where relations drop rank.
    pub fn generic_fiber_dim(&self) -> usize {
        self.num_generators() - self.syzygy_profile.generic_rank
    }

    /// Projective iff the fiber dimension is constant.
    pub fn projective(&self, search: &WitnessSearch) -> Verdict<EmptinessCertificate, RankJump> {
        constant_rank(self.chart.dim(), &self.syzygy_profile, search)
    }

    /// Decides `self ⊆ other`; `Yes` carries one coefficient vector per generator.
    pub fn included_in(&self, other: &FoliationModule) -> Verdict<Vec<Vec<QPolynomial>>, NotIncluded> {
        let mut certs = Vec::new();
        for (i, g) in self.module.generators().iter().enumerate() {
            match other.module.membership(g) {
                Verdict::Yes(c) => certs.push(c),
                Verdict::No(nf) => {
                    return Verdict::No(NotIncluded {
                        generator: i,
                        normal_form: nf,
                    })
                }
                Verdict::Inconclusive(u) => return Verdict::Inconclusive(u),
            }
        }
        Verdict::Yes(certs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn field(c: &Chart, comps: &[&str]) -> QMultivector {
        QMultivector::from_vector(c, comps.iter().map(|s| c.parse(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn gl2_fields() {
        let c = Chart::new(["x", "y"]);
        let f = FoliationModule::new(
            &c,
            &[field(&c, &["x", "0"]), field(&c, &["y", "0"]), field(&c, &["0", "x"]), field(&c, &["0", "y"])],
        )
        .unwrap();
        assert_eq!(f.fiber_dim_at(&[int(0), int(0)]), 4);
        assert_eq!(f.fiber_dim_at(&[int(1), int(0)]), 2);
        assert_eq!(f.generic_fiber_dim(), 2);
        assert!(f.projective(&WitnessSearch::default()).is_no());
    }

    #[test]
    fn inclusion_of_coordinate_fields() {
        let c = Chart::new(["x", "y"]);
        let a = FoliationModule::new(&c, &[field(&c, &["1", "0"])]).unwrap();
        let b = FoliationModule::new(&c, &[field(&c, &["1", "0"]), field(&c, &["0", "1"])]).unwrap();
        assert!(a.included_in(&b).is_yes());
        let y = FoliationModule::new(&c, &[field(&c, &["y", "0"])]).unwrap();
        let x = FoliationModule::new(&c, &[field(&c, &["0", "x"])]).unwrap();
        assert!(x.included_in(&y).is_no());
    }
}
