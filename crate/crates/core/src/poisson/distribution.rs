use super::isotropy::GerminalIsotropy;
use super::structure::PoissonStructure;
use crate::algebra::{
    constant_rank, syzygies, EmptinessCertificate, PolyVec, RankJump, Submodule, Unresolved, Verdict, WitnessSearch,
};
use crate::error::Error;
use crate::poly::Chart;
use crate::scalar::{rat, Rational};
use crate::{QMultivector, QPolynomial};

/// How a distribution presentation was obtained.
#[derive(Clone, Debug, PartialEq)]
pub enum DistributionSource {
    /// Annihilator of the isotropy kernel, cross-checked against the
    /// saturation of the Hamiltonian module by the regular-locus ideal.
    Constructed {
        saturation_exponent: usize,
        constructions_agree: bool,
    },
    /// Zero distribution of the zero bivector.
    Zero,
    /// Supplied by the caller.
    Declared,
}

/// Polynomial generators of a distribution of constant rank.
#[derive(Clone, Debug)]
pub struct DistributionPresentation {
    chart: Chart,
    rank: usize,
    module: Submodule<Rational>,
    source: DistributionSource,
}

impl DistributionPresentation {
    pub fn declared(chart: &Chart, rank: usize, generators: Vec<PolyVec<Rational>>) -> Self {
        DistributionPresentation {
            chart: chart.clone(),
            rank,
            module: Submodule::new(chart.dim(), chart.dim(), generators),
            source: DistributionSource::Declared,
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// Expected pointwise rank.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn module(&self) -> &Submodule<Rational> {
        &self.module
    }

    pub fn source(&self) -> &DistributionSource {
        &self.source
    }

    pub fn generators(&self) -> Vec<QMultivector> {
        self.module
            .generators()
            .iter()
            .map(|v| QMultivector::from_vector(&self.chart, v.clone()).expect("length n"))
            .collect()
    }

    /// `true` when every generator has constant coefficients.
    pub fn is_constant(&self) -> bool {
        self.module
            .generators()
            .iter()
            .all(|v| v.iter().all(|p| p.is_constant() || p.is_zero()))
    }
}

/// Payload of a positive almost-regularity decision.
#[derive(Clone, Debug)]
pub struct AlmostRegular {
    pub distribution: DistributionPresentation,
    pub isotropy: GerminalIsotropy,
    pub certificate: EmptinessCertificate,
}

/// Bracket of two generators that leaves the module.
#[derive(Clone, Debug, PartialEq)]
pub struct NotInvolutive {
    pub pair: (usize, usize),
    pub bracket: QMultivector,
}

/// A column of `Π` outside the distribution module.
#[derive(Clone, Debug, PartialEq)]
pub struct NotTangent {
    pub column: usize,
    pub normal_form: PolyVec<Rational>,
}

/// Outcome of the three distribution checks.
#[derive(Clone, Debug)]
pub struct DistributionCheck {
    pub involutive: Verdict<(), NotInvolutive>,
    /// On `Yes`, the membership coefficients of each column of `Π`.
    pub poisson_leaves: Verdict<Vec<Vec<QPolynomial>>, NotTangent>,
    pub constant_rank: Verdict<EmptinessCertificate, RankJump>,
}

impl DistributionCheck {
    pub fn all_yes(&self) -> bool {
        self.involutive.is_yes() && self.poisson_leaves.is_yes() && self.constant_rank.is_yes()
    }
}

impl PoissonStructure {
    /// Decides whether `dim h_x` is constant. On `Yes` the distribution `D`
    /// is built as the annihilator of the isotropy kernel and compared with
    /// the saturation of the column module of `Π` by the regular-locus ideal.
    pub fn almost_regular_decide(&self, search: &WitnessSearch) -> Verdict<AlmostRegular, RankJump> {
        let n = self.dim();
        let isotropy = self.germinal_isotropy();
        if self.is_zero() {
            return Verdict::Yes(AlmostRegular {
                distribution: DistributionPresentation {
                    chart: self.chart().clone(),
                    rank: 0,
                    module: Submodule::zero(n, n),
                    source: DistributionSource::Zero,
                },
                isotropy,
                certificate: EmptinessCertificate::UnitIdeal,
            });
        }
        let certificate = match constant_rank(n, &isotropy.matrix().rank_profile(), search) {
            Verdict::Yes(c) => c,
            Verdict::No(jump) => return Verdict::No(jump),
            Verdict::Inconclusive(u) => return Verdict::Inconclusive(u),
        };

        let annihilator = annihilator(n, isotropy.kernel().generators()).standard();
        let hamiltonian = Submodule::from_columns(&self.matrix());
        let regular = Submodule::ideal(n, self.regular_ideal().iter().cloned());
        let saturation = match hamiltonian.saturate(&regular) {
            Ok(s) => s,
            Err(Error::SaturationOverflow(cap)) => {
                return Verdict::Inconclusive(Unresolved::new(
                    format!("saturation did not stabilize within {cap} steps"),
                    self.regular_ideal().to_vec(),
                ))
            }
            Err(e) => unreachable!("saturation only overflows: {e}"),
        };
        let agree = saturation.module.same_as(&annihilator);
        Verdict::Yes(AlmostRegular {
            distribution: DistributionPresentation {
                chart: self.chart().clone(),
                rank: 2 * self.k(),
                module: annihilator,
                source: DistributionSource::Constructed {
                    saturation_exponent: saturation.exponent,
                    constructions_agree: agree,
                },
            },
            isotropy,
            certificate,
        })
    }

    /// Checks involutivity and Hamiltonian tangency of `D` together with its constant rank.
    pub fn verify_distribution(&self, d: &DistributionPresentation, search: &WitnessSearch) -> DistributionCheck {
        let n = self.dim();
        let gens = d.generators();

        let mut involutive = Verdict::Yes(());
        'outer: for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let b = gens[i].schouten(&gens[j]).expect("same chart");
                if !d.module.contains(&b.to_vector()) {
                    involutive = Verdict::No(NotInvolutive { pair: (i, j), bracket: b });
                    break 'outer;
                }
            }
        }

        let pi = self.matrix();
        let mut certs = Vec::with_capacity(n);
        let mut poisson_leaves = None;
        for j in 0..n {
            match d.module.membership(&pi.column(j)) {
                Verdict::Yes(c) => certs.push(c),
                Verdict::No(nf) => {
                    poisson_leaves = Some(Verdict::No(NotTangent { column: j, normal_form: nf }));
                    break;
                }
                Verdict::Inconclusive(u) => {
                    poisson_leaves = Some(Verdict::Inconclusive(u));
                    break;
                }
            }
        }
        let poisson_leaves = poisson_leaves.unwrap_or(Verdict::Yes(certs));

        let profile = d.module.matrix().rank_profile();
        let constant_rank = if profile.generic_rank == d.rank {
            constant_rank(n, &profile, search)
        } else {
            let point = sample_point(n);
            Verdict::No(RankJump {
                rank: profile.rank_at(&point),
                point,
                generic_rank: d.rank,
            })
        };

        DistributionCheck {
            involutive,
            poisson_leaves,
            constant_rank,
        }
    }
}

/// `{V : ⟨α, V⟩ = 0 for every generator α}`.
pub fn annihilator(n: usize, forms: &[PolyVec<Rational>]) -> Submodule<Rational> {
    if forms.is_empty() {
        return Submodule::free(n, n);
    }
    let g = forms.len();
    let columns: Vec<PolyVec<Rational>> = (0..n).map(|j| (0..g).map(|i| forms[i][j].clone()).collect()).collect();
    syzygies(n, g, &columns)
}

/// Generic-looking rational point used when the generic rank is already wrong.
fn sample_point(n: usize) -> Vec<Rational> {
    (0..n).map(|i| rat(2 * i as i64 + 3, 7)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{unit_vector, Verdict};
    use crate::poly::Chart;

    fn su2() -> PoissonStructure {
        let c = Chart::new(["x", "y", "z"]);
        PoissonStructure::from_components(&c, &[(0, 1, "z"), (1, 2, "x"), (2, 0, "y")]).unwrap()
    }

    #[test]
    fn heisenberg_is_almost_regular() {
        let c = Chart::new(["x", "y", "t"]);
        let h = PoissonStructure::from_components(&c, &[(0, 1, "t")]).unwrap();
        let s = WitnessSearch::default();
        let ar = h.almost_regular_decide(&s).yes().unwrap();
        let expect = Submodule::new(3, 3, vec![unit_vector(3, 3, 0), unit_vector(3, 3, 1)]);
        assert!(ar.distribution.module().same_as(&expect));
        assert_eq!(ar.distribution.rank(), 2);
        assert_eq!(
            ar.distribution.source(),
            &DistributionSource::Constructed {
                saturation_exponent: 1,
                constructions_agree: true
            }
        );
        assert!(h.verify_distribution(&ar.distribution, &s).all_yes());
    }

    #[test]
    fn su2_is_not_almost_regular() {
        let j = su2().almost_regular_decide(&WitnessSearch::default()).no().unwrap();
        assert_eq!(j.point, vec![Rational::from_integer(0.into()); 3]);
        assert_eq!((j.rank, j.generic_rank), (0, 1));
    }

    #[test]
    fn log_symplectic_plane() {
        let c = Chart::new(["x", "y"]);
        let p = PoissonStructure::from_components(&c, &[(0, 1, "x")]).unwrap();
        let ar = p.almost_regular_decide(&WitnessSearch::default()).yes().unwrap();
        assert!(ar.distribution.module().is_whole());
    }

    #[test]
    fn non_involutive_declared_distribution() {
        let c = Chart::new(["x", "y", "z"]);
        let one = c.parse("1").unwrap();
        let zero = c.parse("0").unwrap();
        let d = DistributionPresentation::declared(
            &c,
            2,
            vec![
                vec![one.clone(), zero.clone(), zero.clone()],
                vec![zero.clone(), one, c.parse("x").unwrap()],
            ],
        );
        let pi = PoissonStructure::new(QMultivector::zero(&c, 2)).unwrap();
        let check = pi.verify_distribution(&d, &WitnessSearch::default());
        let bad = check.involutive.no().unwrap();
        assert_eq!(bad.bracket, QMultivector::basis(&c, &[2]));
        assert!(matches!(check.constant_rank, Verdict::Yes(_)));
    }

    #[test]
    fn full_tangent_module_passes_for_su2() {
        let p = su2();
        let d = DistributionPresentation::declared(p.chart(), 3, (0..3).map(|i| unit_vector(3, 3, i)).collect());
        assert!(p.verify_distribution(&d, &WitnessSearch::default()).all_yes());
    }
}
