use crate::algebra::{RankJump, Verdict, WitnessSearch};
use crate::error::{Error, Result};
use crate::poisson::{AlmostRegular, DistributionPresentation, PoissonStructure};
use crate::QPolynomial;

/// `f·π` for a Casimir `f`, with the distributions before and after.
#[derive(Clone, Debug)]
pub struct CasimirScaling {
    pub structure: PoissonStructure,
    pub base: Verdict<AlmostRegular, RankJump>,
    pub scaled: Verdict<AlmostRegular, RankJump>,
}

impl CasimirScaling {
    /// Both structures almost regular with equal `D` modules.
    pub fn same_distribution(&self) -> bool {
        match (&self.base, &self.scaled) {
            (Verdict::Yes(a), Verdict::Yes(b)) => a.distribution.module().same_as(b.distribution.module()),
            _ => false,
        }
    }
}

/// Scales by a Casimir; the Jacobi identity is rechecked and `D` recomputed.
/// A nonzero polynomial has dense support, so no support check is needed.
pub fn scale_by_casimir(pi: &PoissonStructure, f: &QPolynomial, search: &WitnessSearch) -> Result<CasimirScaling> {
    if f.is_zero() {
        return Err(Error::ZeroScaling);
    }
    if !pi.is_casimir(f) {
        return Err(Error::NotCasimir(pi.chart().render(f)));
    }
    let structure = pi.scaled(f)?;
    Ok(CasimirScaling {
        base: pi.almost_regular_decide(search),
        scaled: structure.almost_regular_decide(search),
        structure,
    })
}

/// `π1 ⊕ π2` on the concatenated chart.
pub fn direct_product(a: &PoissonStructure, b: &PoissonStructure) -> Result<PoissonStructure> {
    let chart = a.chart().product(b.chart());
    let pa = a.bivector().embed(&chart, 0);
    let pb = b.bivector().embed(&chart, a.dim());
    PoissonStructure::new(pa.add(&pb)?)
}

/// `D1 ⊕ D2` on the concatenated chart.
pub fn direct_sum(a: &DistributionPresentation, b: &DistributionPresentation) -> DistributionPresentation {
    let chart = a.chart().product(b.chart());
    let n = chart.dim();
    let (n1, n2) = (a.chart().dim(), b.chart().dim());
    let mut gens = Vec::new();
    for (m, offset, width) in [(a.module(), 0, n1), (b.module(), n1, n2)] {
        for g in m.generators() {
            let mut v: Vec<QPolynomial> = (0..n).map(|_| QPolynomial::zero(n)).collect();
            for (i, p) in g.iter().enumerate().take(width) {
                v[offset + i] = p.embed(n, offset);
            }
            gens.push(v);
        }
    }
    DistributionPresentation::declared(&chart, a.rank() + b.rank(), gens)
}
