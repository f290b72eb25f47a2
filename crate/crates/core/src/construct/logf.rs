use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{
    poly_gcd, variety_emptiness, EmptinessCertificate, Ground, NonEmptiness, Submodule, Unresolved, Verdict,
    WitnessSearch,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poisson::{DistributionPresentation, PoissonStructure};
use crate::poly::{Chart, Polynomial};
use crate::scalar::Rational;
use crate::{QForm, QMultivector, QPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LogFVerdict {
    Regular,
    LogSymplectic,
    LogFSymplectic,
    AlmostRegularNotLogF,
    NotAlmostRegular,
    Inconclusive,
}

/// Factorization `∧^kπ = g·s` with the singular loci `Z = {g = 0}` and
/// `Z_sing = {x ∈ Z : D_x ⊂ T_xZ}`.
#[derive(Clone, Debug)]
pub struct LogFClassification {
    pub verdict: LogFVerdict,
    pub k: usize,
    pub g: Option<QPolynomial>,
    pub s: Option<QMultivector>,
    /// Reduced Gröbner basis of `(g)`.
    pub z_ideal: Vec<QPolynomial>,
    /// Reduced Gröbner basis of `(g, ⟨dg, V_1⟩, …)` over generators `V_i` of `D`.
    pub z_sing_ideal: Vec<QPolynomial>,
    /// Real emptiness of `(g, ∂g/∂x_1, …)`.
    pub transversality: Option<Verdict<EmptinessCertificate, NonEmptiness>>,
    pub z_sing_empty: Option<Verdict<EmptinessCertificate, NonEmptiness>>,
    pub distribution: Option<DistributionPresentation>,
    pub unresolved: Option<Unresolved>,
}

impl LogFClassification {
    fn undecided(verdict: LogFVerdict, k: usize, unresolved: Option<Unresolved>) -> Self {
        LogFClassification {
            verdict,
            k,
            g: None,
            s: None,
            z_ideal: Vec::new(),
            z_sing_ideal: Vec::new(),
            transversality: None,
            z_sing_empty: None,
            distribution: None,
            unresolved,
        }
    }
}

fn reduced_ideal(n: usize, gens: Vec<QPolynomial>) -> Vec<QPolynomial> {
    Submodule::ideal(n, gens)
        .groebner_basis()
        .iter()
        .map(|v| v[0].clone())
        .collect()
}

/// Rational content of all coefficients of a tensor, signed so that dividing
/// by it leaves coprime integers with a positive leading coefficient.
fn tensor_content(t: &QMultivector) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for p in t.coefficients() {
        for (_, c) in p.terms() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
    }
    let content = Rational::new(num, den);
    let lead = t
        .coefficients()
        .next()
        .and_then(|p| p.leading_coefficient())
        .is_some_and(|c| c.is_negative());
    if lead {
        -content
    } else {
        content
    }
}

/// Classifies an almost regular structure as regular, log symplectic or
/// log-f symplectic.
pub fn logf_classify(pi: &PoissonStructure, search: &WitnessSearch) -> LogFClassification {
    let n = pi.dim();
    let k = pi.k();
    let ar = match pi.almost_regular_decide(search) {
        Verdict::Yes(ar) => ar,
        Verdict::No(_) => return LogFClassification::undecided(LogFVerdict::NotAlmostRegular, k, None),
        Verdict::Inconclusive(u) => return LogFClassification::undecided(LogFVerdict::Inconclusive, k, Some(u)),
    };
    let d = ar.distribution;

    let top = match pi.top_power() {
        Ok(t) => t.power.clone(),
        Err(_) => QMultivector::function(pi.chart(), Polynomial::one(n)),
    };
    let mut g = top
        .coefficients()
        .fold(QPolynomial::zero(n), |acc, c| poly_gcd(&acc, c));
    let mut s = top.clone();
    let mut comps = QMultivector::zero(pi.chart(), top.grade());
    for (idx, c) in top.components() {
        comps.add_component(&idx, c.div_exact(&g).expect("gcd divides every coefficient"));
    }
    if !comps.is_zero() {
        let content = tensor_content(&comps);
        s = comps.scale(&QPolynomial::constant(n, Rational::one() / content.clone()));
        g = g.scale(&content);
    }

    let z_ideal = reduced_ideal(n, vec![g.clone()]);
    let dg = QForm::differential(pi.chart(), &g);
    let mut z_sing = vec![g.clone()];
    for v in d.generators() {
        z_sing.push(v.pair(&dg).expect("same chart"));
    }
    let z_sing_ideal = reduced_ideal(n, z_sing);
    let z_sing_empty = variety_emptiness(n, &z_sing_ideal, Ground::Real, search);

    let mut out = LogFClassification {
        verdict: LogFVerdict::Inconclusive,
        k,
        g: Some(g.clone()),
        s: Some(s.clone()),
        z_ideal,
        z_sing_ideal,
        transversality: None,
        z_sing_empty: Some(z_sing_empty),
        distribution: Some(d),
        unresolved: None,
    };

    let s_coeffs: Vec<QPolynomial> = s.coefficients().cloned().collect();
    match variety_emptiness(n, &s_coeffs, Ground::Real, search) {
        Verdict::Yes(_) => {}
        Verdict::No(_) => {
            out.unresolved = Some(Unresolved::new("the cofactor s of g vanishes somewhere", s_coeffs));
            return out;
        }
        Verdict::Inconclusive(u) => {
            out.unresolved = Some(u);
            return out;
        }
    }

    match variety_emptiness(n, &[g.clone()], Ground::Real, search) {
        Verdict::Yes(_) => {
            out.verdict = LogFVerdict::Regular;
            return out;
        }
        Verdict::No(_) => {}
        Verdict::Inconclusive(u) => {
            out.unresolved = Some(u);
            return out;
        }
    }

    let mut grad = vec![g.clone()];
    grad.extend((0..n).map(|i| g.derivative(i)));
    let transversality = variety_emptiness(n, &grad, Ground::Real, search);
    out.verdict = match &transversality {
        Verdict::Yes(_) if 2 * k == n => LogFVerdict::LogSymplectic,
        Verdict::Yes(_) => LogFVerdict::LogFSymplectic,
        Verdict::No(_) => LogFVerdict::AlmostRegularNotLogF,
        Verdict::Inconclusive(u) => {
            out.unresolved = Some(u.clone());
            LogFVerdict::Inconclusive
        }
    };
    out.transversality = Some(transversality);
    out
}

/// A leaf of a constant distribution with the restricted structure.
#[derive(Clone, Debug)]
pub struct LeafRestriction {
    pub structure: PoissonStructure,
    /// Ambient coordinates reused as leaf coordinates.
    pub leaf_coordinates: Vec<usize>,
    /// Leaf point with zero leaf coordinates.
    pub base_point: Vec<Rational>,
    /// Directions of `D`, normalized to the identity on the leaf coordinates.
    pub directions: Vec<Vec<Rational>>,
    pub classification: LogFClassification,
}

impl LeafRestriction {
    /// Ambient point with leaf coordinates `y`.
    pub fn embed_point(&self, y: &[Rational]) -> Vec<Rational> {
        let mut x = self.base_point.clone();
        for (ya, d) in y.iter().zip(&self.directions) {
            for (xi, di) in x.iter_mut().zip(d) {
                *xi = xi.clone() + ya.clone() * di.clone();
            }
        }
        x
    }
}

/// Restricts `π` to the leaf of a constant-coefficient `D` through the point
/// whose coordinates in `fixed` are given and whose other coordinates vanish.
/// The remaining coordinates serve as leaf coordinates.
pub fn restrict_to_leaf(
    pi: &PoissonStructure,
    d: &DistributionPresentation,
    fixed: &[(usize, Rational)],
    search: &WitnessSearch,
) -> Result<LeafRestriction> {
    if !d.is_constant() {
        return Err(Error::NonConstantDistribution);
    }
    let n = pi.dim();
    let zero_point = vec![Rational::zero(); n];
    let rows: Vec<Vec<Rational>> = d
        .module()
        .generators()
        .iter()
        .map(|v| v.iter().map(|p| p.eval(&zero_point)).collect())
        .collect();
    let basis = if rows.is_empty() {
        Vec::new()
    } else {
        Matrix::from_rows(rows).row_space()
    };
    if basis.len() != d.rank() {
        return Err(Error::Input(format!(
            "distribution spans {} directions, expected {}",
            basis.len(),
            d.rank()
        )));
    }
    let mut base_point = vec![Rational::zero(); n];
    let mut is_fixed = vec![false; n];
    for (i, v) in fixed {
        if *i >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: i + 1,
            });
        }
        base_point[*i] = v.clone();
        is_fixed[*i] = true;
    }
    let leaf: Vec<usize> = (0..n).filter(|&i| !is_fixed[i]).collect();
    let r = basis.len();
    let square = Matrix::from_fn(r, leaf.len(), |a, b| basis[a][leaf[b]].clone());
    let inv = (leaf.len() == r)
        .then(|| if r == 0 { Some(Matrix::identity(0)) } else { square.inverse() })
        .flatten()
        .ok_or_else(|| {
            Error::SliceNotTransverse(format!(
                "{} free coordinates do not parametrize a {}-dimensional distribution",
                leaf.len(),
                r
            ))
        })?;
    // rows of inv · basis restrict to the identity on the leaf coordinates
    let directions: Vec<Vec<Rational>> = (0..r)
        .map(|a| {
            (0..n)
                .map(|i| (0..r).fold(Rational::zero(), |acc, b| acc + inv[(a, b)].clone() * basis[b][i].clone()))
                .collect()
        })
        .collect();

    let subs: Vec<QPolynomial> = (0..n)
        .map(|i| {
            let mut p = QPolynomial::constant(r, base_point[i].clone());
            for (a, dir) in directions.iter().enumerate() {
                p = &p + &Polynomial::var(r, a).scale(&dir[i]);
            }
            p
        })
        .collect();
    let chart = Chart::new(leaf.iter().map(|&i| pi.chart().names()[i].clone()));
    let mut restricted = QMultivector::zero(&chart, 2);
    for a in 0..r {
        for b in a + 1..r {
            let c = pi.bivector().component(&[leaf[a], leaf[b]]).compose(&subs);
            restricted.add_component(&[a, b], c);
        }
    }
    let structure = PoissonStructure::new(restricted)?;
    let classification = logf_classify(&structure, search);
    Ok(LeafRestriction {
        structure,
        leaf_coordinates: leaf,
        base_point,
        directions,
        classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn r3(f: &str) -> PoissonStructure {
        let c = Chart::new(["x1", "x2", "x3"]);
        PoissonStructure::from_components(&c, &[(0, 1, f)]).unwrap()
    }

    fn ideal(c: &Chart, src: &[&str]) -> Submodule<Rational> {
        Submodule::ideal(c.dim(), src.iter().map(|s| c.parse(s).unwrap()))
    }

    #[test]
    fn three_singular_loci() {
        let s = WitnessSearch::default();

        let a = logf_classify(&r3("x1"), &s);
        assert_eq!(a.verdict, LogFVerdict::LogFSymplectic);
        assert!(a.z_sing_empty.unwrap().is_yes());

        let p = r3("x3");
        let b = logf_classify(&p, &s);
        assert_eq!(b.verdict, LogFVerdict::LogFSymplectic);
        assert_eq!(b.z_sing_ideal, b.z_ideal);

        let p = r3("x3 - x1^2");
        let c = logf_classify(&p, &s);
        assert_eq!(c.verdict, LogFVerdict::LogFSymplectic);
        let got = Submodule::ideal(3, c.z_sing_ideal.clone());
        assert!(got.same_as(&ideal(p.chart(), &["x1", "x3"])));
        assert!(got.contains(&[c.g.unwrap()]));
    }

    #[test]
    fn content_normalization() {
        let p = r3("-2*x3");
        let c = logf_classify(&p, &WitnessSearch::default());
        assert_eq!(c.g.unwrap(), p.chart().parse("-2*x3").unwrap());
        assert_eq!(c.s.unwrap(), QMultivector::basis(p.chart(), &[0, 1]));
    }

    #[test]
    fn regular_and_non_almost_regular() {
        let s = WitnessSearch::default();
        let c = Chart::new(["x", "y"]);
        let sym = PoissonStructure::from_components(&c, &[(0, 1, "1 + x^2")]).unwrap();
        assert_eq!(logf_classify(&sym, &s).verdict, LogFVerdict::Regular);
        let c = Chart::new(["x", "y", "z"]);
        let su2 = PoissonStructure::from_components(&c, &[(0, 1, "z"), (1, 2, "x"), (2, 0, "y")]).unwrap();
        assert_eq!(logf_classify(&su2, &s).verdict, LogFVerdict::NotAlmostRegular);
        let c = Chart::new(["x", "y"]);
        let sq = PoissonStructure::from_components(&c, &[(0, 1, "x^2")]).unwrap();
        assert_eq!(logf_classify(&sq, &s).verdict, LogFVerdict::AlmostRegularNotLogF);
    }

    #[test]
    fn leaves_of_parabola_structure() {
        let s = WitnessSearch::default();
        let p = r3("x3 - x1^2");
        let d = p.almost_regular_decide(&s).yes().unwrap().distribution;
        let one = restrict_to_leaf(&p, &d, &[(2, int(1))], &s).unwrap();
        assert_eq!(one.structure.bivector().component(&[0, 1]), one.structure.chart().parse("1 - x1^2").unwrap());
        assert_eq!(one.classification.verdict, LogFVerdict::LogSymplectic);

        let zero = restrict_to_leaf(&p, &d, &[(2, int(0))], &s).unwrap();
        assert_eq!(zero.structure.bivector().component(&[0, 1]), zero.structure.chart().parse("-x1^2").unwrap());
        assert_eq!(zero.classification.verdict, LogFVerdict::AlmostRegularNotLogF);
        let witness = zero.classification.transversality.unwrap().no().unwrap();
        assert_eq!(witness, NonEmptiness::Point(vec![int(0), int(-3)]));

        assert!(matches!(
            restrict_to_leaf(&p, &d, &[(0, int(1))], &s),
            Err(Error::SliceNotTransverse(_))
        ));
    }

    #[test]
    fn symplectic_single_leaf() {
        let c = Chart::new(["x", "y"]);
        let p = PoissonStructure::from_components(&c, &[(0, 1, "1")]).unwrap();
        let s = WitnessSearch::default();
        let d = p.almost_regular_decide(&s).yes().unwrap().distribution;
        let leaf = restrict_to_leaf(&p, &d, &[], &s).unwrap();
        assert_eq!(leaf.structure.bivector(), p.bivector());
        assert_eq!(leaf.classification.verdict, LogFVerdict::Regular);
    }
}
