use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::scalar::{CoerceFrom, Field, Rational};
use crate::QPolynomial;

/// Absolute tolerance for composability of float elements.
pub const COMPOSABLE_TOL: f64 = 1e-12;

/// An arrow `(ξ, v, t)` of `V* ⋉ V × R`.
#[derive(Clone, Debug, PartialEq)]
pub struct Arrow<S> {
    pub xi: Vec<S>,
    pub v: Vec<S>,
    pub t: S,
}

/// An arrow `(w, v, t)` of the `t`-parameterized pair groupoid, from `v` to `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairArrow<S> {
    pub target: Vec<S>,
    pub source: Vec<S>,
    pub t: S,
}

impl<S: Field> PairArrow<S> {
    pub fn multiply(&self, other: &PairArrow<S>) -> Result<PairArrow<S>> {
        if !close(&self.source, &other.target) || !self.t.approx_eq(&other.t, COMPOSABLE_TOL) {
            return Err(Error::NotComposable);
        }
        Ok(PairArrow {
            target: self.target.clone(),
            source: other.source.clone(),
            t: self.t.clone(),
        })
    }
}

fn close<S: Field>(a: &[S], b: &[S]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.approx_eq(y, COMPOSABLE_TOL))
}

/// Action groupoid of `(V*, +)` on `V × R`, where `ξ` translates `(v, t)` by
/// `(f(t)π♯ξ, 0)`, with leafwise symplectic forms `Ω_{f(t)π}`.
#[derive(Clone, Debug)]
pub struct LinearGroupoidModel {
    pi: Matrix<Rational>,
    f: QPolynomial,
}

/// Matrix of `Ω_{f(t)π}` on `V* × V` in coordinates `(ξ, v)`.
#[derive(Clone, Debug)]
pub struct OmegaForm<S> {
    pub matrix: Matrix<S>,
    pub determinant: S,
    /// Constant coefficients make `dΩ = 0` automatic.
    pub closed: bool,
    pub nondegenerate: bool,
}

impl LinearGroupoidModel {
    /// `pi` must be a skew invertible matrix and `f` a polynomial in one variable.
    pub fn new(pi: Matrix<Rational>, f: QPolynomial) -> Result<Self> {
        let d = pi.rows();
        if pi.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: pi.cols(),
            });
        }
        if pi.add(&pi.transpose()) != Matrix::zeros(d, d) {
            return Err(Error::Input("bivector matrix is not skew".into()));
        }
        if pi.determinant().is_zero() {
            return Err(Error::Input("bivector must have full rank".into()));
        }
        if f.nvars() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: f.nvars(),
            });
        }
        Ok(LinearGroupoidModel { pi, f })
    }

    /// Standard `Σ ∂_{2i}∧∂_{2i+1}` on `R^d`.
    pub fn standard(d: usize, f: QPolynomial) -> Result<Self> {
        if !d.is_multiple_of(2) {
            return Err(Error::Input(format!("symplectic dimension must be even, got {d}")));
        }
        let pi = Matrix::from_fn(d, d, |i, j| {
            if i % 2 == 0 && j == i + 1 {
                Rational::one()
            } else if j % 2 == 0 && i == j + 1 {
                -Rational::one()
            } else {
                Rational::zero()
            }
        });
        Self::new(pi, f)
    }

    pub fn dim(&self) -> usize {
        self.pi.rows()
    }

    pub fn pi(&self) -> &Matrix<Rational> {
        &self.pi
    }

    pub fn f(&self) -> &QPolynomial {
        &self.f
    }

    pub fn f_at<S: Field + CoerceFrom<Rational>>(&self, t: &S) -> S {
        self.f.eval(std::slice::from_ref(t))
    }

    fn pi_as<S: Field + CoerceFrom<Rational>>(&self) -> Matrix<S> {
        self.pi.map(|c| S::coerce(c))
    }

    /// `f(t)π♯ξ = f(t)Πᵀξ`.
    pub fn anchor<S: Field + CoerceFrom<Rational>>(&self, xi: &[S], t: &S) -> Vec<S> {
        let ft = self.f_at(t);
        self.pi_as::<S>()
            .transpose()
            .mul_vec(xi)
            .into_iter()
            .map(|c| c * ft.clone())
            .collect()
    }

    pub fn source<S: Field + CoerceFrom<Rational>>(&self, g: &Arrow<S>) -> (Vec<S>, S) {
        (g.v.clone(), g.t.clone())
    }

    pub fn target<S: Field + CoerceFrom<Rational>>(&self, g: &Arrow<S>) -> (Vec<S>, S) {
        let a = self.anchor(&g.xi, &g.t);
        (g.v.iter().zip(a).map(|(v, a)| v.clone() + a).collect(), g.t.clone())
    }

    pub fn unit<S: Field + CoerceFrom<Rational>>(&self, v: Vec<S>, t: S) -> Arrow<S> {
        Arrow {
            xi: vec![S::zero(); self.dim()],
            v,
            t,
        }
    }

    pub fn inverse<S: Field + CoerceFrom<Rational>>(&self, g: &Arrow<S>) -> Arrow<S> {
        let (w, t) = self.target(g);
        Arrow {
            xi: g.xi.iter().map(|x| -x.clone()).collect(),
            v: w,
            t,
        }
    }

    /// `g·h = (ξ_g + ξ_h, v_h, t)`, defined when `s(g) = t(h)`.
    pub fn multiply<S: Field + CoerceFrom<Rational>>(&self, g: &Arrow<S>, h: &Arrow<S>) -> Result<Arrow<S>> {
        let (w, th) = self.target(h);
        if !close(&g.v, &w) || !g.t.approx_eq(&th, COMPOSABLE_TOL) {
            return Err(Error::NotComposable);
        }
        Ok(Arrow {
            xi: g.xi.iter().zip(&h.xi).map(|(a, b)| a.clone() + b.clone()).collect(),
            v: h.v.clone(),
            t: h.t.clone(),
        })
    }

    /// `Φ(ξ, v, t) = (v + f(t)π♯ξ, v, t)`.
    pub fn to_pair<S: Field + CoerceFrom<Rational>>(&self, g: &Arrow<S>) -> PairArrow<S> {
        let (w, t) = self.target(g);
        PairArrow {
            target: w,
            source: g.v.clone(),
            t,
        }
    }

    /// Inverse of `Φ` on a slice with `f(t) ≠ 0`.
    pub fn from_pair<S: Field + CoerceFrom<Rational>>(&self, p: &PairArrow<S>) -> Option<Arrow<S>> {
        let ft = self.f_at(&p.t);
        let a = self.pi_as::<S>().transpose().scale(&ft);
        let diff: Vec<S> = p.target.iter().zip(&p.source).map(|(w, v)| w.clone() - v.clone()).collect();
        let xi = a.solve(&diff)?;
        Some(Arrow {
            xi,
            v: p.source.clone(),
            t: p.t.clone(),
        })
    }

    /// `Ω((ξ,v),(ξ',v')) = ⟨v,ξ'⟩ − ⟨v',ξ⟩ + f(t)π(ξ,ξ')`, i.e. the block
    /// matrix `[[f(t)Π, −I], [I, 0]]`.
    pub fn omega_form<S: Field + CoerceFrom<Rational>>(&self, t: &S) -> OmegaForm<S> {
        let d = self.dim();
        let ft = self.f_at(t);
        let pi = self.pi_as::<S>();
        let matrix = Matrix::from_fn(2 * d, 2 * d, |i, j| match (i < d, j < d) {
            (true, true) => ft.clone() * pi[(i, j)].clone(),
            (true, false) if j - d == i => -S::one(),
            (false, true) if i - d == j => S::one(),
            _ => S::zero(),
        });
        let determinant = matrix.determinant();
        OmegaForm {
            nondegenerate: !determinant.is_negligible(),
            matrix,
            determinant,
            closed: true,
        }
    }

    /// Leafwise Poisson bivector `P = −Ω⁻¹`, so that `♭_Ω = −(♯_P)⁻¹`.
    pub fn leaf_bivector<S: Field + CoerceFrom<Rational>>(&self, t: &S) -> Matrix<S> {
        let omega = self.omega_form(t).matrix;
        let inv = omega.inverse().expect("Ω is nondegenerate for every t");
        inv.scale(&-S::one())
    }

    /// Jacobian of `Φ` in coordinates `(ξ, v, t) ↦ (w, v, t)`.
    pub fn pair_jacobian<S: Field + CoerceFrom<Rational>>(&self, g: &Arrow<S>) -> Matrix<S> {
        let d = self.dim();
        let ft = self.f_at(&g.t);
        let dft = self.f.derivative(0).eval(std::slice::from_ref(&g.t));
        let pt = self.pi_as::<S>().transpose();
        let dt_col = pt.mul_vec(&g.xi);
        Matrix::from_fn(2 * d + 1, 2 * d + 1, |i, j| {
            if i < d {
                if j < d {
                    ft.clone() * pt[(i, j)].clone()
                } else if j < 2 * d {
                    if j - d == i {
                        S::one()
                    } else {
                        S::zero()
                    }
                } else {
                    dft.clone() * dt_col[i].clone()
                }
            } else if i == j {
                S::one()
            } else {
                S::zero()
            }
        })
    }

    /// Largest entry of `Φ_*P − (f(t)π ⊕ −f(t)π)` on the slice of `g`, where
    /// the target bivector `−f(t)π ⊕ f(t)π` is negated by an anti-Poisson map.
    pub fn anti_poisson_residual(&self, g: &Arrow<f64>) -> f64 {
        let d = self.dim();
        let full = self.pair_jacobian(g);
        let j = Matrix::from_fn(2 * d, 2 * d, |a, b| full[(a, b)]);
        let pushed = j.mul(&self.leaf_bivector(&g.t)).mul(&j.transpose());
        let ft = self.f_at(&g.t);
        let pi = self.pi_as::<f64>();
        let expected = Matrix::from_fn(2 * d, 2 * d, |a, b| match (a < d, b < d) {
            (true, true) => ft * pi[(a, b)],
            (false, false) => -ft * pi[(a - d, b - d)],
            _ => 0.0,
        });
        pushed.sub(&expected).max_abs()
    }
}

/// Exact check of the groupoid axioms on rational samples.
#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct AxiomReport {
    pub samples: usize,
    pub unit_failures: usize,
    pub inverse_failures: usize,
    pub associativity_failures: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.unit_failures + self.inverse_failures + self.associativity_failures == 0
    }
}

/// Checks on `Φ` into the pair groupoid.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct MorphismReport {
    pub samples: usize,
    pub morphism_failures: usize,
    /// Rational samples on slices with `f(t) ≠ 0` where `Φ⁻¹∘Φ` or `Φ∘Φ⁻¹`
    /// failed to be the identity.
    pub bijection_failures: usize,
    pub anti_poisson_samples: usize,
    pub anti_poisson_max_residual: f64,
    /// `(t, rank dΦ)` at each rational zero of `f`, out of `2d + 1`.
    pub degenerate_slices: Vec<(String, usize)>,
}

impl MorphismReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.morphism_failures == 0 && self.bijection_failures == 0 && self.anti_poisson_max_residual < tol
    }
}

pub(crate) fn random_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into())
}

fn random_vec(rng: &mut impl Rng, d: usize) -> Vec<Rational> {
    (0..d).map(|_| random_rational(rng)).collect()
}

impl LinearGroupoidModel {
    fn random_arrow(&self, rng: &mut impl Rng, t: Option<Rational>) -> Arrow<Rational> {
        let d = self.dim();
        Arrow {
            xi: random_vec(rng, d),
            v: random_vec(rng, d),
            t: t.unwrap_or_else(|| random_rational(rng)),
        }
    }

    /// Random `h` and a `g` composable with it.
    fn random_composable(&self, rng: &mut impl Rng, h: &Arrow<Rational>) -> Arrow<Rational> {
        let (w, t) = self.target(h);
        Arrow {
            xi: random_vec(rng, self.dim()),
            v: w,
            t,
        }
    }

    pub fn check_axioms(&self, samples: usize, seed: u64) -> AxiomReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = AxiomReport {
            samples,
            ..Default::default()
        };
        for _ in 0..samples {
            let h = self.random_arrow(&mut rng, None);
            let g = self.random_composable(&mut rng, &h);
            let k = self.random_composable(&mut rng, &g);

            let (tv, tt) = self.target(&h);
            let left = self.multiply(&self.unit(tv, tt), &h);
            let right = self.multiply(&h, &self.unit(h.v.clone(), h.t.clone()));
            if left.as_ref() != Ok(&h) || right.as_ref() != Ok(&h) {
                report.unit_failures += 1;
            }

            let inv = self.inverse(&h);
            let a = self.multiply(&inv, &h);
            let b = self.multiply(&h, &inv);
            let unit_src = self.unit(h.v.clone(), h.t.clone());
            let (tv, tt) = self.target(&h);
            if a != Ok(unit_src) || b != Ok(self.unit(tv, tt)) {
                report.inverse_failures += 1;
            }

            let kg_h = self.multiply(&k, &g).and_then(|kg| self.multiply(&kg, &h));
            let k_gh = self.multiply(&g, &h).and_then(|gh| self.multiply(&k, &gh));
            if kg_h.is_err() || kg_h != k_gh {
                report.associativity_failures += 1;
            }
        }
        report
    }

    /// Verifies that `Φ` is a groupoid morphism (exact), a bijection on slices
    /// with `f(t) ≠ 0` (exact), and anti-Poisson on float samples with
    /// `t ∈ t_range`; reports the rank of `dΦ` at rational zeros of `f`.
    pub fn pair_morphism_check(&self, samples: usize, float_samples: usize, t_range: (f64, f64), seed: u64) -> MorphismReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut morphism_failures = 0;
        let mut bijection_failures = 0;
        for _ in 0..samples {
            let h = self.random_arrow(&mut rng, None);
            let g = self.random_composable(&mut rng, &h);
            let lhs = self.multiply(&g, &h).map(|gh| self.to_pair(&gh));
            let rhs = self.to_pair(&g).multiply(&self.to_pair(&h));
            if lhs.is_err() || lhs != rhs {
                morphism_failures += 1;
            }
            if !self.f_at(&h.t).is_zero() {
                let p = self.to_pair(&h);
                let back = self.from_pair(&p);
                let q = PairArrow {
                    target: random_vec(&mut rng, self.dim()),
                    source: random_vec(&mut rng, self.dim()),
                    t: h.t.clone(),
                };
                let round = self.from_pair(&q).map(|a| self.to_pair(&a));
                if back.as_ref() != Some(&h) || round.as_ref() != Some(&q) {
                    bijection_failures += 1;
                }
            }
        }

        let mut max_residual: f64 = 0.0;
        let mut anti_poisson_samples = 0;
        while anti_poisson_samples < float_samples {
            let t = rng.gen_range(t_range.0..=t_range.1);
            if self.f_at(&t).abs() < 1e-12 {
                continue;
            }
            let d = self.dim();
            let g = Arrow {
                xi: (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect(),
                v: (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect(),
                t,
            };
            max_residual = max_residual.max(self.anti_poisson_residual(&g));
            anti_poisson_samples += 1;
        }

        let degenerate_slices = rational_roots(&self.f)
            .into_iter()
            .map(|t| {
                let g = self.random_arrow(&mut rng, Some(t.clone()));
                (t.to_string(), self.pair_jacobian(&g).rank())
            })
            .collect();

        MorphismReport {
            samples,
            morphism_failures,
            bijection_failures,
            anti_poisson_samples,
            anti_poisson_max_residual: max_residual,
            degenerate_slices,
        }
    }
}

/// Rational roots of a univariate polynomial, ascending. Candidates come from
/// the rational root test, so coefficients are assumed of moderate size.
pub fn rational_roots(f: &QPolynomial) -> Vec<Rational> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, ToPrimitive};

    assert_eq!(f.nvars(), 1);
    if f.is_zero() {
        return Vec::new();
    }
    let deg = f.total_degree().unwrap_or(0) as usize;
    let den = f.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut coeffs: Vec<BigInt> = (0..=deg)
        .map(|e| {
            let m = crate::poly::Monomial::from_exponents(vec![e as u32]);
            (f.coefficient(&m) * Rational::from_integer(den.clone())).to_integer()
        })
        .collect();
    let mut roots = Vec::new();
    let low = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Rational::zero());
        coeffs.drain(..low);
    }
    let divisors = |n: &BigInt| -> Vec<i64> {
        let n = n.abs().to_i64().unwrap_or(0);
        (1..=n.min(1_000_000)).filter(|d| n % d == 0).collect()
    };
    let (Some(a0), Some(an)) = (coeffs.first(), coeffs.last()) else {
        return roots;
    };
    let g = Polynomial::from_terms(
        1,
        coeffs.iter().enumerate().map(|(e, c)| {
            (
                crate::poly::Monomial::from_exponents(vec![e as u32]),
                Rational::from_integer(c.clone()),
            )
        }),
    );
    for p in divisors(a0) {
        for q in divisors(an) {
            for s in [-1i64, 1] {
                let r = Rational::new((s * p).into(), q.into());
                if g.eval(std::slice::from_ref(&r)).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Chart;
    use crate::scalar::{int, rat};

    fn model(f: &str) -> LinearGroupoidModel {
        LinearGroupoidModel::standard(2, Chart::new(["t"]).parse(f).unwrap()).unwrap()
    }

    #[test]
    fn unit_and_inverse_laws() {
        let m = model("t");
        let g = Arrow {
            xi: vec![int(1), int(2)],
            v: vec![int(3), int(-1)],
            t: rat(1, 2),
        };
        // π♯ξ = Πᵀξ = (−2, 1)
        assert_eq!(m.target(&g).0, vec![int(2), rat(-1, 2)]);
        let inv = m.inverse(&g);
        assert_eq!(inv.xi, vec![int(-1), int(-2)]);
        assert_eq!(m.multiply(&g, &inv).unwrap(), m.unit(inv.v.clone(), g.t.clone()));
        assert_eq!(m.multiply(&m.unit(g.v.clone(), g.t.clone()), &g), Err(Error::NotComposable));
    }

    #[test]
    fn omega_matches_pairing() {
        let m = model("t");
        let om = m.omega_form(&int(1));
        // Ω(e_a, e_b) from ⟨v,ξ'⟩ − ⟨v',ξ⟩ + π(ξ,ξ') on basis vectors
        let pairing = |a: usize, b: usize| -> i64 {
            let (xa, va) = if a < 2 { (Some(a), None) } else { (None, Some(a - 2)) };
            let (xb, vb) = if b < 2 { (Some(b), None) } else { (None, Some(b - 2)) };
            let mut s = 0;
            if let (Some(i), Some(j)) = (va, xb) {
                s += (i == j) as i64;
            }
            if let (Some(i), Some(j)) = (vb, xa) {
                s -= (i == j) as i64;
            }
            if let (Some(0), Some(1)) = (xa, xb) {
                s += 1;
            }
            if let (Some(1), Some(0)) = (xa, xb) {
                s -= 1;
            }
            s
        };
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(om.matrix[(a, b)], int(pairing(a, b)), "entry ({a},{b})");
            }
        }
        assert!(om.nondegenerate && om.closed);
        assert_eq!(om.matrix.transpose(), om.matrix.scale(&int(-1)));
        for t in [int(0), int(1), int(-1), rat(1, 2), rat(-1, 2)] {
            assert_eq!(m.omega_form(&t).determinant, int(1));
        }
    }

    #[test]
    fn axioms_and_morphism_on_samples() {
        let m = model("t");
        assert!(m.check_axioms(200, 3).passed());
        let r = m.pair_morphism_check(200, 50, (0.1, 2.0), 4);
        assert!(r.passed(1e-9), "{r:?}");
        assert_eq!(r.degenerate_slices, vec![("0".to_string(), 3)]);
    }

    #[test]
    fn constant_one_is_bijective_everywhere() {
        let m = model("1");
        let r = m.pair_morphism_check(100, 10, (-2.0, 2.0), 1);
        assert!(r.passed(1e-9));
        assert!(r.degenerate_slices.is_empty());
    }

    #[test]
    fn roots_of_univariate_polynomials() {
        let c = Chart::new(["t"]);
        let f = c.parse("2*t^3 - t^2 - 2*t + 1").unwrap();
        assert_eq!(rational_roots(&f), vec![int(-1), rat(1, 2), int(1)]);
        assert_eq!(rational_roots(&c.parse("t^2 + 1").unwrap()), Vec::<Rational>::new());
        assert_eq!(rational_roots(&c.parse("t^2 - 1/3*t").unwrap()), vec![int(0), rat(1, 3)]);
    }

    #[test]
    fn rejects_degenerate_bivector() {
        let f = Chart::new(["t"]).parse("t").unwrap();
        assert!(LinearGroupoidModel::new(Matrix::zeros(2, 2), f.clone()).is_err());
        assert!(LinearGroupoidModel::standard(3, f).is_err());
    }
}
