//! Curvature periods of a splitting of the anchor over a sphere in a leaf.
//!
//! The anchor is `♯ : T*M → TL`; with `Π` the bivector matrix, `♯α = Πᵀα`.
//! The default splitting sends a tangent vector to its minimal-norm preimage,
//! `σ(v) = Π(ΠᵀΠ + Σ κκᵀ)⁻¹v`, where `κ` runs over the kernel generators.
//! The curvature `R(X, Y) = σ[X, Y] − [σX, σY]` is computed on the Hamiltonian
//! fields `X_i = ♯dx_i`, which are tangent to every leaf, and transferred to
//! the sphere's coordinate fields by tensoriality.

use gauss_quad::GaussLegendre;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poisson::{LieAlgebra, PoissonStructure};
use crate::scalar::{Dual, Field};
use crate::FPolynomial;

/// `x(θ, φ) = c + r(sinθ cosφ a₁ + sinθ sinφ a₂ + cosθ a₃)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereMap {
    pub center: Vec<f64>,
    pub axes: [Vec<f64>; 3],
    pub radius: f64,
}

impl SphereMap {
    /// Round sphere about the origin of `R³`.
    pub fn round(radius: f64) -> Self {
        SphereMap {
            center: vec![0.0; 3],
            axes: [vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
            radius,
        }
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Point, `∂θ` and `∂φ`.
    pub fn chart(&self, theta: f64, phi: f64) -> [Vec<f64>; 3] {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let r = self.radius;
        let comb = |w: [f64; 3]| -> Vec<f64> {
            (0..self.dim())
                .map(|i| w[0] * self.axes[0][i] + w[1] * self.axes[1][i] + w[2] * self.axes[2][i])
                .collect()
        };
        let pos = comb([r * st * cp, r * st * sp, r * ct]);
        let point = pos.iter().zip(&self.center).map(|(p, c)| p + c).collect();
        [point, comb([r * ct * cp, r * ct * sp, -r * st]), comb([-r * st * sp, r * st * cp, 0.0])]
    }
}

/// Kernel-valued correction `σ'(v) = σ(v) + ⟨b(x), v⟩ κ₁(x)` with
/// `b(x) = b₀ + Bx`; it leaves `♯∘σ' = id` intact.
#[derive(Clone, Debug, PartialEq)]
pub struct Gauge {
    pub constant: Vec<f64>,
    pub linear: Vec<Vec<f64>>,
}

impl Gauge {
    /// Entries uniform in `[−magnitude, magnitude]`.
    pub fn random(n: usize, magnitude: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || rng.gen_range(-magnitude..=magnitude);
        let constant = (0..n).map(|_| draw()).collect();
        let linear = (0..n).map(|_| (0..n).map(|_| draw()).collect()).collect();
        Gauge { constant, linear }
    }

    fn at<S: Field + From<f64>>(&self, x: &[S]) -> Vec<S> {
        self.constant
            .iter()
            .zip(&self.linear)
            .map(|(c, row)| {
                row.iter()
                    .zip(x)
                    .fold(S::from(*c), |acc, (b, xi)| acc + S::from(*b) * xi.clone())
            })
            .collect()
    }
}

impl From<f64> for Dual {
    fn from(v: f64) -> Self {
        Dual::constant(v)
    }
}

/// Period of the splitting curvature over one sphere.
#[derive(Clone, Debug)]
pub struct MonodromyProblem {
    n: usize,
    pi: Vec<Vec<FPolynomial>>,
    kernel: Vec<Vec<FPolynomial>>,
    sphere: SphereMap,
    nodes: usize,
    gauge: Option<Gauge>,
}

/// Period on the fine mesh with the coarse-mesh value and their difference.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PeriodEstimate {
    pub value: f64,
    pub coarse: f64,
    pub error: f64,
    pub nodes: (usize, usize),
}

impl PeriodEstimate {
    pub fn relative_error(&self) -> f64 {
        self.error / self.value.abs().max(f64::MIN_POSITIVE)
    }
}

/// Relative tolerance on `♯σ(v) = v`.
pub const SPLITTING_TOL: f64 = 1e-12;

impl MonodromyProblem {
    /// `nodes` Gauss–Legendre nodes per direction on the coarse mesh; the fine
    /// mesh doubles them.
    pub fn new(pi: &PoissonStructure, sphere: SphereMap, nodes: usize) -> Result<Self> {
        let n = pi.dim();
        if sphere.dim() != n || sphere.axes.iter().any(|a| a.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: sphere.dim(),
            });
        }
        if nodes < 2 {
            return Err(Error::Input("a mesh needs at least two nodes per direction".into()));
        }
        let iso = pi.germinal_isotropy();
        if iso.generic_dim() != 1 {
            return Err(Error::IsotropyNotScalar(iso.generic_dim()));
        }
        let to_f = |p: &crate::QPolynomial| p.map_coefficients(crate::scalar::Field::to_f64);
        let matrix = pi.bivector().to_matrix();
        Ok(MonodromyProblem {
            n,
            pi: matrix.iter().map(|row| row.iter().map(to_f).collect()).collect(),
            kernel: iso
                .generators()
                .iter()
                .map(|k| k.to_vector().iter().map(to_f).collect())
                .collect(),
            sphere,
            nodes,
            gauge: None,
        })
    }

    /// Round sphere of the given radius in the dual of a three-dimensional Lie
    /// algebra whose generic isotropy is one-dimensional.
    pub fn linear_sphere(alg: &LieAlgebra, radius: f64, nodes: usize) -> Result<Self> {
        if alg.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                got: alg.dim(),
            });
        }
        let pi = PoissonStructure::new(alg.linear_bivector())?;
        Self::new(&pi, SphereMap::round(radius), nodes)
    }

    pub fn with_gauge(mut self, gauge: Gauge) -> Self {
        self.gauge = Some(gauge);
        self
    }

    pub fn sphere(&self) -> &SphereMap {
        &self.sphere
    }

    fn matrix_at<S: Field + From<f64>>(&self, x: &[S]) -> Matrix<S> {
        Matrix::from_fn(self.n, self.n, |i, j| eval(&self.pi[i][j], x))
    }

    fn kernel_at<S: Field + From<f64>>(&self, x: &[S]) -> Vec<Vec<S>> {
        self.kernel.iter().map(|k| k.iter().map(|p| eval(p, x)).collect()).collect()
    }

    /// `σ_x(v)` together with `Π(x)`; `None` where the kernel generators fail
    /// to span `ker Π`.
    fn split<S: Field + From<f64>>(&self, x: &[S], v: &[S], pi: &Matrix<S>) -> Option<Vec<S>> {
        let kernel = self.kernel_at(x);
        let mut m = pi.transpose().mul(pi);
        for k in &kernel {
            for i in 0..self.n {
                for j in 0..self.n {
                    m[(i, j)] = m[(i, j)].clone() + k[i].clone() * k[j].clone();
                }
            }
        }
        let u = m.solve(v)?;
        let mut beta = pi.mul_vec(&u);
        if let (Some(g), Some(k)) = (&self.gauge, kernel.first()) {
            let b = g.at(x);
            let s = b.iter().zip(v).fold(S::zero(), |acc, (b, v)| acc + b.clone() * v.clone());
            for (bi, ki) in beta.iter_mut().zip(k) {
                *bi = bi.clone() + s.clone() * ki.clone();
            }
        }
        Some(beta)
    }

    /// `⟨R(∂θ, ∂φ), n̂⟩` at one sphere point, with `n̂` the unit first kernel
    /// generator.
    fn integrand(&self, theta: f64, phi: f64) -> Result<f64> {
        let n = self.n;
        let [p, t_theta, t_phi] = self.sphere.chart(theta, phi);
        let pi = self.matrix_at(&p);
        let scale = t_theta.iter().chain(&t_phi).fold(1.0f64, |m, v| m.max(v.abs()));
        let mut coeff = Vec::new();
        for t in [&t_theta, &t_phi] {
            let c = self.split(&p, t, &pi).ok_or_else(|| Error::SingularLeaf(p.clone()))?;
            let back = pi.transpose().mul_vec(&c);
            let residual = back.iter().zip(t).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            if residual > SPLITTING_TOL * scale {
                return Err(Error::SplittingResidual(residual));
            }
            coeff.push(c);
        }

        // one forward-mode pass per coordinate direction
        let mut fields = vec![vec![0.0; n]; n];
        let mut d_fields = vec![vec![vec![0.0; n]; n]; n];
        let mut forms = vec![vec![0.0; n]; n];
        let mut d_forms = vec![vec![vec![0.0; n]; n]; n];
        let mut d_pairings = vec![vec![vec![0.0; n]; n]; n];
        for k in 0..n {
            let x: Vec<Dual> = (0..n).map(|j| Dual::new(p[j], if j == k { 1.0 } else { 0.0 })).collect();
            let pi_d = self.matrix_at(&x);
            let mut betas = Vec::with_capacity(n);
            for i in 0..n {
                let xi = pi_d.row(i);
                let beta = self.split(&x, &xi, &pi_d).ok_or_else(|| Error::SingularLeaf(p.clone()))?;
                for l in 0..n {
                    fields[i][l] = xi[l].value;
                    d_fields[i][k][l] = xi[l].deriv;
                    forms[i][l] = beta[l].value;
                    d_forms[i][k][l] = beta[l].deriv;
                }
                betas.push(beta);
            }
            for i in 0..n {
                for j in 0..n {
                    // π(β_i, β_j) = β_iᵀ Π β_j
                    let pij = betas[i].iter().zip(pi_d.mul_vec(&betas[j])).fold(Dual::constant(0.0), |a, (u, v)| a + *u * v);
                    d_pairings[i][j][k] = pij.deriv;
                }
            }
        }

        let sharp = |beta: &[f64]| pi.transpose().mul_vec(beta);
        let mut curvature = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                let w = coeff[0][i] * coeff[1][j];
                if w == 0.0 || i == j {
                    continue;
                }
                // [X_i, X_j]^l = Σ_k X_i^k ∂_k X_j^l − X_j^k ∂_k X_i^l
                let lie: Vec<f64> = (0..n)
                    .map(|l| (0..n).map(|k| fields[i][k] * d_fields[j][k][l] - fields[j][k] * d_fields[i][k][l]).sum())
                    .collect();
                let s_lie = self.split(&p, &lie, &pi).ok_or_else(|| Error::SingularLeaf(p.clone()))?;
                let (si, sj) = (sharp(&forms[i]), sharp(&forms[j]));
                for l in 0..n {
                    let mut koszul = d_pairings[i][j][l];
                    for k in 0..n {
                        koszul += si[k] * (d_forms[j][k][l] - d_forms[j][l][k]);
                        koszul -= sj[k] * (d_forms[i][k][l] - d_forms[i][l][k]);
                    }
                    curvature[l] += w * (s_lie[l] - koszul);
                }
            }
        }
        let kappa = &self.kernel_at(&p)[0];
        let norm = kappa.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < crate::scalar::FLOAT_CUTOFF {
            return Err(Error::SingularLeaf(p));
        }
        Ok(curvature.iter().zip(kappa).map(|(r, k)| r * k).sum::<f64>() / norm)
    }

    /// Tensor-product Gauss–Legendre quadrature over `θ ∈ [0, π]`, `φ ∈ [0, 2π]`.
    pub fn integrate(&self, nodes: usize) -> Result<f64> {
        let rule = GaussLegendre::new(nodes).map_err(|e| Error::Input(e.to_string()))?;
        let pairs = rule.as_node_weight_pairs();
        let (ht, hp) = (std::f64::consts::FRAC_PI_2, std::f64::consts::PI);
        let rows: Vec<Vec<f64>> = pairs
            .par_iter()
            .map(|&(u, wu)| {
                let theta = ht * (1.0 + u);
                pairs
                    .iter()
                    .map(|&(s, ws)| Ok(wu * ws * self.integrand(theta, hp * (1.0 + s))?))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<_>>()?;
        let flat: Vec<f64> = rows.into_iter().flatten().collect();
        Ok(ht * hp * pairwise_sum(&flat))
    }
}

fn eval<S: Field + From<f64>>(p: &FPolynomial, x: &[S]) -> S {
    p.terms().fold(S::zero(), |acc, (m, c)| {
        let t = m
            .exponents()
            .iter()
            .zip(x)
            .fold(S::from(*c), |t, (&e, xi)| if e > 0 { t * xi.pow(e) } else { t });
        acc + t
    })
}

/// Sum by balanced binary splitting; the order depends only on the length.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

/// Period on meshes of `nodes²` and `(2·nodes)²` points.
pub fn monodromy_period(problem: &MonodromyProblem) -> Result<PeriodEstimate> {
    let coarse = problem.integrate(problem.nodes)?;
    let value = problem.integrate(2 * problem.nodes)?;
    Ok(PeriodEstimate {
        value,
        coarse,
        error: (value - coarse).abs(),
        nodes: (problem.nodes, 2 * problem.nodes),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::library::su2;
    use crate::poly::Chart;

    #[test]
    fn flat_leaf_has_zero_period() {
        let c = Chart::new(["x", "y", "t"]);
        let pi = PoissonStructure::from_components(&c, &[(0, 1, "1")]).unwrap();
        // sphere flattened onto the leaf t = 1/2
        let sphere = SphereMap {
            center: vec![0.0, 0.0, 0.5],
            axes: [vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 0.0]],
            radius: 1.0,
        };
        let p = MonodromyProblem::new(&pi, sphere, 8).unwrap();
        assert!(monodromy_period(&p).unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn su2_period_converges_and_is_gauge_invariant() {
        let p = MonodromyProblem::linear_sphere(&su2(), 1.0, 16).unwrap();
        let base = monodromy_period(&p).unwrap();
        assert!(base.value.abs() > 1e-3, "{base:?}");
        assert!(base.relative_error() < 1e-6, "{base:?}");
        let gauged = monodromy_period(&p.clone().with_gauge(Gauge::random(3, 0.1, 7))).unwrap();
        assert!((gauged.value - base.value).abs() < 1e-6 * base.value.abs(), "{base:?} {gauged:?}");
    }

    #[test]
    fn sphere_off_the_leaf_is_rejected() {
        let c = Chart::new(["x", "y", "t"]);
        let pi = PoissonStructure::from_components(&c, &[(0, 1, "1")]).unwrap();
        let p = MonodromyProblem::new(&pi, SphereMap::round(1.0), 4).unwrap();
        assert!(matches!(monodromy_period(&p), Err(Error::SplittingResidual(_))));
    }

    #[test]
    fn pairwise_sum_is_order_fixed() {
        let v: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        assert_eq!(pairwise_sum(&v), pairwise_sum(&v.clone()));
        assert!((pairwise_sum(&v) - v.iter().sum::<f64>()).abs() < 1e-12);
    }
}
