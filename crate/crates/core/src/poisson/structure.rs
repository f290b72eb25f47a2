use crate::algebra::{PolyMatrix, Verdict};
use crate::error::{Error, Result};
use crate::poly::{Chart, Polynomial};
use crate::{QForm, QMultivector, QPolynomial};

/// First nonzero coefficient of `[π,π]`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiFailure {
    pub indices: Vec<usize>,
    pub coefficient: QPolynomial,
}

/// Decides `[π,π] = 0` exactly.
pub fn check_jacobi(pi: &QMultivector) -> Result<Verdict<(), JacobiFailure>> {
    if pi.grade() != 2 {
        return Err(Error::GradeMismatch {
            expected: 2,
            got: pi.grade(),
        });
    }
    let t = pi.schouten(pi)?;
    Ok(match t.components().into_iter().next() {
        None => Verdict::Yes(()),
        Some((indices, c)) => Verdict::No(JacobiFailure {
            indices,
            coefficient: c.clone(),
        }),
    })
}

/// `k` with `∧^kπ ≠ 0 = ∧^{k+1}π`, the top power and its coefficient ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct TopPower {
    pub k: usize,
    pub power: QMultivector,
    /// Coefficients of `∧^kπ`; the regular locus is where they do not all vanish.
    pub regular_ideal: Vec<QPolynomial>,
}

impl TopPower {
    /// The regular locus of a nonzero polynomial bivector on `R^n` is the
    /// complement of the zero set of a nonzero polynomial, hence dense.
    pub const DENSITY_RATIONALE: &'static str =
        "the singular locus is the zero set of a nonzero polynomial, which has empty interior";
}

fn compute_top_power(pi: &QMultivector) -> TopPower {
    let chart = pi.chart().clone();
    let mut k = 0;
    let mut power = QMultivector::function(&chart, Polynomial::one(chart.dim()));
    loop {
        let next = power.wedge(pi).expect("same chart");
        if next.is_zero() {
            break;
        }
        power = next;
        k += 1;
    }
    let regular_ideal = power.coefficients().cloned().collect();
    TopPower { k, power, regular_ideal }
}

/// A bivector with cached rank data. Constructed through [`PoissonStructure::new`]
/// the Jacobi identity is verified; [`PoissonStructure::unchecked`] skips it
/// and records that it did.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonStructure {
    pi: QMultivector,
    top: TopPower,
    jacobi_verified: bool,
}

impl PoissonStructure {
    pub fn new(pi: QMultivector) -> Result<Self> {
        match check_jacobi(&pi)? {
            Verdict::Yes(()) => Ok(Self::build(pi, true)),
            Verdict::No(f) => Err(Error::NotPoisson {
                index: format!("{:?}", f.indices),
                coefficient: pi.chart().render(&f.coefficient),
            }),
            Verdict::Inconclusive(_) => unreachable!("the Jacobi check is exact"),
        }
    }

    pub fn unchecked(pi: QMultivector) -> Result<Self> {
        if pi.grade() != 2 {
            return Err(Error::GradeMismatch {
                expected: 2,
                got: pi.grade(),
            });
        }
        Ok(Self::build(pi, false))
    }

    fn build(pi: QMultivector, jacobi_verified: bool) -> Self {
        let top = compute_top_power(&pi);
        PoissonStructure {
            pi,
            top,
            jacobi_verified,
        }
    }

    /// Parses `(i, j, coefficient)` triples on a chart; `i < j` is not required.
    pub fn from_components(chart: &Chart, comps: &[(usize, usize, &str)]) -> Result<Self> {
        Self::new(bivector(chart, comps)?)
    }

    pub fn chart(&self) -> &Chart {
        self.pi.chart()
    }

    pub fn dim(&self) -> usize {
        self.pi.dim()
    }

    pub fn bivector(&self) -> &QMultivector {
        &self.pi
    }

    pub fn jacobi_verified(&self) -> bool {
        self.jacobi_verified
    }

    pub fn is_zero(&self) -> bool {
        self.pi.is_zero()
    }

    /// Half the maximal rank; zero for the zero bivector.
    pub fn k(&self) -> usize {
        self.top.k
    }

    /// Top-power data; the zero bivector has none.
    pub fn top_power(&self) -> Result<&TopPower> {
        if self.is_zero() {
            Err(Error::ZeroBivector)
        } else {
            Ok(&self.top)
        }
    }

    pub fn regular_ideal(&self) -> &[QPolynomial] {
        &self.top.regular_ideal
    }

    /// Skew matrix `Π` with `Π_ij = π(dx_i, dx_j)`.
    pub fn matrix(&self) -> PolyMatrix<crate::Rational> {
        let m = self.pi.to_matrix();
        PolyMatrix::from_rows(self.dim(), &m)
    }

    /// `π♯α = π(α, ·)`.
    pub fn sharp(&self, alpha: &QForm) -> Result<QMultivector> {
        self.pi.sharp(alpha)
    }

    /// Hamiltonian vector field `π♯df`.
    pub fn hamiltonian(&self, f: &QPolynomial) -> QMultivector {
        self.pi
            .sharp(&QForm::differential(self.chart(), f))
            .expect("same chart")
    }

    /// `{f, g} = π(df, dg)`.
    pub fn bracket(&self, f: &QPolynomial, g: &QPolynomial) -> QPolynomial {
        self.hamiltonian(f).apply(g)
    }

    /// `f·π`, rechecked for the Jacobi identity.
    pub fn scaled(&self, f: &QPolynomial) -> Result<Self> {
        Self::new(self.pi.scale(f))
    }
}

/// Bivector from `(i, j, coefficient)` triples.
pub fn bivector(chart: &Chart, comps: &[(usize, usize, &str)]) -> Result<QMultivector> {
    let n = chart.dim();
    let mut pi = QMultivector::zero(chart, 2);
    for &(i, j, src) in comps {
        if i >= n || j >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: i.max(j) + 1,
            });
        }
        if i == j {
            return Err(Error::Input(format!("diagonal bivector component ({i}, {j})")));
        }
        pi.add_component(&[i, j], chart.parse(src)?);
    }
    Ok(pi)
}

/// Cotangent bracket `[α,β] = L_{π♯α}β − L_{π♯β}α − d π(α,β)`.
pub fn koszul_bracket(pi: &QMultivector, alpha: &QForm, beta: &QForm) -> Result<QForm> {
    let a = pi.sharp(alpha)?;
    let b = pi.sharp(beta)?;
    let pab = a.pair(beta)?;
    beta.lie_derivative(&a)?
        .sub(&alpha.lie_derivative(&b)?)?
        .sub(&QForm::differential(pi.chart(), &pab))
}
