//! Graded antisymmetric tensors with polynomial coefficients.
//!
//! A component is indexed by a bitmask of coordinate indices; the mask stands
//! for the strictly increasing tuple of its set bits. Contravariant tensors
//! (multivector fields) and covariant ones (differential forms) share the
//! storage and differ in the operations they expose.
//!
//! The Schouten bracket is computed in the odd-variable picture where `∂_i`
//! is an odd coordinate `θ_i`:
//!
//! `[P,Q] = Σ_i (∂P/∂θ_i)(∂Q/∂x_i) − (−1)^{(p−1)(q−1)} (∂Q/∂θ_i)(∂P/∂x_i)`
//!
//! with right derivatives in `θ`. On vector fields this is the Lie bracket,
//! `[X, f] = X(f)`, and for a bivector `[π,π] = 0` is the Jacobi identity.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use super::{Chart, Polynomial};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{CoerceFrom, Field};

pub trait TensorKind: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    const SYMBOL: &'static str;
}

#[derive(Clone, Debug, PartialEq)]
pub struct Contravariant;

#[derive(Clone, Debug, PartialEq)]
pub struct Covariant;

impl TensorKind for Contravariant {
    const SYMBOL: &'static str = "d_";
}

impl TensorKind for Covariant {
    const SYMBOL: &'static str = "d";
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<F, K> {
    chart: Chart,
    grade: usize,
    components: BTreeMap<u32, Polynomial<F>>,
    _kind: PhantomData<K>,
}

pub type MultivectorField<F> = Tensor<F, Contravariant>;
pub type DifferentialForm<F> = Tensor<F, Covariant>;

pub(crate) fn indices_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Sign of `e_a ∧ e_b` relative to `e_{a∪b}`, or `None` if they overlap.
fn wedge_sign(a: u32, b: u32) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(inversions % 2 == 1)
}

/// Permutation sign sorting an arbitrary index list; `None` on repeats.
fn sort_sign(indices: &[usize]) -> Option<(u32, bool)> {
    let mut mask = 0u32;
    let mut neg = false;
    for &i in indices {
        if mask & (1 << i) != 0 {
            return None;
        }
        neg ^= (mask >> (i + 1)).count_ones() % 2 == 1;
        mask |= 1 << i;
    }
    Some((mask, neg))
}

impl<F: Field, K: TensorKind> Tensor<F, K> {
    pub fn zero(chart: &Chart, grade: usize) -> Self {
        Tensor {
            chart: chart.clone(),
            grade,
            components: BTreeMap::new(),
            _kind: PhantomData,
        }
    }

    /// Grade-0 tensor holding a function.
    pub fn function(chart: &Chart, f: Polynomial<F>) -> Self {
        let mut t = Self::zero(chart, 0);
        t.add_component(&[], f);
        t
    }

    /// Grade-1 tensor from its `n` components.
    pub fn from_vector(chart: &Chart, comps: Vec<Polynomial<F>>) -> Result<Self> {
        if comps.len() != chart.dim() {
            return Err(Error::DimensionMismatch {
                expected: chart.dim(),
                got: comps.len(),
            });
        }
        let mut t = Self::zero(chart, 1);
        for (i, c) in comps.into_iter().enumerate() {
            t.add_component(&[i], c);
        }
        Ok(t)
    }

    /// The basis element `e_{i1} ∧ ... ∧ e_{ip}` (indices in any order).
    pub fn basis(chart: &Chart, indices: &[usize]) -> Self {
        let mut t = Self::zero(chart, indices.len());
        t.add_component(indices, Polynomial::one(chart.dim()));
        t
    }

    /// Grade-2 tensor from a skew matrix (upper triangle is read).
    pub fn from_skew_matrix(chart: &Chart, m: &[Vec<Polynomial<F>>]) -> Self {
        let mut t = Self::zero(chart, 2);
        for (i, row) in m.iter().enumerate() {
            for (j, c) in row.iter().enumerate().skip(i + 1) {
                t.add_component(&[i, j], c.clone());
            }
        }
        t
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Nonzero components as `(sorted indices, coefficient)`, in lexicographic
    /// order of index tuples.
    pub fn components(&self) -> Vec<(Vec<usize>, &Polynomial<F>)> {
        let mut v: Vec<_> = self
            .components
            .iter()
            .map(|(m, p)| (indices_of(*m), p))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &Polynomial<F>> {
        self.components.values()
    }

    /// Coefficient of `e_{indices}`; unsorted indices pick up the permutation sign.
    pub fn component(&self, indices: &[usize]) -> Polynomial<F> {
        match sort_sign(indices) {
            Some((mask, neg)) => {
                let c = self
                    .components
                    .get(&mask)
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(self.dim()));
                if neg {
                    -c
                } else {
                    c
                }
            }
            None => Polynomial::zero(self.dim()),
        }
    }

    /// Adds `c · e_{indices}`.
    pub fn add_component(&mut self, indices: &[usize], c: Polynomial<F>) {
        assert_eq!(indices.len(), self.grade, "index tuple length must equal grade");
        assert!(indices.iter().all(|&i| i < self.dim()), "index out of range");
        if let Some((mask, neg)) = sort_sign(indices) {
            let c = if neg { -c } else { c };
            self.add_mask(mask, &c);
        }
    }

    fn add_mask(&mut self, mask: u32, c: &Polynomial<F>) {
        if c.is_zero() {
            return;
        }
        let n = self.dim();
        let entry = self
            .components
            .entry(mask)
            .or_insert_with(|| Polynomial::zero(n));
        *entry = &*entry + c;
        if entry.is_zero() {
            self.components.remove(&mask);
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        self.chart.check(&other.chart)?;
        if self.grade != other.grade {
            return Err(Error::GradeMismatch {
                expected: self.grade,
                got: other.grade,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.components {
            out.add_mask(*m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c)
    }

    /// Multiplies every component by the function `f`.
    pub fn scale(&self, f: &Polynomial<F>) -> Self {
        self.map(|c| c * f)
    }

    fn map(&self, f: impl Fn(&Polynomial<F>) -> Polynomial<F>) -> Self {
        let mut out = Self::zero(&self.chart, self.grade);
        for (m, c) in &self.components {
            out.add_mask(*m, &f(c));
        }
        out
    }

    /// Exterior product; graded commutative. Grades beyond the chart
    /// dimension give the zero tensor of that grade.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.chart.check(&other.chart)?;
        let mut out = Self::zero(&self.chart, self.grade + other.grade);
        if self.grade + other.grade > self.dim() {
            return Ok(out);
        }
        for (a, ca) in &self.components {
            for (b, cb) in &other.components {
                if let Some(neg) = wedge_sign(*a, *b) {
                    let prod = ca * cb;
                    out.add_mask(a | b, &if neg { -prod } else { prod });
                }
            }
        }
        Ok(out)
    }

    /// `k`-fold exterior power; `power(0)` is the constant function 1.
    pub fn power(&self, k: usize) -> Self {
        let mut acc = Self::function(&self.chart, Polynomial::one(self.dim()));
        for _ in 0..k {
            acc = acc.wedge(self).expect("same chart");
        }
        acc
    }

    /// Coordinate partial derivative of every component.
    pub fn partial(&self, i: usize) -> Self {
        self.map(|c| c.derivative(i))
    }

    /// Pointwise value; exact when `S` is the rational field.
    pub fn evaluate_at<S>(&self, point: &[S]) -> Result<ConstTensor<S>>
    where
        S: Field + CoerceFrom<F>,
    {
        if point.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: point.len(),
            });
        }
        let mut components = BTreeMap::new();
        for (m, c) in &self.components {
            let v = c.eval(point);
            if !v.is_zero() {
                components.insert(*m, v);
            }
        }
        Ok(ConstTensor {
            grade: self.grade,
            dim: self.dim(),
            components,
        })
    }

    /// Components of a grade-1 tensor as a dense vector.
    pub fn to_vector(&self) -> Vec<Polynomial<F>> {
        assert_eq!(self.grade, 1);
        (0..self.dim()).map(|i| self.component(&[i])).collect()
    }

    /// Components of a grade-2 tensor as a dense skew matrix.
    pub fn to_matrix(&self) -> Vec<Vec<Polynomial<F>>> {
        assert_eq!(self.grade, 2);
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.component(&[i, j])).collect())
            .collect()
    }

    /// Same components on a different chart of the same dimension.
    pub fn with_chart(&self, chart: &Chart) -> Result<Self> {
        if chart.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: chart.dim(),
            });
        }
        let mut t = self.clone();
        t.chart = chart.clone();
        Ok(t)
    }

    /// Embeds into a larger chart, shifting coordinate `i` to `offset + i`.
    pub fn embed(&self, chart: &Chart, offset: usize) -> Self {
        let mut out = Self::zero(chart, self.grade);
        for (m, c) in &self.components {
            out.add_mask(m << offset, &c.embed(chart.dim(), offset));
        }
        out
    }

    /// Right derivative with respect to the odd generator `e_i`.
    fn odd_derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.chart, self.grade.saturating_sub(1));
        for (m, c) in &self.components {
            if m & (1 << i) != 0 {
                let after = (m >> (i + 1)).count_ones();
                let c = if after % 2 == 1 { -c } else { c.clone() };
                out.add_mask(m & !(1 << i), &c);
            }
        }
        out
    }

    pub fn display(&self) -> String {
        if self.components.is_empty() {
            return "0".into();
        }
        let names = self.chart.names();
        self.components()
            .into_iter()
            .map(|(idx, c)| {
                let basis: Vec<String> = idx
                    .iter()
                    .map(|&i| format!("{}{}", K::SYMBOL, names[i]))
                    .collect();
                let coeff = c.to_string_with(names);
                if basis.is_empty() {
                    coeff
                } else {
                    format!("({coeff})*{}", basis.join("^"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<F: Field> Tensor<F, Contravariant> {
    /// Schouten–Nijenhuis bracket, of grade `p + q − 1`.
    pub fn schouten(&self, other: &Self) -> Result<Self> {
        self.chart.check(&other.chart)?;
        let (p, q) = (self.grade, other.grade);
        if p + q == 0 {
            return Ok(Self::zero(&self.chart, 0));
        }
        // (−1)^{(p−1)(q−1)} = −1 flips the subtraction into an addition
        let flip = ((p as i64 - 1) * (q as i64 - 1)).rem_euclid(2) == 1;
        let mut out = Self::zero(&self.chart, p + q - 1);
        for i in 0..self.dim() {
            if p >= 1 {
                let a = self.odd_derivative(i).wedge(&other.partial(i))?;
                out = out.add(&a)?;
            }
            if q >= 1 {
                let b = other.odd_derivative(i).wedge(&self.partial(i))?;
                out = if flip { out.add(&b)? } else { out.sub(&b)? };
            }
        }
        Ok(out)
    }

    /// Contraction `π♯α = π(α, ·)` of a bivector with a 1-form.
    pub fn sharp(&self, alpha: &DifferentialForm<F>) -> Result<Self> {
        self.chart.check(alpha.chart())?;
        if self.grade != 2 {
            return Err(Error::GradeMismatch {
                expected: 2,
                got: self.grade,
            });
        }
        if alpha.grade() != 1 {
            return Err(Error::GradeMismatch {
                expected: 1,
                got: alpha.grade(),
            });
        }
        let n = self.dim();
        let a = alpha.to_vector();
        let mut comps = vec![Polynomial::zero(n); n];
        for (idx, c) in self.components() {
            let (i, j) = (idx[0], idx[1]);
            // π = c ∂i∧∂j: π(α,·) = c (α_i ∂j − α_j ∂i)
            comps[j] = &comps[j] + &(&a[i] * c);
            comps[i] = &comps[i] - &(&a[j] * c);
        }
        Self::from_vector(&self.chart, comps)
    }

    /// `π(α, β)` for a bivector and two 1-forms.
    pub fn pair_bivector(&self, alpha: &DifferentialForm<F>, beta: &DifferentialForm<F>) -> Result<Polynomial<F>> {
        let v = self.sharp(alpha)?;
        v.pair(beta)
    }

    /// `⟨α, X⟩` for a vector field and a 1-form.
    pub fn pair(&self, alpha: &DifferentialForm<F>) -> Result<Polynomial<F>> {
        self.chart.check(alpha.chart())?;
        let x = self.to_vector();
        let a = alpha.to_vector();
        Ok(x
            .iter()
            .zip(a.iter())
            .fold(Polynomial::zero(self.dim()), |acc, (u, v)| &acc + &(u * v)))
    }

    /// Derivative of a function along a vector field.
    pub fn apply(&self, f: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.grade, 1);
        (0..self.dim()).fold(Polynomial::zero(self.dim()), |acc, i| {
            &acc + &(&self.component(&[i]) * &f.derivative(i))
        })
    }
}

impl<F: Field> Tensor<F, Covariant> {
    /// Differential of a function.
    pub fn differential(chart: &Chart, f: &Polynomial<F>) -> Self {
        let comps = (0..chart.dim()).map(|i| f.derivative(i)).collect();
        Self::from_vector(chart, comps).expect("dimension matches")
    }

    pub fn exterior_derivative(&self) -> Self {
        let mut out = Self::zero(&self.chart, self.grade + 1);
        if self.grade + 1 > self.dim() {
            return out;
        }
        for i in 0..self.dim() {
            let di = Self::basis(&self.chart, &[i]);
            out = out
                .add(&di.wedge(&self.partial(i)).expect("same chart"))
                .expect("same grade");
        }
        out
    }

    /// `ι_X ω` for a vector field `X`.
    pub fn interior_product(&self, x: &MultivectorField<F>) -> Result<Self> {
        self.chart.check(x.chart())?;
        if x.grade() != 1 {
            return Err(Error::GradeMismatch {
                expected: 1,
                got: x.grade(),
            });
        }
        let mut out = Self::zero(&self.chart, self.grade.saturating_sub(1));
        if self.grade == 0 {
            return Ok(out);
        }
        for (m, c) in &self.components {
            for i in indices_of(*m) {
                let xi = x.component(&[i]);
                if xi.is_zero() {
                    continue;
                }
                let before = (m & ((1u32 << i) - 1)).count_ones();
                let term = &xi * c;
                out.add_mask(m & !(1 << i), &if before % 2 == 1 { -term } else { term });
            }
        }
        Ok(out)
    }

    /// Lie derivative, computed as a derivation on coefficients and on each
    /// `dx_i` factor (`L_X dx_i = dX^i`).
    pub fn lie_derivative(&self, x: &MultivectorField<F>) -> Result<Self> {
        self.chart.check(x.chart())?;
        if x.grade() != 1 {
            return Err(Error::GradeMismatch {
                expected: 1,
                got: x.grade(),
            });
        }
        let n = self.dim();
        let dx: Vec<Self> = (0..n)
            .map(|i| Self::differential(&self.chart, &x.component(&[i])))
            .collect();
        let mut out = Self::zero(&self.chart, self.grade);
        for (m, c) in &self.components {
            let idx = indices_of(*m);
            out.add_mask(*m, &x.apply(c));
            for a in 0..idx.len() {
                let mut prod = Self::function(&self.chart, c.clone());
                for (b, &s) in idx.iter().enumerate() {
                    let factor = if a == b { dx[s].clone() } else { Self::basis(&self.chart, &[s]) };
                    prod = prod.wedge(&factor)?;
                }
                out = out.add(&prod)?;
            }
        }
        Ok(out)
    }
}

/// A tensor with constant (pointwise) coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstTensor<S> {
    grade: usize,
    dim: usize,
    components: BTreeMap<u32, S>,
}

impl<S: Field> ConstTensor<S> {
    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, indices: &[usize]) -> S {
        match sort_sign(indices) {
            Some((mask, neg)) => {
                let c = self.components.get(&mask).cloned().unwrap_or_else(S::zero);
                if neg {
                    -c
                } else {
                    c
                }
            }
            None => S::zero(),
        }
    }

    pub fn to_vector(&self) -> Vec<S> {
        assert_eq!(self.grade, 1);
        (0..self.dim).map(|i| self.component(&[i])).collect()
    }

    /// Skew `n × n` matrix of a grade-2 value.
    pub fn to_matrix(&self) -> Matrix<S> {
        assert_eq!(self.grade, 2);
        Matrix::from_fn(self.dim, self.dim, |i, j| self.component(&[i, j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    type MV = MultivectorField<Rational>;
    type DF = DifferentialForm<Rational>;

    fn chart(names: &[&str]) -> Chart {
        Chart::new(names.iter().copied())
    }

    fn p(c: &Chart, s: &str) -> Polynomial<Rational> {
        c.parse(s).unwrap()
    }

    fn bivector(c: &Chart, entries: &[(usize, usize, &str)]) -> MV {
        let mut t = MV::zero(c, 2);
        for &(i, j, s) in entries {
            t.add_component(&[i, j], p(c, s));
        }
        t
    }

    #[test]
    fn disjoint_wedge() {
        let c = chart(&["x", "y", "z", "w"]);
        let a = MV::basis(&c, &[0, 1]);
        let b = MV::basis(&c, &[2, 3]);
        assert_eq!(a.wedge(&b).unwrap(), MV::basis(&c, &[0, 1, 2, 3]));
        let v = MV::basis(&c, &[1]);
        let u = MV::basis(&c, &[0]);
        assert_eq!(v.wedge(&u).unwrap(), MV::basis(&c, &[0, 1]).neg());
    }

    #[test]
    fn decomposable_square_vanishes() {
        let c = chart(&["x", "y", "t"]);
        let pi = bivector(&c, &[(0, 1, "t")]);
        let sq = pi.power(2);
        assert!(sq.is_zero());
        assert_eq!(sq.grade(), 4);
    }

    #[test]
    fn square_of_sum() {
        // (t ∂t∧∂θ + ∂x1∧∂x2)^2 = 2t ∂t∧∂θ∧∂x1∧∂x2
        let c = chart(&["t", "th", "x1", "x2"]);
        let pi = bivector(&c, &[(0, 1, "t"), (2, 3, "1")]);
        let mut expect = MV::zero(&c, 4);
        expect.add_component(&[0, 1, 2, 3], p(&c, "2*t"));
        assert_eq!(pi.power(2), expect);
    }

    #[test]
    fn lie_bracket_of_vector_fields() {
        let c = chart(&["x", "y"]);
        let x_dy = MV::from_vector(&c, vec![p(&c, "0"), p(&c, "x")]).unwrap();
        let dx = MV::basis(&c, &[0]);
        let br = x_dy.schouten(&dx).unwrap();
        assert_eq!(br, MV::basis(&c, &[1]).neg());
    }

    #[test]
    fn bracket_with_function_is_derivative() {
        let c = chart(&["x", "y"]);
        let v = MV::from_vector(&c, vec![p(&c, "y^2"), p(&c, "x")]).unwrap();
        let f = p(&c, "x^3*y");
        let br = v.schouten(&MV::function(&c, f.clone())).unwrap();
        assert_eq!(br, MV::function(&c, v.apply(&f)));
    }

    #[test]
    fn jacobi_examples() {
        let c = chart(&["x", "y"]);
        let pi = bivector(&c, &[(0, 1, "x")]);
        assert!(pi.schouten(&pi).unwrap().is_zero());

        let c3 = chart(&["x", "y", "z"]);
        let su2 = bivector(&c3, &[(0, 1, "z"), (1, 2, "x"), (2, 0, "y")]);
        assert!(su2.schouten(&su2).unwrap().is_zero());

        let bad = bivector(&c3, &[(1, 2, "x"), (2, 0, "y"), (0, 1, "x^2")]);
        let br = bad.schouten(&bad).unwrap();
        assert!(!br.is_zero());
        assert_eq!(br.component(&[0, 1, 2]), jacobiator(&c3).scale(&int(2)));
    }

    /// Oracle for the single trivector coefficient: the Jacobiator
    /// {x,{y,z}} + {y,{z,x}} + {z,{x,y}} of the bracket {x,y} = x², {y,z} = x,
    /// {z,x} = y, computed from the bracket directly. By hand it is 2xy.
    fn jacobiator(c: &Chart) -> Polynomial<Rational> {
        let m = [["0", "x^2", "-y"], ["-x^2", "0", "x"], ["y", "-x", "0"]];
        let e = |i: usize, j: usize| p(c, m[i][j]);
        let bracket = |f: &Polynomial<Rational>, g: &Polynomial<Rational>| {
            let mut acc = Polynomial::zero(3);
            for i in 0..3 {
                for j in 0..3 {
                    acc = &acc + &(&(&e(i, j) * &f.derivative(i)) * &g.derivative(j));
                }
            }
            acc
        };
        let (x, y, z) = (p(c, "x"), p(c, "y"), p(c, "z"));
        let jac = &(&bracket(&x, &bracket(&y, &z)) + &bracket(&y, &bracket(&z, &x)))
            + &bracket(&z, &bracket(&x, &y));
        assert_eq!(jac, p(c, "2*x*y"));
        jac
    }

    #[test]
    fn cartan_calculus_examples() {
        let c = chart(&["x", "y"]);
        let mut w = DF::zero(&c, 1);
        w.add_component(&[1], p(&c, "x"));
        assert_eq!(w.exterior_derivative(), DF::basis(&c, &[0, 1]));
        assert!(w.exterior_derivative().exterior_derivative().is_zero());
        let ix = DF::basis(&c, &[0, 1]).interior_product(&MV::basis(&c, &[0])).unwrap();
        assert_eq!(ix, DF::basis(&c, &[1]));
        let iy = DF::basis(&c, &[0, 1]).interior_product(&MV::basis(&c, &[1])).unwrap();
        assert_eq!(iy, DF::basis(&c, &[0]).neg());
    }

    #[test]
    fn evaluation_gives_skew_matrix() {
        let c = chart(&["x", "y", "t"]);
        let pi = bivector(&c, &[(0, 1, "t")]);
        let m = pi.evaluate_at(&[int(0), int(0), int(1)]).unwrap().to_matrix();
        assert_eq!(m[(0, 1)], int(1));
        assert_eq!(m[(1, 0)], int(-1));
        assert!(pi.evaluate_at(&[int(0)]).is_err());
    }

    #[test]
    fn chart_mismatch_is_reported() {
        let a = MV::basis(&chart(&["x", "y"]), &[0]);
        let b = MV::basis(&chart(&["u", "v"]), &[1]);
        assert_eq!(a.wedge(&b), Err(Error::ChartMismatch));
        assert_eq!(a.schouten(&b), Err(Error::ChartMismatch));
    }
}
