use std::sync::OnceLock;

use super::groebner::{groebner_basis, is_zero_vec, leading, normal_form, reduce_positions, PolyVec};
use super::rank::PolyMatrix;
use super::verdict::Verdict;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::ExactField;

/// Iteration cap for saturation by repeated colon.
pub const SATURATION_CAP: usize = 50;

/// Finitely generated submodule of the free module `R^rank` over
/// `R = F[x_1..x_nvars]`. Ideals are the case `rank = 1`.
#[derive(Clone, Debug)]
pub struct Submodule<F: ExactField> {
    nvars: usize,
    rank: usize,
    gens: Vec<PolyVec<F>>,
    basis: OnceLock<Vec<PolyVec<F>>>,
}

/// Result of `M : I^∞`, with the number of colon steps until it stabilized.
#[derive(Clone, Debug)]
pub struct Saturation<F: ExactField> {
    pub module: Submodule<F>,
    pub exponent: usize,
}

impl<F: ExactField> Submodule<F> {
    pub fn new(nvars: usize, rank: usize, gens: Vec<PolyVec<F>>) -> Self {
        for g in &gens {
            assert_eq!(g.len(), rank, "generator length differs from ambient rank");
            debug_assert!(g.iter().all(|p| p.nvars() == nvars));
        }
        Submodule {
            nvars,
            rank,
            gens,
            basis: OnceLock::new(),
        }
    }

    pub fn zero(nvars: usize, rank: usize) -> Self {
        Self::new(nvars, rank, Vec::new())
    }

    /// The whole free module `R^rank`.
    pub fn free(nvars: usize, rank: usize) -> Self {
        Self::new(nvars, rank, (0..rank).map(|i| unit_vector(nvars, rank, i)).collect())
    }

    pub fn ideal(nvars: usize, gens: impl IntoIterator<Item = Polynomial<F>>) -> Self {
        Self::new(nvars, 1, gens.into_iter().map(|p| vec![p]).collect())
    }

    /// Submodule generated by the columns of `m`.
    pub fn from_columns(m: &PolyMatrix<F>) -> Self {
        Self::new(m.nvars(), m.rows(), (0..m.cols()).map(|j| m.column(j)).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[PolyVec<F>] {
        &self.gens
    }

    /// Generators as columns of a matrix.
    pub fn matrix(&self) -> PolyMatrix<F> {
        PolyMatrix::from_columns(self.nvars, self.rank, &self.gens)
    }

    /// Reduced Gröbner basis, computed once and cached.
    pub fn groebner_basis(&self) -> &[PolyVec<F>] {
        self.basis.get_or_init(|| {
            let live: Vec<PolyVec<F>> = self.gens.iter().filter(|g| !is_zero_vec(g)).cloned().collect();
            groebner_basis(&live)
        })
    }

    /// Same submodule presented by its reduced Gröbner basis.
    pub fn standard(&self) -> Self {
        let gb = self.groebner_basis().to_vec();
        let out = Self::new(self.nvars, self.rank, gb.clone());
        let _ = out.basis.set(gb);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.groebner_basis().is_empty()
    }

    /// `true` when the submodule is all of `R^rank` (the unit ideal for rank 1).
    pub fn is_whole(&self) -> bool {
        let gb = self.groebner_basis();
        (0..self.rank).all(|p| {
            gb.iter()
                .any(|g| matches!(leading(g), Some((q, m, _)) if q == p && m.is_one()))
        })
    }

    pub fn normal_form(&self, v: &[Polynomial<F>]) -> PolyVec<F> {
        assert_eq!(v.len(), self.rank, "element length differs from ambient rank");
        normal_form(v, self.groebner_basis())
    }

    pub fn contains(&self, v: &[Polynomial<F>]) -> bool {
        is_zero_vec(&self.normal_form(v))
    }

    pub fn contains_module(&self, other: &Submodule<F>) -> bool {
        assert_eq!(self.rank, other.rank);
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality as submodules, by two-sided membership.
    pub fn same_as(&self, other: &Submodule<F>) -> bool {
        self.contains_module(other) && other.contains_module(self)
    }

    /// Decides `v ∈ M`. `Yes` carries coefficients `c` with `Σ c_j g_j = v`
    /// over the original generators; `No` carries the nonzero normal form.
    pub fn membership(&self, v: &[Polynomial<F>]) -> Verdict<Vec<Polynomial<F>>, PolyVec<F>> {
        let nf = self.normal_form(v);
        if !is_zero_vec(&nf) {
            return Verdict::No(nf);
        }
        let (r, s) = (self.rank, self.gens.len());
        let augmented: Vec<PolyVec<F>> = self
            .gens
            .iter()
            .enumerate()
            .map(|(j, g)| {
                let mut a = g.clone();
                a.extend(unit_vector(self.nvars, s, j));
                a
            })
            .collect();
        let gb = groebner_basis(&augmented);
        let heads: Vec<(usize, Monomial, F)> = gb
            .iter()
            .map(|g| leading(g).map(|(p, m, c)| (p, m.clone(), c.clone())).unwrap())
            .collect();
        let refs: Vec<&PolyVec<F>> = gb.iter().collect();
        let mut start = v.to_vec();
        start.extend((0..s).map(|_| Polynomial::zero(self.nvars)));
        let reduced = reduce_positions(&start, &refs, &heads, r);
        debug_assert!(is_zero_vec(&reduced[..r]));
        Verdict::Yes(reduced[r..].iter().map(|p| -p.clone()).collect())
    }

    /// Relations among the generators, as a submodule of `R^{#generators}`.
    pub fn syzygies(&self) -> Submodule<F> {
        syzygies(self.nvars, self.rank, &self.gens)
    }

    pub fn intersection(&self, other: &Submodule<F>) -> Submodule<F> {
        assert_eq!(self.rank, other.rank);
        let mut cols = self.gens.clone();
        cols.extend(other.gens.iter().cloned());
        let syz = syzygies(self.nvars, self.rank, &cols);
        let k = self.gens.len();
        let gens = syz
            .groebner_basis()
            .iter()
            .map(|s| combine(self.nvars, self.rank, &self.gens, &s[..k]))
            .filter(|v| !is_zero_vec(v))
            .collect();
        Submodule::new(self.nvars, self.rank, gens)
    }

    /// `M : f = {v : f v ∈ M}`.
    pub fn colon_element(&self, f: &Polynomial<F>) -> Submodule<F> {
        if f.is_zero() {
            return Submodule::free(self.nvars, self.rank);
        }
        let r = self.rank;
        let mut cols: Vec<PolyVec<F>> = (0..r)
            .map(|i| {
                let mut e = unit_vector(self.nvars, r, i);
                e[i] = f.clone();
                e
            })
            .collect();
        cols.extend(self.gens.iter().cloned());
        let syz = syzygies(self.nvars, r, &cols);
        let gens = syz
            .groebner_basis()
            .iter()
            .map(|s| s[..r].to_vec())
            .filter(|v| !is_zero_vec(v))
            .collect();
        Submodule::new(self.nvars, r, gens).standard()
    }

    /// `M : I = ⋂_i (M : f_i)`.
    pub fn colon(&self, ideal: &Submodule<F>) -> Submodule<F> {
        assert_eq!(ideal.rank, 1, "colon by a non-ideal");
        let fs: Vec<&Polynomial<F>> = ideal.gens.iter().map(|g| &g[0]).filter(|f| !f.is_zero()).collect();
        let mut acc = Submodule::free(self.nvars, self.rank);
        for f in fs {
            let c = self.colon_element(f);
            acc = if acc.is_whole() { c } else { acc.intersection(&c).standard() };
        }
        acc
    }

    /// `M : I^∞` by iterated colon, capped at [`SATURATION_CAP`] steps.
    pub fn saturate(&self, ideal: &Submodule<F>) -> Result<Saturation<F>> {
        let mut current = self.standard();
        for k in 0..SATURATION_CAP {
            let next = current.colon(ideal);
            if current.contains_module(&next) {
                return Ok(Saturation {
                    module: current,
                    exponent: k,
                });
            }
            current = next;
        }
        Err(Error::SaturationOverflow(SATURATION_CAP))
    }

    /// `I · M` for an ideal `I`.
    pub fn ideal_product(&self, ideal: &Submodule<F>) -> Submodule<F> {
        assert_eq!(ideal.rank, 1);
        let mut gens = Vec::new();
        for f in &ideal.gens {
            for g in &self.gens {
                gens.push(g.iter().map(|p| p * &f[0]).collect());
            }
        }
        Submodule::new(self.nvars, self.rank, gens)
    }
}

/// `e_i` in `R^rank`.
pub fn unit_vector<F: ExactField>(nvars: usize, rank: usize, i: usize) -> PolyVec<F> {
    (0..rank)
        .map(|k| if k == i { Polynomial::one(nvars) } else { Polynomial::zero(nvars) })
        .collect()
}

/// `Σ_j c_j g_j`.
pub fn combine<F: ExactField>(nvars: usize, rank: usize, gens: &[PolyVec<F>], c: &[Polynomial<F>]) -> PolyVec<F> {
    let mut out: PolyVec<F> = (0..rank).map(|_| Polynomial::zero(nvars)).collect();
    for (g, cj) in gens.iter().zip(c) {
        if cj.is_zero() {
            continue;
        }
        for (o, p) in out.iter_mut().zip(g) {
            *o = &*o + &(p * cj);
        }
    }
    out
}

/// Module of relations `{s ∈ R^m : Σ_j s_j c_j = 0}` among the columns
/// `c_1..c_m`, each of length `rows`.
pub fn syzygies<F: ExactField>(nvars: usize, rows: usize, columns: &[PolyVec<F>]) -> Submodule<F> {
    let m = columns.len();
    if m == 0 {
        return Submodule::zero(nvars, 0);
    }
    let augmented: Vec<PolyVec<F>> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| {
            assert_eq!(c.len(), rows, "column length differs");
            let mut a = c.clone();
            a.extend(unit_vector(nvars, m, j));
            a
        })
        .collect();
    let gb = groebner_basis(&augmented);
    let gens: Vec<PolyVec<F>> = gb
        .into_iter()
        .filter(|g| matches!(leading(g), Some((p, _, _)) if p >= rows))
        .map(|g| g[rows..].to_vec())
        .collect();
    let out = Submodule::new(nvars, m, gens.clone());
    let _ = out.basis.set(gens);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Chart;
    use crate::scalar::Rational;

    fn vecs(c: &Chart, rows: &[&[&str]]) -> Vec<PolyVec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|s| c.parse(s).unwrap()).collect())
            .collect()
    }

    #[test]
    fn koszul_relation() {
        let c = Chart::new(["x", "y"]);
        let s = syzygies(2, 1, &vecs(&c, &[&["x"], &["y"]]));
        assert_eq!(s.generators().len(), 1);
        let g = &s.generators()[0];
        assert!(g == &vecs(&c, &[&["y", "-x"]])[0] || g == &vecs(&c, &[&["-y", "x"]])[0]);
    }

    #[test]
    fn unit_column_has_no_relations() {
        let s = syzygies(1, 1, &[vec![Polynomial::<Rational>::one(1)]]);
        assert!(s.is_zero());
    }

    #[test]
    fn su2_left_kernel_is_radial() {
        let c = Chart::new(["x", "y", "z"]);
        // columns are the Hamiltonian fields of x, y, z
        let cols = vecs(&c, &[&["0", "-z", "y"], &["z", "0", "-x"], &["-y", "x", "0"]]);
        let s = syzygies(3, 3, &cols);
        let expect = Submodule::new(3, 3, vecs(&c, &[&["x", "y", "z"]]));
        assert!(s.same_as(&expect));
    }

    #[test]
    fn saturation_removes_common_factor() {
        let c = Chart::new(["t", "x", "y"]);
        let m = Submodule::new(3, 3, vecs(&c, &[&["0", "t", "0"], &["0", "0", "t"]]));
        let t = Submodule::ideal(3, [c.parse("t").unwrap()]);
        let sat = m.saturate(&t).unwrap();
        let expect = Submodule::new(3, 3, vecs(&c, &[&["0", "1", "0"], &["0", "0", "1"]]));
        assert!(sat.module.same_as(&expect));
        assert_eq!(sat.exponent, 1);
        let unit = Submodule::ideal(3, [Polynomial::one(3)]);
        assert!(m.saturate(&unit).unwrap().module.same_as(&m));
        let zero = Submodule::<Rational>::zero(3, 3);
        assert!(zero.saturate(&t).unwrap().module.is_zero());
    }

    #[test]
    fn membership_with_certificate() {
        let c = Chart::new(["x", "y"]);
        let m = Submodule::new(2, 2, vecs(&c, &[&["1", "0"], &["0", "1"]]));
        let v = vecs(&c, &[&["1", "0"]]).remove(0);
        let coeffs = m.membership(&v).yes().unwrap();
        assert_eq!(combine(2, 2, m.generators(), &coeffs), v);

        let m = Submodule::new(2, 2, vecs(&c, &[&["y", "0"]]));
        let v = vecs(&c, &[&["0", "x"]]).remove(0);
        assert_eq!(m.membership(&v).no().unwrap(), v);
    }

    #[test]
    fn intersection_of_principal_ideals_is_lcm() {
        let c = Chart::new(["x", "y"]);
        let a = Submodule::ideal(2, [c.parse("x^2*y").unwrap()]);
        let b = Submodule::ideal(2, [c.parse("x*y^2").unwrap()]);
        let i = a.intersection(&b).standard();
        assert_eq!(i.generators(), &[vec![c.parse("x^2*y^2").unwrap()]]);
    }
}
