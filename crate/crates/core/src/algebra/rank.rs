use std::collections::HashMap;

use super::groebner::PolyVec;
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::scalar::{CoerceFrom, ExactField, Field};

/// Dense matrix of polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F> {
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn from_fn(nvars: usize, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Polynomial<F>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                debug_assert_eq!(e.nvars(), nvars);
                entries.push(e);
            }
        }
        PolyMatrix {
            nvars,
            rows,
            cols,
            entries,
        }
    }

    pub fn from_columns(nvars: usize, rows: usize, cols: &[PolyVec<F>]) -> Self {
        Self::from_fn(nvars, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn from_rows(nvars: usize, rows: &[PolyVec<F>]) -> Self {
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(nvars, rows.len(), c, |i, j| rows[i][j].clone())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> PolyVec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> PolyVec<F> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.nvars, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        Self::from_fn(self.nvars, self.rows, o.cols, |i, j| {
            (0..self.cols).fold(Polynomial::zero(self.nvars), |acc, k| &acc + &(self.get(i, k) * o.get(k, j)))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// Entrywise evaluation at a point.
    pub fn eval<S: Field + CoerceFrom<F>>(&self, point: &[S]) -> Matrix<S> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(point))
    }

    /// All nonzero `s × s` minors, deduplicated up to sign.
    pub fn minors(&self, s: usize) -> Vec<Polynomial<F>> {
        if s == 0 {
            return vec![Polynomial::one(self.nvars)];
        }
        if s > self.rows || s > self.cols {
            return Vec::new();
        }
        assert!(self.cols <= 64, "minor enumeration supports at most 64 columns");
        let mut seen: Vec<Polynomial<F>> = Vec::new();
        for rows in subsets(self.rows, s) {
            let mut memo = HashMap::new();
            for cols in subsets(self.cols, s) {
                let mask = cols.iter().fold(0u64, |m, &j| m | (1 << j));
                let d = self.minor_dp(&rows, 0, mask, &mut memo);
                if !d.is_zero() && !seen.iter().any(|p| p == &d || p == &-d.clone()) {
                    seen.push(d);
                }
            }
        }
        seen
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Polynomial<F> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        assert!(self.cols <= 64, "determinant supports at most 64 columns");
        let rows: Vec<usize> = (0..self.rows).collect();
        let mask = if self.cols == 64 { u64::MAX } else { (1u64 << self.cols) - 1 };
        self.minor_dp(&rows, 0, mask, &mut HashMap::new())
    }

    /// Adjugate, so that `self · adj = det · I`.
    pub fn adjugate(&self) -> Self {
        let n = self.rows;
        assert_eq!(n, self.cols, "adjugate of a non-square matrix");
        if n == 0 {
            return self.clone();
        }
        Self::from_fn(self.nvars, n, n, |i, j| {
            let minor = Self::from_fn(self.nvars, n - 1, n - 1, |a, b| {
                let r = if a < j { a } else { a + 1 };
                let c = if b < i { b } else { b + 1 };
                self.get(r, c).clone()
            });
            let d = minor.determinant();
            if (i + j) % 2 == 1 {
                -d
            } else {
                d
            }
        })
    }

    /// Laplace expansion along `rows[k..]` over the column set `mask`, memoized.
    fn minor_dp(&self, rows: &[usize], k: usize, mask: u64, memo: &mut HashMap<u64, Polynomial<F>>) -> Polynomial<F> {
        if k == rows.len() {
            return Polynomial::one(self.nvars);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(self.nvars);
        let mut sign_neg = false;
        for j in 0..self.cols {
            if mask & (1 << j) == 0 {
                continue;
            }
            let a = self.get(rows[k], j);
            if !a.is_zero() {
                let sub = self.minor_dp(rows, k + 1, mask & !(1 << j), memo);
                let t = a * &sub;
                acc = if sign_neg { &acc - &t } else { &acc + &t };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(mask, acc.clone());
        acc
    }
}

impl<F: ExactField> PolyMatrix<F> {
    /// Rank over the fraction field, by fraction-free (Bareiss) elimination.
    pub fn generic_rank(&self) -> usize {
        let mut a: Vec<Vec<Polynomial<F>>> = (0..self.rows).map(|i| self.row(i)).collect();
        let (n, m) = (self.rows, self.cols);
        let mut prev = Polynomial::one(self.nvars);
        let mut r = 0;
        while r < n.min(m) {
            let Some((pi, pj)) = (r..n)
                .flat_map(|i| (r..m).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| (a[i][j].num_terms(), i, j))
            else {
                break;
            };
            a.swap(r, pi);
            for row in a.iter_mut() {
                row.swap(r, pj);
            }
            for i in r + 1..n {
                for j in r + 1..m {
                    let num = &(&a[r][r] * &a[i][j]) - &(&a[i][r] * &a[r][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss step is exact");
                }
                a[i][r] = Polynomial::zero(self.nvars);
            }
            prev = a[r][r].clone();
            r += 1;
        }
        r
    }

    /// Generic rank with its minor ideal; evaluates the pointwise rank on demand.
    pub fn rank_profile(&self) -> RankProfile<F> {
        let generic_rank = self.generic_rank();
        RankProfile {
            generic_rank,
            drop_ideal: self.minors(generic_rank),
            matrix: self.clone(),
        }
    }
}

/// Generic rank of a polynomial matrix and where it drops.
#[derive(Clone, Debug)]
pub struct RankProfile<F> {
    pub generic_rank: usize,
    /// Generators of the ideal of `generic_rank`-minors; its zero set is the
    /// locus where the rank drops.
    pub drop_ideal: Vec<Polynomial<F>>,
    matrix: PolyMatrix<F>,
}

impl<F: ExactField> RankProfile<F> {
    /// Exact rank of the evaluated matrix.
    pub fn rank_at(&self, point: &[F]) -> usize
    where
        F: CoerceFrom<F>,
    {
        self.matrix.eval(point).rank()
    }

    /// Ideal of `s`-minors for `s ≤ generic_rank`.
    pub fn minor_ideal(&self, s: usize) -> Vec<Polynomial<F>> {
        self.matrix.minors(s)
    }

    /// `true` when the drop ideal contains a nonzero constant.
    pub fn drop_ideal_is_unit(&self) -> bool {
        self.drop_ideal.iter().any(|p| p.is_constant() && !p.is_zero())
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Chart;
    use crate::scalar::{int, Rational};

    fn mat(c: &Chart, rows: &[&[&str]]) -> PolyMatrix<Rational> {
        let rows: Vec<PolyVec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|s| c.parse(s).unwrap()).collect())
            .collect();
        PolyMatrix::from_rows(c.dim(), &rows)
    }

    #[test]
    fn radial_column_drops_at_origin() {
        let c = Chart::new(["x", "y", "z"]);
        let g = mat(&c, &[&["x"], &["y"], &["z"]]);
        let p = g.rank_profile();
        assert_eq!(p.generic_rank, 1);
        assert_eq!(p.drop_ideal.len(), 3);
        assert_eq!(p.rank_at(&[int(0), int(0), int(0)]), 0);
        assert_eq!(p.rank_at(&[int(0), int(1), int(0)]), 1);
    }

    #[test]
    fn identity_has_unit_drop_ideal() {
        let c = Chart::new(["x", "y"]);
        let g = mat(&c, &[&["1", "0"], &["0", "1"]]);
        let p = g.rank_profile();
        assert_eq!(p.generic_rank, 2);
        assert!(p.drop_ideal_is_unit());
    }

    #[test]
    fn su2_matrix_has_generic_rank_two() {
        let c = Chart::new(["x", "y", "z"]);
        let g = mat(&c, &[&["0", "z", "-y"], &["-z", "0", "x"], &["y", "-x", "0"]]);
        assert_eq!(g.generic_rank(), 2);
        assert!(g.minors(3).is_empty());
        assert!(g.determinant().is_zero());
        let adj = g.adjugate();
        assert!(g.mul(&adj).is_zero());
        assert_eq!(g.minors(2).len(), 6);
    }
}
