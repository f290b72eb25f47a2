use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use crate::scalar::{CoerceFrom, ExactField, Field, Rational};

/// Sparse multivariate polynomial in a fixed number of variables.
///
/// Terms are kept in increasing degrevlex order and never hold a zero
/// coefficient, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::term(nvars, Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(nvars, Monomial::var(nvars, i), F::one())
    }

    pub fn term(nvars: usize, m: Monomial, c: F) -> Self {
        debug_assert_eq!(m.nvars(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The constant term (zero if absent).
    pub fn constant_term(&self) -> F {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&F> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    /// `self * c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a.clone() * c.clone()))
                .collect(),
        }
    }

    /// `self - c * m * other`, in place.
    pub fn sub_scaled(&mut self, other: &Self, m: &Monomial, c: &F) {
        for (t, a) in &other.terms {
            self.add_term(t.mul(m), -(a.clone() * c.clone()));
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(i) {
                out.add_term(lowered, c.clone() * F::from_i64(e as i64));
            }
        }
        out
    }

    /// Evaluates at `point`, coercing coefficients into the point's scalar type.
    pub fn eval<S>(&self, point: &[S]) -> S
    where
        S: Field + CoerceFrom<F>,
    {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = S::coerce(c);
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = t * x.pow(e);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes polynomials (all in the same target ring) for the variables.
    pub fn compose(&self, subs: &[Polynomial<F>]) -> Polynomial<F> {
        assert_eq!(subs.len(), self.nvars);
        let target = subs.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (s, &e) in subs.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &s.pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Re-embeds into `total` variables, shifting variable `i` to `offset + i`.
    pub fn embed(&self, total: usize, offset: usize) -> Polynomial<F> {
        assert!(offset + self.nvars <= total);
        Polynomial::from_terms(
            total,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; total];
                e[offset..offset + self.nvars].copy_from_slice(m.exponents());
                (Monomial::from_exponents(e), c.clone())
            }),
        )
    }

    pub fn map_coefficients<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Renders with the given variable names; `Rational` output re-parses.
    pub fn to_string_with(&self, names: &[impl AsRef<str>]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(m, names);
            if mono.is_empty() {
                s.push_str(&mag);
            } else if mag == "1" {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{mag}*{mono}");
            }
        }
        s
    }
}

fn render_monomial(m: &Monomial, names: &[impl AsRef<str>]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].as_ref().to_string()),
            _ => parts.push(format!("{}^{}", names[i].as_ref(), e)),
        }
    }
    parts.join("*")
}

impl<F: ExactField> Polynomial<F> {
    /// Division with remainder by a single divisor; returns `(q, r)`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (lm, lc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut p = self.clone();
        let mut q = Self::zero(self.nvars);
        let mut r = Self::zero(self.nvars);
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let t = lm.quotient_of(&m);
                let coef = c / lc.clone();
                p.sub_scaled(d, &t, &coef);
                q.add_term(t, coef);
            } else {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
        (q, r)
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(c) => self.scale(&(F::one() / c.clone())),
            None => self.clone(),
        }
    }
}

impl Polynomial<Rational> {
    /// Rational content: positive gcd of numerators over lcm of denominators,
    /// so that `self / content` has coprime integer coefficients.
    pub fn rational_content(&self) -> Rational {
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num.abs(), den)
    }

    /// `true` when every term has even exponents and a positive coefficient
    /// and the constant term is positive: such a polynomial has no real zero.
    pub fn is_positive_sum_of_even_powers(&self) -> bool {
        self.constant_term().is_positive()
            && self
                .terms
                .iter()
                .all(|(m, c)| m.all_even() && c.is_positive())
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, o: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.nvars, o.nvars, "polynomial ring mismatch");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, o: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.nvars, o.nvars, "polynomial ring mismatch");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, o: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.nvars, o.nvars, "polynomial ring mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl<F: Field> $tr for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $f(self, o: Polynomial<F>) -> Polynomial<F> {
                (&self).$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    type P = Polynomial<Rational>;

    fn x(i: usize) -> P {
        P::var(3, i)
    }

    #[test]
    fn arithmetic_cancels_to_canonical_zero() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let q = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
    }

    #[test]
    fn derivative_and_eval() {
        let p = &(&x(0) * &x(0)) * &x(2) + P::constant(3, rat(1, 2));
        let d = p.derivative(0);
        assert_eq!(d, (&x(0) * &x(2)).scale(&int(2)));
        assert_eq!(p.eval(&[int(2), int(5), int(3)]), rat(25, 2));
        assert_eq!(p.eval(&[2.0_f64, 5.0, 3.0]), 12.5);
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(2);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!((&prod + &P::one(3)).div_exact(&a), None);
    }

    #[test]
    fn printer_renders_signs() {
        let p = &(&x(0) * &x(0)).scale(&rat(-3, 2)) + &x(1) - P::one(3);
        assert_eq!(p.to_string_with(&["x", "y", "z"]), "-3/2*x^2 + y - 1");
    }

    #[test]
    fn compose_substitutes() {
        // (x - y^2) with x -> 1, y -> y over two variables
        let p = &x(0) - &(&x(1) * &x(1));
        let subs = vec![P::one(2), P::var(2, 1), P::zero(2)];
        let q = p.compose(&subs);
        assert_eq!(q, &P::one(2) - &(&P::var(2, 1) * &P::var(2, 1)));
    }
}
