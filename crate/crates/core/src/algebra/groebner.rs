//! Buchberger's algorithm for submodules of `R^m`, position-over-term with
//! degrevlex underneath. Position 0 is the largest position.

use std::collections::BTreeSet;

use crate::poly::{Monomial, Polynomial};
use crate::scalar::ExactField;

/// Element of the free module `R^m`.
pub type PolyVec<F> = Vec<Polynomial<F>>;

/// Leading position, monomial and coefficient of a module element.
pub(crate) fn leading<F: ExactField>(v: &[Polynomial<F>]) -> Option<(usize, &Monomial, &F)> {
    v.iter()
        .enumerate()
        .find_map(|(i, p)| p.leading_term().map(|(m, c)| (i, m, c)))
}

pub(crate) fn is_zero_vec<F: ExactField>(v: &[Polynomial<F>]) -> bool {
    v.iter().all(Polynomial::is_zero)
}

fn vec_degree<F: ExactField>(v: &[Polynomial<F>]) -> u32 {
    v.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0)
}

fn scale_vec<F: ExactField>(v: &[Polynomial<F>], c: &F) -> PolyVec<F> {
    v.iter().map(|p| p.scale(c)).collect()
}

fn monic_vec<F: ExactField>(v: &[Polynomial<F>]) -> PolyVec<F> {
    match leading(v) {
        Some((_, _, c)) => scale_vec(v, &(F::one() / c.clone())),
        None => v.to_vec(),
    }
}

/// `v -= c * m * g`, componentwise.
fn sub_scaled_vec<F: ExactField>(v: &mut [Polynomial<F>], g: &[Polynomial<F>], m: &Monomial, c: &F) {
    for (a, b) in v.iter_mut().zip(g) {
        if !b.is_zero() {
            a.sub_scaled(b, m, c);
        }
    }
}

struct Element<F> {
    v: PolyVec<F>,
    pos: usize,
    lm: Monomial,
    sugar: u32,
}

impl<F: ExactField> Element<F> {
    fn new(v: PolyVec<F>, sugar: u32) -> Option<Self> {
        let v = monic_vec(&v);
        let (pos, lm) = leading(&v).map(|(p, m, _)| (p, m.clone()))?;
        Some(Element { v, pos, lm, sugar })
    }
}

/// Full normal form of `v` with respect to `basis` (every term reduced).
pub(crate) fn normal_form<F: ExactField>(v: &[Polynomial<F>], basis: &[PolyVec<F>]) -> PolyVec<F> {
    let heads: Vec<(usize, Monomial, F)> = basis
        .iter()
        .filter_map(|g| leading(g).map(|(p, m, c)| (p, m.clone(), c.clone())))
        .collect();
    let live: Vec<&PolyVec<F>> = basis.iter().filter(|g| !is_zero_vec(g)).collect();
    reduce_positions(v, &live, &heads, v.len())
}

/// Reduces the components at positions `< upto`; later components only absorb
/// the side effects of the reductions.
pub(crate) fn reduce_positions<F: ExactField>(
    v: &[Polynomial<F>],
    basis: &[&PolyVec<F>],
    heads: &[(usize, Monomial, F)],
    upto: usize,
) -> PolyVec<F> {
    let mut v = v.to_vec();
    for pos in 0..upto.min(v.len()) {
        let mut rest = Polynomial::zero(v[pos].nvars());
        while let Some((m, c)) = v[pos].leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let hit = heads
                .iter()
                .enumerate()
                .find(|(_, (p, lm, _))| *p == pos && lm.divides(&m));
            match hit {
                Some((k, (_, lm, lc))) => {
                    let t = lm.quotient_of(&m);
                    let coef = c / lc.clone();
                    sub_scaled_vec(&mut v, basis[k], &t, &coef);
                }
                None => {
                    v[pos].add_term(m.clone(), -c.clone());
                    rest.add_term(m, c);
                }
            }
        }
        v[pos] = rest;
    }
    v
}

struct Pair {
    sugar: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// Reduced Gröbner basis of the submodule generated by `gens`, sorted by
/// leading position then leading monomial. Deterministic for a fixed input.
pub fn groebner_basis<F: ExactField>(gens: &[PolyVec<F>]) -> Vec<PolyVec<F>> {
    let Some(rank) = gens.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut basis: Vec<Element<F>> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let push = |e: Element<F>,
                basis: &mut Vec<Element<F>>,
                pairs: &mut Vec<Pair>,
                pending: &mut BTreeSet<(usize, usize)>| {
        let j = basis.len();
        for (i, b) in basis.iter().enumerate() {
            if b.pos != e.pos {
                continue;
            }
            let lcm = b.lm.lcm(&e.lm);
            let d = lcm.degree();
            let sugar = (b.sugar + d - b.lm.degree()).max(e.sugar + d - e.lm.degree());
            pairs.push(Pair { sugar, lcm, i, j });
            pending.insert((i, j));
        }
        basis.push(e);
    };

    for g in gens {
        assert_eq!(g.len(), rank, "generator length differs from ambient rank");
        if let Some(e) = Element::new(g.clone(), vec_degree(g)) {
            push(e, &mut basis, &mut pairs, &mut pending);
        }
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                (p.sugar, &p.lcm, p.i, p.j).cmp(&(q.sugar, &q.lcm, q.i, q.j))
            })
            .unwrap();
        let Pair { sugar, lcm, i, j } = pairs.swap_remove(best);
        pending.remove(&(i, j));

        if rank == 1 && basis[i].lm.is_coprime(&basis[j].lm) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].pos == basis[i].pos
                && basis[k].lm.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let (a, b) = (&basis[i], &basis[j]);
        let mut s = a.v.iter().map(|p| p.mul_term(&a.lm.quotient_of(&lcm), &F::one())).collect::<Vec<_>>();
        sub_scaled_vec(&mut s, &b.v, &b.lm.quotient_of(&lcm), &F::one());
        let current: Vec<PolyVec<F>> = basis.iter().map(|e| e.v.clone()).collect();
        let r = normal_form(&s, &current);
        if let Some(e) = Element::new(r, sugar) {
            push(e, &mut basis, &mut pairs, &mut pending);
        }
    }

    interreduce(basis.into_iter().map(|e| e.v).collect())
}

/// Minimal, fully reduced, monic basis sorted by leading data.
fn interreduce<F: ExactField>(mut g: Vec<PolyVec<F>>) -> Vec<PolyVec<F>> {
    g.sort_by_key(|a| lead_key(a));
    let mut minimal: Vec<PolyVec<F>> = Vec::new();
    for (idx, v) in g.iter().enumerate() {
        let (p, m) = lead_key(v);
        let redundant = g.iter().enumerate().any(|(o, w)| {
            let (q, n) = lead_key(w);
            o != idx && q == p && n.divides(&m) && (n != m || o < idx)
        });
        if !redundant {
            minimal.push(v.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<PolyVec<F>> = minimal
            .iter()
            .enumerate()
            .filter(|&(o, _)| o != k)
            .map(|(_, w)| w.clone())
            .collect();
        let (p, m, c) = leading(&minimal[k]).map(|(p, m, c)| (p, m.clone(), c.clone())).unwrap();
        let mut tail = minimal[k].clone();
        tail[p].add_term(m.clone(), -c.clone());
        let mut r = normal_form(&tail, &others);
        r[p].add_term(m, c);
        out.push(monic_vec(&r));
    }
    out
}

fn lead_key<F: ExactField>(v: &[Polynomial<F>]) -> (usize, Monomial) {
    let (p, m, _) = leading(v).expect("zero element in basis");
    (p, m.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Chart;
    use crate::scalar::Rational;

    fn ideal(chart: &Chart, src: &[&str]) -> Vec<PolyVec<Rational>> {
        src.iter().map(|s| vec![chart.parse(s).unwrap()]).collect()
    }

    #[test]
    fn unit_ideal() {
        let c = Chart::new(["x"]);
        let g = groebner_basis(&ideal(&c, &["x", "1 - x"]));
        assert_eq!(g, vec![vec![Polynomial::one(1)]]);
    }

    #[test]
    fn coordinate_ideal_is_its_own_basis() {
        let c = Chart::new(["x", "y"]);
        let g = groebner_basis(&ideal(&c, &["x", "y"]));
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn circle_and_axes() {
        let c = Chart::new(["x", "y"]);
        let g = groebner_basis(&ideal(&c, &["x^2 + y^2 - 1", "x*y"]));
        let leads: Vec<String> = g
            .iter()
            .map(|v| c.render(&Polynomial::term(2, leading(v).unwrap().1.clone(), Rational::from_integer(1.into()))))
            .collect();
        assert_eq!(leads, vec!["x*y", "x^2", "y^3"]);
    }

    #[test]
    fn basis_is_deterministic_and_order_sensitive_only_in_presentation() {
        let c = Chart::new(["x", "y", "z"]);
        let a = groebner_basis(&ideal(&c, &["x*y - z", "y*z - x", "x*z - y"]));
        let b = groebner_basis(&ideal(&c, &["x*z - y", "x*y - z", "y*z - x"]));
        assert_eq!(a, b);
    }
}
