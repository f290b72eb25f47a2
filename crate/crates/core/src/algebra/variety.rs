use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::rank::RankProfile;
use super::submodule::Submodule;
use super::verdict::{Unresolved, Verdict};
use crate::scalar::{int, rat, Rational};
use crate::QPolynomial;

/// Ground field of a variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ground {
    Real,
    Complex,
}

/// Parameters of the rational witness search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessSearch {
    pub samples: usize,
    pub seed: u64,
}

impl Default for WitnessSearch {
    fn default() -> Self {
        WitnessSearch {
            samples: 10_000,
            seed: 0,
        }
    }
}

/// Why a variety is empty.
#[derive(Clone, Debug, PartialEq)]
pub enum EmptinessCertificate {
    /// The reduced Gröbner basis is `{1}`.
    UnitIdeal,
    /// An ideal element with only even exponents and positive coefficients.
    Positive(QPolynomial),
}

/// Why a variety is nonempty.
#[derive(Clone, Debug, PartialEq)]
pub enum NonEmptiness {
    /// An exact rational point on which every generator vanishes.
    Point(Vec<Rational>),
    /// Reduced Gröbner basis different from `{1}`; over `C` this is itself a
    /// certificate of nonemptiness.
    ProperIdeal(Vec<QPolynomial>),
}

/// Decides whether the zero set of `ideal` in `nvars` variables is empty.
///
/// Over `C` the answer is exact. Over `R` emptiness is certified by the unit
/// ideal or a syntactically positive element; nonemptiness by an exact
/// rational witness. Anything else is `Inconclusive`.
pub fn variety_emptiness(
    nvars: usize,
    ideal: &[QPolynomial],
    ground: Ground,
    search: &WitnessSearch,
) -> Verdict<EmptinessCertificate, NonEmptiness> {
    let module = Submodule::ideal(nvars, ideal.iter().cloned());
    if module.is_whole() {
        return Verdict::Yes(EmptinessCertificate::UnitIdeal);
    }
    let gb: Vec<QPolynomial> = module.groebner_basis().iter().map(|g| g[0].clone()).collect();
    if ground == Ground::Complex {
        return Verdict::No(NonEmptiness::ProperIdeal(gb));
    }
    if let Some(p) = ideal
        .iter()
        .chain(gb.iter())
        .find(|p| p.is_positive_sum_of_even_powers())
    {
        return Verdict::Yes(EmptinessCertificate::Positive(p.clone()));
    }
    match find_witness(nvars, &gb, search) {
        Some(x) => Verdict::No(NonEmptiness::Point(x)),
        None => Verdict::Inconclusive(Unresolved::new(
            format!(
                "no emptiness certificate and no rational point among {} samples",
                search.samples
            ),
            gb,
        )),
    }
}

fn vanishes(ideal: &[QPolynomial], x: &[Rational]) -> bool {
    ideal.iter().all(|p| p.eval(x) == int(0))
}

/// Smallest witness in lexicographic order among the searched points.
///
/// Deterministic grids come first (the half-integer grid on `[-3,3]^n` when it
/// fits the budget, else `{-1,0,1}^n` when that fits); the seeded random
/// phase runs only if the grid found nothing.
pub fn find_witness(nvars: usize, ideal: &[QPolynomial], search: &WitnessSearch) -> Option<Vec<Rational>> {
    let half: Vec<Rational> = (-6..=6).map(|k| rat(k, 2)).collect();
    let unit: Vec<Rational> = (-1..=1).map(int).collect();
    let fits = |base: usize| {
        base.checked_pow(nvars as u32)
            .is_some_and(|total| total <= search.samples)
    };
    let grid = if fits(half.len()) {
        Some(half.clone())
    } else if fits(unit.len()) {
        Some(unit)
    } else {
        None
    };
    let mut used = 0;
    if let Some(values) = grid {
        // odometer in lexicographic order, so the first hit is the smallest
        let mut idx = vec![0usize; nvars];
        'grid: loop {
            let x: Vec<Rational> = idx.iter().map(|&i| values[i].clone()).collect();
            used += 1;
            if vanishes(ideal, &x) {
                return Some(x);
            }
            let mut k = nvars;
            loop {
                if k == 0 {
                    break 'grid;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < values.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let mut best: Option<Vec<Rational>> = None;
    for _ in used..search.samples {
        let x: Vec<Rational> = (0..nvars)
            .map(|_| half[rng.gen_range(0..half.len())].clone())
            .collect();
        if vanishes(ideal, &x) && best.as_ref().is_none_or(|b| &x < b) {
            best = Some(x);
        }
    }
    best
}

/// A point where a matrix has rank different from its generic rank.
#[derive(Clone, Debug, PartialEq)]
pub struct RankJump {
    pub point: Vec<Rational>,
    pub rank: usize,
    pub generic_rank: usize,
}

/// Decides whether a polynomial matrix has constant rank on `R^n`, i.e.
/// whether the ideal of its generic-rank minors has no real zero.
pub fn constant_rank(
    nvars: usize,
    profile: &RankProfile<Rational>,
    search: &WitnessSearch,
) -> Verdict<EmptinessCertificate, RankJump> {
    variety_emptiness(nvars, &profile.drop_ideal, Ground::Real, search).map_no(|n| match n {
        NonEmptiness::Point(point) => RankJump {
            rank: profile.rank_at(&point),
            generic_rank: profile.generic_rank,
            point,
        },
        NonEmptiness::ProperIdeal(_) => unreachable!("real search yields points"),
    })
}
