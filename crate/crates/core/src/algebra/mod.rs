//! Commutative algebra over the polynomial ring: Gröbner bases of submodules
//! of free modules, syzygies, colon and saturation, minor ideals, and
//! emptiness of real and complex varieties.

mod groebner;
mod rank;
mod submodule;
mod variety;
mod verdict;

pub use groebner::{groebner_basis, PolyVec};
pub use rank::{PolyMatrix, RankProfile};
pub use submodule::{combine, syzygies, unit_vector, Saturation, Submodule, SATURATION_CAP};
pub use variety::{constant_rank, find_witness, variety_emptiness, RankJump, EmptinessCertificate, Ground, NonEmptiness, WitnessSearch};
pub use verdict::{Outcome, Unresolved, Verdict};

use crate::poly::Polynomial;
use crate::scalar::ExactField;

/// Least common multiple, as the monic generator of `(a) ∩ (b)`.
pub fn poly_lcm<F: ExactField>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    let n = a.nvars();
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero(n);
    }
    let i = Submodule::ideal(n, [a.clone()]).intersection(&Submodule::ideal(n, [b.clone()]));
    let gb = i.groebner_basis();
    debug_assert_eq!(gb.len(), 1, "intersection of principal ideals is principal");
    gb[0][0].clone()
}

/// Monic greatest common divisor, as `a·b / lcm(a, b)`.
pub fn poly_gcd<F: ExactField>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    (a * b).div_exact(&poly_lcm(a, b)).expect("lcm divides the product").monic()
}
