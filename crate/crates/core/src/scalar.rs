//! Scalar types the algebra is generic over.
//!
//! Symbolic work runs over exact rationals ([`Rational`]); numeric kernels run
//! over `f64`/`f32`, or over [`Dual`] numbers when a first derivative is needed.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// A commutative field usable as polynomial coefficients and matrix entries.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    /// `true` when the value should be treated as zero by pivoting code.
    /// Exact fields answer `is_zero`; float fields compare against a cutoff.
    fn is_negligible(&self) -> bool;

    /// Magnitude used for pivot selection.
    fn magnitude(&self) -> f64;

    fn from_i64(n: i64) -> Self;

    fn from_rational(q: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// Equality up to an absolute tolerance; exact fields ignore `tol`.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// Marker for fields with exact arithmetic. Gröbner bases and anything that
/// decides equality symbolically require it.
pub trait ExactField: Field + Ord + Signed {}

/// Coefficient coercion used when evaluating a polynomial with coefficients in
/// `C` at a point with coordinates in `Self`.
pub trait CoerceFrom<C> {
    fn coerce(c: &C) -> Self;
}

/// Pivot cutoff used by float fields.
pub const FLOAT_CUTOFF: f64 = 1e-10;

impl Field for Rational {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn magnitude(&self) -> f64 {
        ToPrimitive::to_f64(&Signed::abs(self)).unwrap_or(f64::INFINITY)
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
}

impl ExactField for Rational {}

macro_rules! float_field {
    ($t:ty) => {
        impl Field for $t {
            fn is_negligible(&self) -> bool {
                (*self as f64).abs() < FLOAT_CUTOFF
            }

            fn magnitude(&self) -> f64 {
                (*self as f64).abs()
            }

            fn from_i64(n: i64) -> Self {
                n as $t
            }

            fn from_rational(q: &Rational) -> Self {
                ToPrimitive::to_f64(q).unwrap_or(f64::NAN) as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn approx_eq(&self, other: &Self, tol: f64) -> bool {
                ((*self - *other) as f64).abs() <= tol
            }
        }

        impl CoerceFrom<$t> for $t {
            fn coerce(c: &$t) -> Self {
                *c
            }
        }

        impl CoerceFrom<Rational> for $t {
            fn coerce(c: &Rational) -> Self {
                <$t as Field>::from_rational(c)
            }
        }
    };
}

float_field!(f64);
float_field!(f32);

impl CoerceFrom<Rational> for Rational {
    fn coerce(c: &Rational) -> Self {
        c.clone()
    }
}

/// Builds a rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Forward-mode dual number `value + eps * deriv`, `eps^2 = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub value: f64,
    pub deriv: f64,
}

impl Dual {
    pub const fn new(value: f64, deriv: f64) -> Self {
        Dual { value, deriv }
    }

    pub const fn constant(value: f64) -> Self {
        Dual { value, deriv: 0.0 }
    }

    pub const fn variable(value: f64) -> Self {
        Dual { value, deriv: 1.0 }
    }
}

impl Display for Dual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}ε", self.value, self.deriv)
    }
}

impl Zero for Dual {
    fn zero() -> Self {
        Dual::constant(0.0)
    }
    fn is_zero(&self) -> bool {
        self.value == 0.0 && self.deriv == 0.0
    }
}

impl One for Dual {
    fn one() -> Self {
        Dual::constant(1.0)
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.value, -self.deriv)
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual::new(self.value + o.value, self.deriv + o.deriv)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual::new(self.value - o.value, self.deriv - o.deriv)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual::new(
            self.value * o.value,
            self.value * o.deriv + self.deriv * o.value,
        )
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        let v = self.value / o.value;
        Dual::new(v, (self.deriv - v * o.deriv) / o.value)
    }
}

impl Field for Dual {
    fn is_negligible(&self) -> bool {
        self.value.abs() < FLOAT_CUTOFF
    }

    fn magnitude(&self) -> f64 {
        self.value.abs()
    }

    fn from_i64(n: i64) -> Self {
        Dual::constant(n as f64)
    }

    fn from_rational(q: &Rational) -> Self {
        Dual::constant(<f64 as Field>::from_rational(q))
    }

    fn to_f64(&self) -> f64 {
        self.value
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.value - other.value).abs() <= tol && (self.deriv - other.deriv).abs() <= tol
    }
}

impl CoerceFrom<Rational> for Dual {
    fn coerce(c: &Rational) -> Self {
        Dual::from_rational(c)
    }
}

impl CoerceFrom<f64> for Dual {
    fn coerce(c: &f64) -> Self {
        Dual::constant(*c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_product_rule() {
        let x = Dual::variable(3.0);
        let y = x * x * x - Dual::from_i64(2) * x;
        assert_eq!(y.value, 21.0);
        assert_eq!(y.deriv, 25.0);
        let q = Dual::one() / x;
        assert!((q.deriv + 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn rational_pow_and_coercion() {
        assert_eq!(rat(2, 3).pow(3), rat(8, 27));
        assert_eq!(<f64 as CoerceFrom<Rational>>::coerce(&rat(1, 4)), 0.25);
        assert!(int(0).is_negligible());
        assert!(!rat(1, 1_000_000_000_000).is_negligible());
        assert!(1e-12_f64.is_negligible());
    }
}
