use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient ring of a [`Laurent`](super::Laurent) polynomial.
///
/// The by-reference methods exist so that big-integer coefficients are not
/// cloned in inner loops.
pub trait Coefficient:
    Clone + Debug + PartialEq + Zero + One + Signed + Send + Sync + 'static
{
    fn add_assign_ref(&mut self, rhs: &Self);
    fn sub_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    /// `self / rhs` when the quotient lies in the ring, `None` otherwise.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    fn to_rational(&self) -> BigRational;
    /// `None` when `r` is not representable.
    fn from_rational(r: &BigRational) -> Option<Self>;
}

/// Coefficients in which every nonzero element is invertible.
pub trait FieldCoefficient: Coefficient {
    fn inv(&self) -> Self;
}

macro_rules! integer_coefficient {
    ($t:ty, $from:expr, $to:expr) => {
        impl Coefficient for $t {
            fn add_assign_ref(&mut self, rhs: &Self) {
                *self += rhs;
            }
            fn sub_assign_ref(&mut self, rhs: &Self) {
                *self -= rhs;
            }
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn div_exact(&self, rhs: &Self) -> Option<Self> {
                if rhs.is_zero() {
                    return None;
                }
                let (q, r) = self.div_rem(rhs);
                r.is_zero().then_some(q)
            }
            fn from_i64(v: i64) -> Self {
                $from(v)
            }
            fn to_rational(&self) -> BigRational {
                BigRational::from_integer(BigInt::from(self.clone()))
            }
            fn from_rational(r: &BigRational) -> Option<Self> {
                if !r.is_integer() {
                    return None;
                }
                $to(r.numer())
            }
        }
    };
}

integer_coefficient!(BigInt, BigInt::from, |n: &BigInt| Some(n.clone()));
integer_coefficient!(i64, |v| v, |n: &BigInt| n.to_i64());
integer_coefficient!(i128, i128::from, |n: &BigInt| n.to_i128());

impl Coefficient for BigRational {
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
    fn from_rational(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }
}

impl FieldCoefficient for BigRational {
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Coefficient for Rational64 {
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
    fn from_i64(v: i64) -> Self {
        Rational64::from_integer(v)
    }
    fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn from_rational(r: &BigRational) -> Option<Self> {
        Some(Rational64::new(r.numer().to_i64()?, r.denom().to_i64()?))
    }
}

impl FieldCoefficient for Rational64 {
    fn inv(&self) -> Self {
        self.recip()
    }
}
