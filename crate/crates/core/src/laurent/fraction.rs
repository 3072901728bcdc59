use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{DegreeBounds, FieldCoefficient, Laurent};
use crate::error::{Error, Result};

/// Element of the fraction field of Laurent polynomials over a field.
///
/// Canonical form: numerator and denominator are coprime, the denominator
/// has lowest exponent zero and top coefficient one. Structural equality is
/// therefore field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentFraction<F> {
    num: Laurent<F>,
    den: Laurent<F>,
}

fn gcd<F: FieldCoefficient>(a: &Laurent<F>, b: &Laurent<F>) -> Result<Laurent<F>> {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = a.div_rem_poly(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

impl<F: FieldCoefficient> LaurentFraction<F> {
    pub fn new(num: Laurent<F>, den: Laurent<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(Laurent::zero()));
        }
        let g = gcd(&num, &den)?;
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        Ok(Self::canonical(num, den))
    }

    /// Skips the gcd step; callers guarantee the parts are coprime.
    pub(crate) fn from_coprime(num: Laurent<F>, den: Laurent<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::canonical(num, den)
    }

    fn canonical(num: Laurent<F>, den: Laurent<F>) -> Self {
        let shift = den.min_quarters().unwrap();
        let lead = den.terms.last().unwrap().1.inv();
        Self { num: num.shift(-shift).scale(&lead), den: den.shift(-shift).scale(&lead) }
    }

    pub fn from_poly(p: Laurent<F>) -> Self {
        Self { num: p, den: Laurent::one() }
    }

    pub fn numerator(&self) -> &Laurent<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value, when the denominator is a unit.
    pub fn as_polynomial(&self) -> Option<Laurent<F>> {
        self.den.is_one().then(|| self.num.clone())
    }

    /// Degrees extended to fractions as differences of numerator and
    /// denominator degrees.
    pub fn degree_bounds(&self) -> Result<DegreeBounds> {
        let n = self.num.degree_bounds()?;
        let d = self.den.degree_bounds()?;
        Ok(DegreeBounds { d_minus: n.d_minus - d.d_minus, d_plus: n.d_plus - d.d_plus })
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let r = rhs.recip()?;
        Ok(self * &r)
    }
}

impl<F: FieldCoefficient> Add for &LaurentFraction<F> {
    type Output = LaurentFraction<F>;
    fn add(self, rhs: Self) -> LaurentFraction<F> {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        LaurentFraction::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl<F: FieldCoefficient> Sub for &LaurentFraction<F> {
    type Output = LaurentFraction<F>;
    fn sub(self, rhs: Self) -> LaurentFraction<F> {
        self + &(-rhs)
    }
}

impl<F: FieldCoefficient> Mul for &LaurentFraction<F> {
    type Output = LaurentFraction<F>;
    fn mul(self, rhs: Self) -> LaurentFraction<F> {
        LaurentFraction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl<F: FieldCoefficient> Neg for &LaurentFraction<F> {
    type Output = LaurentFraction<F>;
    fn neg(self) -> LaurentFraction<F> {
        LaurentFraction { num: -&self.num, den: self.den.clone() }
    }
}

impl<F: FieldCoefficient> fmt::Display for LaurentFraction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<F: FieldCoefficient> fmt::Debug for LaurentFraction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentFraction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Laurent<BigRational>;
    type Q = LaurentFraction<BigRational>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    #[test]
    fn reduces_common_factors() {
        let f = Q::new(p("-q^(-1) + q"), p("q^(-1/2) + q^(1/2)")).unwrap();
        assert_eq!(f.as_polynomial(), Some(p("-q^(-1/2) + q^(1/2)")));
    }

    #[test]
    fn field_identities() {
        let a = Q::new(p("1 + q"), p("2 - q^(1/2)")).unwrap();
        let b = Q::new(p("q^(-1)"), p("1 + q + q^(2)")).unwrap();
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!((&a * &b).div(&b).unwrap(), a);
        assert_eq!(&a * &a.recip().unwrap(), Q::from_poly(P::one()));
        assert_eq!(Q::new(P::one(), P::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn fraction_degrees_subtract() {
        let f = Q::new(p("q^(2)"), p("1 + q")).unwrap();
        let d = f.degree_bounds().unwrap();
        assert_eq!(d.d_plus, 1.into());
        assert_eq!(d.d_minus, 2.into());
    }
}
