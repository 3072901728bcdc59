//! Laurent polynomials in `q^(1/4)` with exact coefficients.
//!
//! Exponents are stored as integer counts of quarter units: the stored key
//! `k` stands for `q^(k/4)`.

mod coeff;
mod fraction;
mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;

pub use coeff::{Coefficient, FieldCoefficient};
pub use fraction::LaurentFraction;

use crate::error::{Error, Result};

/// Largest dense buffer used by multiplication before falling back to a map.
const DENSE_LIMIT: i64 = 1 << 22;

/// Sparse Laurent polynomial, terms sorted by exponent, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<C> {
    terms: Vec<(i64, C)>,
}

/// Minimum and maximum degree of a nonzero polynomial, in units of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeBounds {
    pub d_minus: Rational64,
    pub d_plus: Rational64,
}

impl<C: Coefficient> Default for Laurent<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Laurent<C> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    /// `c * q^(quarters/4)`.
    pub fn monomial(quarters: i64, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(quarters, c)] }
        }
    }

    /// `q^(quarters/4)`.
    pub fn q_pow(quarters: i64) -> Self {
        Self::monomial(quarters, C::one())
    }

    /// Builds a polynomial from arbitrary terms, merging repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let mut map: BTreeMap<i64, C> = BTreeMap::new();
        for (e, c) in terms {
            map.entry(e)
                .and_modify(|x| x.add_assign_ref(&c))
                .or_insert(c);
        }
        Self {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn from_sorted_unchecked(terms: Vec<(i64, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Self { terms }
    }

    fn from_dense(offset: i64, buf: Vec<C>) -> Self {
        let terms = buf
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (offset + i as i64, c))
            .collect();
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(quarter exponent, coefficient)`, ascending.
    pub fn terms(&self) -> &[(i64, C)] {
        &self.terms
    }

    pub fn coefficient(&self, quarters: i64) -> Option<&C> {
        self.terms
            .binary_search_by(|(e, _)| e.cmp(&quarters))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn min_quarters(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_quarters(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn degree_bounds(&self) -> Result<DegreeBounds> {
        match (self.terms.first(), self.terms.last()) {
            (Some(lo), Some(hi)) => Ok(DegreeBounds {
                d_minus: Rational64::new(lo.0, 4),
                d_plus: Rational64::new(hi.0, 4),
            }),
            _ => Err(Error::UndefinedDegree),
        }
    }

    /// Coefficients at the minimum and maximum degree.
    pub fn leading_coefficients(&self) -> Result<(&C, &C)> {
        match (self.terms.first(), self.terms.last()) {
            (Some(lo), Some(hi)) => Ok((&lo.1, &hi.1)),
            _ => Err(Error::UndefinedDegree),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_sorted_unchecked(self.terms.iter().map(|(e, x)| (*e, x.mul_ref(c))).collect())
    }

    /// Multiplies by `q^(quarters/4)`.
    pub fn shift(&self, quarters: i64) -> Self {
        Self::from_sorted_unchecked(self.terms.iter().map(|(e, c)| (e + quarters, c.clone())).collect())
    }

    /// Substitutes `q -> q^(-1)`.
    pub fn mirror(&self) -> Self {
        Self::from_sorted_unchecked(self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect())
    }

    /// Substitutes `q -> q^m` for a positive integer `m`.
    pub fn dilate(&self, m: i64) -> Self {
        assert!(m > 0, "dilation factor must be positive");
        Self::from_sorted_unchecked(self.terms.iter().map(|(e, c)| (e * m, c.clone())).collect())
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        Laurent::from_sorted_unchecked(
            self.terms
                .iter()
                .map(|(e, c)| (*e, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        )
    }

    /// Converts coefficients through the rationals; fails if any is not representable.
    pub fn convert<D: Coefficient>(&self) -> Option<Laurent<D>> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| D::from_rational(&c.to_rational()).map(|d| (*e, d)))
            .collect::<Option<Vec<_>>>()?;
        Some(Laurent::from_sorted_unchecked(terms))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn add_assign_ref(&mut self, rhs: &Self) {
        if rhs.is_zero() {
            return;
        }
        *self = merge(&self.terms, &rhs.terms, false);
    }

    pub fn sub_assign_ref(&mut self, rhs: &Self) {
        if rhs.is_zero() {
            return;
        }
        *self = merge(&self.terms, &rhs.terms, true);
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return rhs.scale(c).shift(*e);
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return self.scale(c).shift(*e);
        }
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.terms.last().unwrap().0 + rhs.terms.last().unwrap().0;
        let span = hi - lo + 1;
        if span <= DENSE_LIMIT {
            let mut buf = vec![C::zero(); span as usize];
            for (ea, ca) in &self.terms {
                for (eb, cb) in &rhs.terms {
                    buf[(ea + eb - lo) as usize].add_assign_ref(&ca.mul_ref(cb));
                }
            }
            Self::from_dense(lo, buf)
        } else {
            let mut map: BTreeMap<i64, C> = BTreeMap::new();
            for (ea, ca) in &self.terms {
                for (eb, cb) in &rhs.terms {
                    map.entry(ea + eb).or_insert_with(C::zero).add_assign_ref(&ca.mul_ref(cb));
                }
            }
            Self::from_sorted_unchecked(map.into_iter().filter(|(_, c)| !c.is_zero()).collect())
        }
    }

    /// Exact quotient `self / divisor`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if divisor.terms.len() == 1 {
            let (de, dc) = &divisor.terms[0];
            let terms = self
                .terms
                .iter()
                .map(|(e, c)| c.div_exact(dc).map(|q| (e - de, q)))
                .collect::<Option<Vec<_>>>()
                .ok_or(Error::InexactDivision)?;
            return Ok(Self::from_sorted_unchecked(terms));
        }
        let (amin, amax) = (self.terms[0].0, self.terms.last().unwrap().0);
        let (dmin, dmax) = (divisor.terms[0].0, divisor.terms.last().unwrap().0);
        let (qmin, qmax) = (amin - dmin, amax - dmax);
        if qmax < qmin {
            return Err(Error::InexactDivision);
        }
        let mut rem = vec![C::zero(); (amax - amin + 1) as usize];
        for (e, c) in &self.terms {
            rem[(e - amin) as usize] = c.clone();
        }
        let lead = &divisor.terms.last().unwrap().1;
        let mut quot = vec![C::zero(); (qmax - qmin + 1) as usize];
        for e in (qmin..=qmax).rev() {
            let top = (e + dmax - amin) as usize;
            if rem[top].is_zero() {
                continue;
            }
            let qc = rem[top].div_exact(lead).ok_or(Error::InexactDivision)?;
            for (de, dc) in &divisor.terms {
                rem[(e + de - amin) as usize].sub_assign_ref(&qc.mul_ref(dc));
            }
            quot[(e - qmin) as usize] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(Self::from_dense(qmin, quot))
    }

    /// Sum of the coefficients, i.e. the value at `q = 1`.
    pub fn value_at_one(&self) -> C {
        let mut s = C::zero();
        for (_, c) in &self.terms {
            s.add_assign_ref(c);
        }
        s
    }
}

impl<C: FieldCoefficient> Laurent<C> {
    /// Polynomial division with remainder in `x = q^(1/4)`, treating both
    /// operands as polynomials shifted to start at exponent 0.
    ///
    /// Returns `(quotient, remainder)` with `self = quotient * divisor + remainder`
    /// and the remainder's span strictly below the divisor's.
    pub(crate) fn div_rem_poly(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dmax = divisor.terms.last().unwrap().0;
        let dmin = divisor.terms[0].0;
        let lead_inv = divisor.terms.last().unwrap().1.inv();
        let mut rem = self.clone();
        let mut quot: Vec<(i64, C)> = Vec::new();
        while let Some(rmax) = rem.max_quarters() {
            let rmin = rem.min_quarters().unwrap();
            if rmax - rmin < dmax - dmin {
                break;
            }
            let e = rmax - dmax;
            let c = rem.terms.last().unwrap().1.mul_ref(&lead_inv);
            rem.sub_assign_ref(&divisor.scale(&c).shift(e));
            quot.push((e, c));
        }
        quot.reverse();
        Ok((Self::from_terms(quot), rem))
    }

    /// Makes the top coefficient one.
    pub(crate) fn monic(&self) -> Self {
        match self.terms.last() {
            Some((_, c)) => self.scale(&c.inv()),
            None => Self::zero(),
        }
    }
}

fn merge<C: Coefficient>(a: &[(i64, C)], b: &[(i64, C)], negate_b: bool) -> Laurent<C> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let take_b = |c: &C| if negate_b { -c.clone() } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0, take_b(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let mut c = a[i].1.clone();
                if negate_b {
                    c.sub_assign_ref(&b[j].1);
                } else {
                    c.add_assign_ref(&b[j].1);
                }
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(e, c)| (*e, take_b(c))));
    Laurent::from_sorted_unchecked(out)
}

impl<C: Coefficient> Add for &Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, rhs: Self) -> Laurent<C> {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl<C: Coefficient> Sub for &Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, rhs: Self) -> Laurent<C> {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl<C: Coefficient> Mul for &Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, rhs: Self) -> Laurent<C> {
        self.mul_impl(rhs)
    }
}

impl<C: Coefficient> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        Laurent::from_sorted_unchecked(self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coefficient> $tr for Laurent<C> {
            type Output = Laurent<C>;
            fn $m(self, rhs: Self) -> Laurent<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coefficient> Neg for Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        -&self
    }
}

impl<C: Coefficient> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Laurent<BigInt>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("q^(-1/2) + q^(1/2)");
        let b = p("-q^(-1/2) + q^(1/2)");
        assert_eq!(&a * &b, p("-q^(-1) + q^(1)"));
        assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn inexact_and_zero_division() {
        assert_eq!(p("1 + q").div_exact(&p("-1 + q")), Err(Error::InexactDivision));
        assert_eq!(p("1 + q").div_exact(&P::zero()), Err(Error::DivisionByZero));
        assert_eq!(p("2*q").div_exact(&p("3")), Err(Error::InexactDivision));
    }

    #[test]
    fn degrees() {
        let f = p("-q^(-1) + q");
        let b = f.degree_bounds().unwrap();
        assert_eq!((b.d_minus, b.d_plus), (Rational64::from(-1), Rational64::from(1)));
        assert_eq!(f.leading_coefficients().unwrap().1, &BigInt::from(1));
        assert_eq!(P::zero().degree_bounds(), Err(Error::UndefinedDegree));
    }

    #[test]
    fn pow_and_mirror() {
        let f = p("1 + q^(1/4)");
        assert_eq!(f.pow(2), p("1 + 2*q^(1/4) + q^(1/2)"));
        assert_eq!(f.mirror(), p("q^(-1/4) + 1"));
        assert_eq!(f.pow(0), P::one());
    }

    #[test]
    fn sparse_multiplication_path() {
        let f = P::from_terms([(0, BigInt::from(1)), (DENSE_LIMIT, BigInt::from(1))]);
        let g = &f * &f;
        assert_eq!(g.len(), 3);
        assert_eq!(g.coefficient(DENSE_LIMIT), Some(&BigInt::from(2)));
    }
}
