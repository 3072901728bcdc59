//! Exact quantities kept as `sign * q^(shift/4) * prod Phi_d(q)^e_d * poly`.
//!
//! Quantum integers factor into cyclotomic polynomials, so products and
//! quotients of factorials stay in factored form until a sum forces a common
//! denominator.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::One;

use crate::error::{Error, Result};
use crate::laurent::{DegreeBounds, Laurent, LaurentFraction};

pub use crate::IntPoly;

fn cyclotomic_cache() -> &'static RwLock<HashMap<u32, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The cyclotomic polynomial `Phi_d(q)`.
pub fn cyclotomic(d: u32) -> Arc<IntPoly> {
    assert!(d >= 1, "cyclotomic index must be positive");
    if let Some(p) = cyclotomic_cache().read().unwrap().get(&d) {
        return p.clone();
    }
    let mut p = &IntPoly::q_pow(4 * d as i64) - &IntPoly::one();
    for e in 1..d {
        if d.is_multiple_of(e) {
            p = p.div_exact(&cyclotomic(e)).expect("cyclotomic factorization is exact");
        }
    }
    let p = Arc::new(p);
    cyclotomic_cache().write().unwrap().insert(d, p.clone());
    p
}

fn totient(d: u32) -> i64 {
    (1..=d).filter(|&k| num_integer::gcd(k, d) == 1).count() as i64
}

/// Signed monomial times a product of cyclotomic powers (exponents may be
/// negative).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloMonomial {
    pub negative: bool,
    pub shift: i64,
    pub phi: BTreeMap<u32, i32>,
}

impl CycloMonomial {
    pub fn one() -> Self {
        Self { negative: false, shift: 0, phi: BTreeMap::new() }
    }

    pub fn signed_monomial(negative: bool, shift: i64) -> Self {
        Self { negative, shift, phi: BTreeMap::new() }
    }

    /// `[m] = q^(-(m-1)/2) prod_{d | m, d > 1} Phi_d(q)`; `None` for `m = 0`.
    pub fn quantum_int(m: u32) -> Option<Self> {
        if m == 0 {
            return None;
        }
        let mut phi = BTreeMap::new();
        for d in 2..=m {
            if m.is_multiple_of(d) {
                phi.insert(d, 1);
            }
        }
        Some(Self { negative: false, shift: -2 * (m as i64 - 1), phi })
    }

    pub fn quantum_factorial(m: u32) -> Self {
        (1..=m).fold(Self::one(), |acc, t| acc.mul(&Self::quantum_int(t).unwrap()))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut phi = self.phi.clone();
        for (d, e) in &rhs.phi {
            let x = phi.entry(*d).or_insert(0);
            *x += e;
            if *x == 0 {
                phi.remove(d);
            }
        }
        Self { negative: self.negative ^ rhs.negative, shift: self.shift + rhs.shift, phi }
    }

    pub fn inv(&self) -> Self {
        Self {
            negative: self.negative,
            shift: -self.shift,
            phi: self.phi.iter().map(|(d, e)| (*d, -e)).collect(),
        }
    }

    pub fn negate_if(mut self, flag: bool) -> Self {
        self.negative ^= flag;
        self
    }

    /// Closed-form degrees: `Phi_d` contributes `[0, totient(d)]`.
    pub fn degree_bounds(&self) -> DegreeBounds {
        let top: i64 = self.phi.iter().map(|(d, e)| *e as i64 * totient(*d)).sum();
        let base = Rational64::new(self.shift, 4);
        DegreeBounds { d_minus: base, d_plus: base + Rational64::from(top) }
    }

    fn sign_poly(&self) -> IntPoly {
        let c = if self.negative { -BigInt::one() } else { BigInt::one() };
        IntPoly::monomial(self.shift, c)
    }

    /// Numerator and denominator polynomials (unreduced).
    pub fn expand(&self) -> (IntPoly, IntPoly) {
        let mut num = self.sign_poly();
        let mut den = IntPoly::one();
        for (d, e) in &self.phi {
            let f = cyclotomic(*d).pow(e.unsigned_abs());
            if *e > 0 {
                num = &num * &f;
            } else {
                den = &den * &f;
            }
        }
        (num, den)
    }
}

/// `monomial * poly`, an exact element of the fraction field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QValue {
    pub monomial: CycloMonomial,
    pub poly: IntPoly,
}

impl QValue {
    pub fn from_monomial(monomial: CycloMonomial) -> Self {
        Self { monomial, poly: IntPoly::one() }
    }

    pub fn from_poly(poly: IntPoly) -> Self {
        Self { monomial: CycloMonomial::one(), poly }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self { monomial: self.monomial.mul(&rhs.monomial), poly: &self.poly * &rhs.poly }
    }

    pub fn mul_monomial(&self, m: &CycloMonomial) -> Self {
        Self { monomial: self.monomial.mul(m), poly: self.poly.clone() }
    }

    pub fn mul_poly(&self, p: &IntPoly) -> Self {
        Self { monomial: self.monomial.clone(), poly: &self.poly * p }
    }

    /// Moves every cyclotomic factor of the denominator that divides the
    /// polynomial part into the monomial.
    pub fn reduce(mut self) -> Self {
        if self.poly.is_zero() {
            return self;
        }
        let negatives: Vec<u32> =
            self.monomial.phi.iter().filter(|(_, e)| **e < 0).map(|(d, _)| *d).collect();
        for d in negatives {
            let f = cyclotomic(d);
            while self.monomial.phi.get(&d).copied().unwrap_or(0) < 0 {
                match self.poly.div_exact(&f) {
                    Ok(q) => {
                        self.poly = q;
                        let e = self.monomial.phi.get_mut(&d).unwrap();
                        *e += 1;
                        if *e == 0 {
                            self.monomial.phi.remove(&d);
                        }
                    }
                    Err(_) => break,
                }
            }
        }
        self
    }

    /// Reduced numerator and denominator.
    pub fn expand(&self) -> (IntPoly, IntPoly) {
        let r = self.clone().reduce();
        let (n, d) = r.monomial.expand();
        (&n * &r.poly, d)
    }

    pub fn to_fraction(&self) -> LaurentFraction<BigRational> {
        if self.poly.is_zero() {
            return LaurentFraction::from_poly(Laurent::zero());
        }
        let (n, d) = self.expand();
        let to_q = |p: &IntPoly| p.map_coefficients(|c| BigRational::from_integer(c.clone()));
        LaurentFraction::from_coprime(to_q(&n), to_q(&d))
    }

    /// The value as a polynomial; fails when a denominator survives.
    pub fn to_polynomial(&self) -> Result<IntPoly> {
        let (n, d) = self.expand();
        if d.is_one() {
            Ok(n)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Degrees computed from the expanded numerator and denominator.
    pub fn degree_bounds(&self) -> Result<DegreeBounds> {
        let (n, d) = self.expand();
        let a = n.degree_bounds()?;
        let b = d.degree_bounds()?;
        Ok(DegreeBounds { d_minus: a.d_minus - b.d_minus, d_plus: a.d_plus - b.d_plus })
    }
}

/// Product of cyclotomic powers `prod Phi_d^e_d` for nonnegative exponents,
/// memoized within one summation.
struct PhiProducts {
    cache: HashMap<Vec<(u32, u32)>, IntPoly>,
}

impl PhiProducts {
    fn get(&mut self, key: Vec<(u32, u32)>) -> IntPoly {
        if let Some(p) = self.cache.get(&key) {
            return p.clone();
        }
        let mut p = IntPoly::one();
        for (d, e) in &key {
            p = &p * &cyclotomic(*d).pow(*e);
        }
        self.cache.insert(key, p.clone());
        p
    }
}

/// Adds values over their least common cyclotomic denominator.
pub fn sum_values<'a, I: IntoIterator<Item = &'a QValue>>(values: I) -> QValue {
    let values: Vec<&QValue> = values.into_iter().filter(|v| !v.is_zero()).collect();
    if values.is_empty() {
        return QValue::from_poly(IntPoly::zero());
    }
    let mut denom: BTreeMap<u32, i32> = BTreeMap::new();
    let mut min_shift = i64::MAX;
    for v in &values {
        min_shift = min_shift.min(v.monomial.shift);
        for (d, e) in &v.monomial.phi {
            if *e < 0 {
                let x = denom.entry(*d).or_insert(0);
                *x = (*x).max(-e);
            }
        }
    }
    let mut products = PhiProducts { cache: HashMap::new() };
    let mut total = IntPoly::zero();
    for v in values {
        let mut key: BTreeMap<u32, u32> = denom.iter().map(|(d, e)| (*d, *e as u32)).collect();
        for (d, e) in &v.monomial.phi {
            let x = key.entry(*d).or_insert(0);
            *x = (*x as i32 + e) as u32;
        }
        let key: Vec<(u32, u32)> = key.into_iter().filter(|(_, e)| *e > 0).collect();
        let mut term = &products.get(key) * &v.poly;
        term = term.shift(v.monomial.shift - min_shift);
        if v.monomial.negative {
            total.sub_assign_ref(&term);
        } else {
            total.add_assign_ref(&term);
        }
    }
    let monomial = CycloMonomial {
        negative: false,
        shift: min_shift,
        phi: denom.into_iter().map(|(d, e)| (d, -e)).collect(),
    };
    QValue { monomial, poly: total }.reduce()
}

/// Converts a rational-coefficient polynomial with integral coefficients.
pub fn integral(p: &Laurent<BigRational>) -> Result<IntPoly> {
    p.convert().ok_or(Error::InexactDivision)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).to_string(), "-1 + q^(1)");
        assert_eq!(cyclotomic(2).to_string(), "1 + q^(1)");
        assert_eq!(cyclotomic(6).to_string(), "1 - q^(1) + q^(2)");
        assert_eq!(cyclotomic(12).to_string(), "1 - q^(2) + q^(4)");
    }

    #[test]
    fn quantum_int_factorization() {
        let (n, d) = CycloMonomial::quantum_int(3).unwrap().expand();
        assert!(d.is_one());
        assert_eq!(n.to_string(), "q^(-1) + 1 + q^(1)");
        assert!(CycloMonomial::quantum_int(0).is_none());
    }

    #[test]
    fn sums_clear_denominators() {
        let two = CycloMonomial::quantum_int(2).unwrap();
        let a = QValue::from_monomial(two.inv());
        let b = QValue::from_monomial(two.inv().negate_if(true));
        assert!(sum_values([&a, &b]).is_zero());
        let s = sum_values([&a, &a]);
        assert_eq!(s.monomial.phi.get(&2), Some(&-1));
        let whole = sum_values([&QValue::from_monomial(two.clone()), &QValue::from_monomial(two)]);
        assert_eq!(whole.to_polynomial().unwrap().to_string(), "2*q^(-1/2) + 2*q^(1/2)");
    }
}
