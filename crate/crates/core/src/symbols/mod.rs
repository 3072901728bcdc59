//! Quantum integers, loop values, theta and tetrahedral symbols, twist
//! coefficients, and their closed-form degrees.

pub mod cyclo;

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

pub use cyclo::{cyclotomic, CycloMonomial, IntPoly, QValue};

use crate::error::{Error, Result};
use crate::laurent::{DegreeBounds, LaurentFraction};

/// Thread-safe memo table; values are pure functions of their keys.
pub(crate) struct Memo<K, V> {
    table: OnceLock<RwLock<HashMap<K, Arc<V>>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub(crate) const fn new() -> Self {
        Self { table: OnceLock::new() }
    }

    pub(crate) fn get_or_try<F: FnOnce() -> Result<V>>(&self, key: &K, f: F) -> Result<Arc<V>> {
        let table = self.table.get_or_init(Default::default);
        if let Some(v) = table.read().unwrap().get(key) {
            return Ok(v.clone());
        }
        let v = Arc::new(f()?);
        Ok(table.write().unwrap().entry(key.clone()).or_insert(v).clone())
    }
}

/// `[n]` as a polynomial; `[0] = 0`.
pub fn quantum_int(n: u32) -> IntPoly {
    match CycloMonomial::quantum_int(n) {
        Some(m) => m.expand().0,
        None => IntPoly::zero(),
    }
}

/// `[n]!`, memoized.
pub fn quantum_factorial(n: u32) -> Arc<IntPoly> {
    static MEMO: Memo<u32, IntPoly> = Memo::new();
    MEMO.get_or_try(&n, || Ok(CycloMonomial::quantum_factorial(n).expand().0)).unwrap()
}

/// Loop value `<n> = (-1)^n [n+1]` in factored form.
pub fn loop_monomial(n: u32) -> CycloMonomial {
    CycloMonomial::quantum_int(n + 1).unwrap().negate_if(n % 2 == 1)
}

/// Loop value `<n> = (-1)^n [n+1]`.
pub fn loop_value(n: u32) -> IntPoly {
    loop_monomial(n).expand().0
}

/// Labels `(s, t, u)` of a trivalent vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleTriple {
    s: u32,
    t: u32,
    u: u32,
}

impl AdmissibleTriple {
    pub fn new(s: u32, t: u32, u: u32) -> Result<Self> {
        let ok = (s + t + u).is_multiple_of(2) && s.abs_diff(t) <= u && u <= s + t;
        if ok {
            Ok(Self { s, t, u })
        } else {
            Err(Error::Inadmissible(format!("triple ({s}, {t}, {u})")))
        }
    }

    pub fn labels(&self) -> (u32, u32, u32) {
        (self.s, self.t, self.u)
    }
}

/// Theta value `<s,t,u>` in factored form.
pub fn theta_monomial(t: AdmissibleTriple) -> CycloMonomial {
    let AdmissibleTriple { s, t, u } = t;
    let i = (t + u - s) / 2;
    let j = (u + s - t) / 2;
    let k = (s + t - u) / 2;
    let f = CycloMonomial::quantum_factorial;
    f(i + j + k + 1)
        .mul(&f(i))
        .mul(&f(j))
        .mul(&f(k))
        .mul(&f(s).inv())
        .mul(&f(t).inv())
        .mul(&f(u).inv())
        .negate_if((i + j + k) % 2 == 1)
}

/// Theta value `<s,t,u>`; a rational function in general.
pub fn theta(t: AdmissibleTriple) -> LaurentFraction<BigRational> {
    QValue::from_monomial(theta_monomial(t)).to_fraction()
}

/// Labels of a tetrahedral symbol written as the matrix `[[A, B, E], [D, C, F]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TetLabels {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub e: u32,
    pub f: u32,
}

impl TetLabels {
    /// From the matrix rows `[A, B, E]` and `[D, C, F]`.
    pub fn from_rows(top: [u32; 3], bottom: [u32; 3]) -> Result<Self> {
        let l = Self { a: top[0], b: top[1], e: top[2], d: bottom[0], c: bottom[1], f: bottom[2] };
        l.validate()?;
        Ok(l)
    }

    pub fn rows(&self) -> ([u32; 3], [u32; 3]) {
        ([self.a, self.b, self.e], [self.d, self.c, self.f])
    }

    pub fn sigma(&self) -> u32 {
        self.a + self.b + self.c + self.d + self.e + self.f
    }

    fn face_sums(&self) -> [u32; 4] {
        [self.a + self.b + self.e, self.b + self.d + self.f, self.c + self.d + self.e, self.a + self.c + self.f]
    }

    fn opposite_sums(&self) -> [u32; 3] {
        let s = self.sigma();
        [s - self.a - self.d, s - self.e - self.f, s - self.b - self.c]
    }

    fn validate(&self) -> Result<()> {
        let even = self.face_sums().iter().chain(self.opposite_sums().iter()).all(|x| x % 2 == 0);
        if even && self.max_a() <= self.min_b() {
            Ok(())
        } else {
            Err(Error::Inadmissible(format!("tetrahedral labels {:?}", self.rows())))
        }
    }

    /// `a_1..a_4`.
    pub fn a_values(&self) -> [u32; 4] {
        self.face_sums().map(|x| x / 2)
    }

    /// `b_1..b_3`.
    pub fn b_values(&self) -> [u32; 3] {
        self.opposite_sums().map(|x| x / 2)
    }

    fn max_a(&self) -> u32 {
        self.face_sums().iter().map(|x| x / 2).max().unwrap()
    }

    /// `M = min b_i`.
    pub fn min_b(&self) -> u32 {
        self.opposite_sums().iter().map(|x| x / 2).min().unwrap()
    }

    fn edges(&self) -> [u32; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }
}

fn tet_compute(l: &TetLabels) -> QValue {
    let f = CycloMonomial::quantum_factorial;
    let a = l.a_values();
    let b = l.b_values();
    let mut prefactor = CycloMonomial::one();
    for bi in b {
        for aj in a {
            prefactor = prefactor.mul(&f(bi - aj));
        }
    }
    for x in l.edges() {
        prefactor = prefactor.mul(&f(x).inv());
    }
    let lo = *a.iter().max().unwrap();
    let hi = *b.iter().min().unwrap();
    let terms: Vec<QValue> = (lo..=hi)
        .map(|s| {
            let mut m = f(s + 1);
            for bi in b {
                m = m.mul(&f(bi - s).inv());
            }
            for aj in a {
                m = m.mul(&f(s - aj).inv());
            }
            QValue::from_monomial(m.negate_if(s % 2 == 1))
        })
        .collect();
    cyclo::sum_values(terms.iter()).mul_monomial(&prefactor).reduce()
}

/// Tetrahedral symbol in factored form, memoized.
pub fn tet_value(l: &TetLabels) -> Arc<QValue> {
    static MEMO: Memo<TetLabels, QValue> = Memo::new();
    MEMO.get_or_try(l, || Ok(tet_compute(l))).unwrap()
}

/// Tetrahedral symbol; a rational function in general.
pub fn tet(l: &TetLabels) -> LaurentFraction<BigRational> {
    tet_value(l).to_fraction()
}

/// `delta(u; s, t)` as a signed monomial.
pub fn twist_delta_monomial(u: u32, s: u32, t: u32) -> Result<CycloMonomial> {
    AdmissibleTriple::new(s, t, u)?;
    let (u, s, t) = (u as i64, s as i64, t as i64);
    let num = -(u * u - s * s - t * t + 2 * u - 2 * s - 2 * t);
    if num % 2 != 0 {
        return Err(Error::OffGrid(format!("delta({u}; {s}, {t}) exponent {num}/8")));
    }
    Ok(CycloMonomial::signed_monomial((s + t + u) / 2 % 2 == 1, num / 2))
}

/// `delta(u; s, t)`.
pub fn twist_delta(u: u32, s: u32, t: u32) -> Result<IntPoly> {
    Ok(twist_delta_monomial(u, s, t)?.expand().0)
}

/// Symbols with a closed-form degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Loop(u32),
    Theta(u32, u32, u32),
    /// Matrix rows `[A, B, E]`, `[D, C, F]`.
    Tet([u32; 3], [u32; 3]),
    Delta(u32, u32, u32),
}

/// Degree of the tetrahedral symbol from its closed form.
pub fn tet_degree_closed_form(l: &TetLabels) -> DegreeBounds {
    let r = |x: u32| Rational64::from(x as i64);
    let sigma = r(l.sigma());
    let squares: Rational64 = l.edges().iter().map(|&x| r(x) * r(x)).sum();
    let bs: Rational64 = l.b_values().iter().map(|&b| r(b) * (r(b) - 1)).sum();
    let as_: Rational64 = l.a_values().iter().map(|&a| r(a) * (r(a) + 1)).sum();
    let m = r(l.min_b());
    let half = Rational64::new(1, 2);
    let inner = -sigma * sigma - half * (squares - sigma) + Rational64::new(3, 2) * bs + as_ - m * m * 3
        + m * (sigma * 2 + 1);
    let d = half * inner;
    DegreeBounds { d_minus: -d, d_plus: d }
}

/// Closed-form degree of a symbol, without computing it.
pub fn predicted_symbol_degrees(kind: SymbolKind) -> Result<DegreeBounds> {
    let sym = |x: Rational64| DegreeBounds { d_minus: -x, d_plus: x };
    match kind {
        SymbolKind::Loop(n) => Ok(sym(Rational64::new(n as i64, 2))),
        SymbolKind::Theta(s, t, u) => {
            AdmissibleTriple::new(s, t, u)?;
            Ok(sym(Rational64::new((s + t + u) as i64, 4)))
        }
        SymbolKind::Tet(top, bottom) => Ok(tet_degree_closed_form(&TetLabels::from_rows(top, bottom)?)),
        SymbolKind::Delta(u, s, t) => {
            let m = twist_delta_monomial(u, s, t)?;
            let d = Rational64::new(m.shift, 4);
            Ok(DegreeBounds { d_minus: d, d_plus: d })
        }
    }
}

/// Computed degree of a symbol from its expanded value.
pub fn computed_symbol_degrees(kind: SymbolKind) -> Result<DegreeBounds> {
    match kind {
        SymbolKind::Loop(n) => loop_value(n).degree_bounds(),
        SymbolKind::Theta(s, t, u) => theta(AdmissibleTriple::new(s, t, u)?).degree_bounds(),
        SymbolKind::Tet(top, bottom) => tet(&TetLabels::from_rows(top, bottom)?).degree_bounds(),
        SymbolKind::Delta(u, s, t) => twist_delta(u, s, t)?.degree_bounds(),
    }
}

/// Converts an integer polynomial to rational coefficients.
pub fn to_rational_poly(p: &IntPoly) -> crate::laurent::Laurent<BigRational> {
    p.map_coefficients(|c: &BigInt| BigRational::from_integer(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn frac(p: IntPoly) -> LaurentFraction<BigRational> {
        LaurentFraction::from_poly(to_rational_poly(&p))
    }

    #[test]
    fn quantum_basics() {
        assert!(quantum_int(0).is_zero());
        assert!(quantum_int(1).is_one());
        assert!(quantum_factorial(0).is_one());
        assert_eq!(quantum_int(3), poly("q^(-1) + 1 + q"));
        assert_eq!(loop_value(3), -&quantum_int(4));
        assert_eq!(quantum_int(2).to_string(), "q^(-1/2) + q^(1/2)");
    }

    #[test]
    fn theta_examples() {
        let t = |s, u, v| theta(AdmissibleTriple::new(s, u, v).unwrap());
        assert_eq!(t(0, 0, 0), frac(IntPoly::one()));
        assert_eq!(t(2, 2, 0), frac(quantum_int(3)));
        assert_eq!(t(1, 1, 0), frac(-&quantum_int(2)));
        assert!(AdmissibleTriple::new(1, 1, 1).is_err());
        assert!(AdmissibleTriple::new(1, 4, 1).is_err());
    }

    #[test]
    fn theta_is_not_always_polynomial() {
        let t = theta(AdmissibleTriple::new(2, 2, 2).unwrap());
        assert!(t.as_polynomial().is_none());
    }

    #[test]
    fn tet_examples() {
        let l = |top, bottom| tet(&TetLabels::from_rows(top, bottom).unwrap());
        assert_eq!(l([0, 0, 0], [0, 0, 0]), frac(IntPoly::one()));
        assert_eq!(l([2, 2, 0], [1, 1, 1]), frac(quantum_int(3)));
        assert_eq!(l([2, 2, 0], [1, 1, 3]), frac(-&quantum_int(4)));
        assert!(TetLabels::from_rows([1, 0, 0], [0, 0, 0]).is_err());
    }

    #[test]
    fn delta_examples() {
        assert!(twist_delta(0, 0, 0).unwrap().is_one());
        assert_eq!(twist_delta(4, 2, 2).unwrap(), poly("q^(-1)"));
        assert_eq!(twist_delta(0, 1, 1).unwrap(), poly("-q^(3/4)"));
        assert!(twist_delta(1, 1, 1).is_err());
    }

    #[test]
    fn predicted_examples() {
        let b = predicted_symbol_degrees(SymbolKind::Theta(1, 1, 2)).unwrap();
        assert_eq!((b.d_minus, b.d_plus), ((-1).into(), 1.into()));
        let b = predicted_symbol_degrees(SymbolKind::Loop(3)).unwrap();
        assert_eq!(b.d_plus, Rational64::new(3, 2));
        let kind = SymbolKind::Tet([2, 2, 0], [1, 1, 1]);
        assert_eq!(predicted_symbol_degrees(kind).unwrap(), computed_symbol_degrees(kind).unwrap());
        assert_eq!(predicted_symbol_degrees(kind).unwrap().d_plus, 1.into());
    }
}
