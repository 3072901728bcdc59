//! Normalized colored Jones polynomial of Mazur doubles as a double sum of
//! recoupling terms, normalization transitions and leading signs.
//!
//! `<n> J'_{M(K),n} = sum_{j,k,l} g(j,k,l) J'_{K,l}` where the coefficient of
//! `J'_{K,l}` in `g` depends only on `(j, k, l, n)`. Summing those
//! coefficients over `(j, k)` gives a kernel `W_l(n)` shared by all
//! companions, so `<n> J'_{M(K),n} = sum_l W_l(n) J'_{K,l}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::{BigRational, Rational64};
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::degrees::{QuasiQuadratic, Scalar};
use crate::error::{Error, Result};
use crate::knotdata::KnotProfile;
use crate::laurent::{DegreeBounds, LaurentFraction};
use crate::symbols::cyclo::sum_values;
use crate::symbols::{
    loop_monomial, tet_value, theta_monomial, twist_delta_monomial, AdmissibleTriple, CycloMonomial, IntPoly, QValue,
    TetLabels,
};

/// Framing factor of the double sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Framing {
    /// `delta(0; n, n)^(-3) = (-1)^n q^(-3n(n+2)/4)`.
    Corrected,
    /// `q^(-3n(n+2)/4)` without the sign.
    AsDisplayed,
}

/// Summation index `(j, k, l)` at color `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MazurTermIndex {
    pub j: u32,
    pub k: u32,
    pub l: u32,
    pub n: u32,
}

impl MazurTermIndex {
    pub fn new(j: u32, k: u32, l: u32, n: u32) -> Result<Self> {
        let ok = j <= n && k <= n && j <= 2 * k && (2 * k).abs_diff(n) <= l && l <= 2 * k + n && (n + l).is_multiple_of(2);
        if ok {
            Ok(Self { j, k, l, n })
        } else {
            Err(Error::Inadmissible(format!("index (j, k, l, n) = ({j}, {k}, {l}, {n})")))
        }
    }

    /// All valid indices at color `n`, ordered by `(j, k, l)`.
    pub fn all(n: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for j in 0..=n {
            for k in 0..=n {
                for l in (2 * k).abs_diff(n)..=2 * k + n {
                    if let Ok(idx) = Self::new(j, k, l, n) {
                        out.push(idx);
                    }
                }
            }
        }
        out
    }
}

fn theta_inv(s: u32, t: u32, u: u32) -> Result<CycloMonomial> {
    Ok(theta_monomial(AdmissibleTriple::new(s, t, u)?).inv())
}

/// Factors of `g` that depend on `(j, k, n)` only.
fn jk_part(j: u32, k: u32, n: u32, framing: Framing) -> Result<QValue> {
    let mut m = loop_monomial(2 * k)
        .mul(&theta_inv(n, n, 2 * k)?)
        .mul(&loop_monomial(2 * j))
        .mul(&theta_inv(n, n, 2 * j)?)
        .mul(&theta_inv(2 * k, 2 * k, 2 * j)?);
    let dj = twist_delta_monomial(2 * j, n, n)?;
    m = m.mul(&dj).mul(&dj).mul(&twist_delta_monomial(2 * k, n, n)?.inv());
    let framing_sign = framing == Framing::Corrected && n % 2 == 1;
    m = m.mul(&CycloMonomial::signed_monomial(framing_sign, -3 * n as i64 * (n as i64 + 2)));
    let tet = tet_value(&TetLabels::from_rows([2 * k, 2 * k, 2 * j], [n, n, n])?);
    Ok(tet.mul_monomial(&m))
}

/// Factors of `g` that involve `l`, apart from `J'_{K,l}`.
fn l_part(idx: &MazurTermIndex) -> Result<QValue> {
    let MazurTermIndex { j, k, l, n } = *idx;
    let m = loop_monomial(l).mul(&theta_inv(2 * k, n, l)?);
    Ok(tet_value(&TetLabels::from_rows([2 * k, 2 * k, 2 * j], [n, n, l])?).mul_monomial(&m))
}

/// The coefficient of `J'_{K,l}` in `g(j, k, l)`.
pub fn g_coefficient(idx: &MazurTermIndex, framing: Framing) -> Result<QValue> {
    let idx = MazurTermIndex::new(idx.j, idx.k, idx.l, idx.n)?;
    Ok(jk_part(idx.j, idx.k, idx.n, framing)?.mul(&l_part(&idx)?))
}

/// `g(j, k, l; q)` with the corrected framing.
pub fn g_term(idx: &MazurTermIndex, knot: &KnotProfile) -> Result<LaurentFraction<BigRational>> {
    g_term_with(idx, knot, Framing::Corrected)
}

pub fn g_term_with(idx: &MazurTermIndex, knot: &KnotProfile, framing: Framing) -> Result<LaurentFraction<BigRational>> {
    let c = g_coefficient(idx, framing)?;
    Ok(c.mul_poly(&*knot.eval(idx.l)?).to_fraction())
}

/// Closed-form `d_-, d_+` of `g(j, k, l)` given the degrees of `J'_{K,l}`.
pub fn g_degree_closed_form(idx: &MazurTermIndex, companion: DegreeBounds) -> DegreeBounds {
    let r = |x: u32| Rational64::from(x as i64);
    let (j, k, l, n) = (r(idx.j), r(idx.k), r(idx.l), r(idx.n));
    let half = Rational64::new(1, 2);
    let two = r(2);
    let base = half * (-two * j - two * j * j + k + k * k - two * n - n * n);
    let spread = half * (-two * k - n * Rational64::new(5, 2) + l * half);
    let tet_l = if j <= (n - l) * half + k {
        half * (j + k + l * half + n * half)
    } else {
        half * (-j * j + two * j * k - k * k + two * k - j * l + k * l + j * n - k * n - l * l / 4 + n * l * half
            - n * n / 4
            + n)
    };
    let tet_n = if j <= k { half * (j + k + n) } else { half * (-j * j + two * j * k - k * k + two * k + n) };
    let sym = spread + tet_l + tet_n;
    DegreeBounds { d_minus: base - sym + companion.d_minus, d_plus: base + sym + companion.d_plus }
}

type Kernel = Vec<(u32, QValue)>;
type KernelCache = RwLock<HashMap<(u32, Framing), Arc<Kernel>>>;

fn kernel_cache() -> &'static KernelCache {
    static CACHE: OnceLock<KernelCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `W_l(n)` for every `l` with a valid index, ascending in `l`.
pub fn kernel(n: u32, framing: Framing) -> Result<Arc<Kernel>> {
    if let Some(k) = kernel_cache().read().unwrap().get(&(n, framing)) {
        return Ok(k.clone());
    }
    let pairs: Vec<(u32, u32)> =
        (0..=n).flat_map(|k| (0..=n.min(2 * k)).map(move |j| (j, k))).collect();
    let partial: Vec<Vec<(u32, QValue)>> = pairs
        .par_iter()
        .map(|&(j, k)| {
            let common = jk_part(j, k, n, framing)?;
            ((2 * k).abs_diff(n)..=2 * k + n)
                .step_by(2)
                .map(|l| Ok((l, common.mul(&l_part(&MazurTermIndex::new(j, k, l, n)?)?))))
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut by_l: BTreeMap<u32, Vec<QValue>> = BTreeMap::new();
    for (l, v) in partial.into_iter().flatten() {
        by_l.entry(l).or_default().push(v);
    }
    let kernel: Kernel = by_l.into_par_iter().map(|(l, vs)| (l, sum_values(vs.iter()))).collect();
    let kernel = Arc::new(kernel);
    kernel_cache().write().unwrap().insert((n, framing), kernel.clone());
    Ok(kernel)
}

fn divide_by_loop(total: QValue, n: u32) -> Result<IntPoly> {
    total.mul_monomial(&loop_monomial(n).inv()).reduce().to_polynomial()
}

/// `J'_{M(K),n}` with the corrected framing.
pub fn mazur_normalized_cj(knot: &KnotProfile, n: u32) -> Result<IntPoly> {
    mazur_normalized_cj_with(knot, n, Framing::Corrected)
}

pub fn mazur_normalized_cj_with(knot: &KnotProfile, n: u32, framing: Framing) -> Result<IntPoly> {
    if let Some(max) = knot.provider.max_color() {
        if 3 * n > max {
            return Err(Error::MissingColor { color: 3 * n, max });
        }
    }
    let kernel = kernel(n, framing)?;
    let terms: Vec<QValue> = kernel
        .par_iter()
        .map(|(l, w)| Ok(w.mul_poly(&*knot.eval(*l)?)))
        .collect::<Result<_>>()?;
    divide_by_loop(sum_values(terms.iter()), n)
}

/// `J'_{M(K),n}` from the individual terms `g(j, k, l)` in the given order,
/// without the shared kernel.
pub fn mazur_from_terms(knot: &KnotProfile, indices: &[MazurTermIndex], framing: Framing) -> Result<IntPoly> {
    let n = indices.first().map_or(0, |i| i.n);
    let terms: Vec<QValue> = indices
        .iter()
        .map(|idx| Ok(g_coefficient(idx, framing)?.mul_poly(&*knot.eval(idx.l)?)))
        .collect::<Result<_>>()?;
    divide_by_loop(sum_values(terms.iter()), n)
}

/// Which degree a normalization transition acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Max,
    Min,
}

/// `delta(n) = delta'(n - 1) + n/2 - 1/2` (max) or
/// `delta*(n) = delta'*(n - 1) - n/2 + 1/2` (min).
pub fn to_unnormalized<T: Scalar>(primed: &QuasiQuadratic<T>, side: Side) -> QuasiQuadratic<T> {
    let half = T::from_ratio(1, 2);
    match side {
        Side::Max => primed.shifted(-1, half.clone(), -half),
        Side::Min => primed.shifted(-1, -half.clone(), half),
    }
}

/// `delta'(n) = delta(n + 1) - n/2` (max) or `delta'*(n) = delta*(n + 1) + n/2` (min).
pub fn to_normalized<T: Scalar>(unprimed: &QuasiQuadratic<T>, side: Side) -> QuasiQuadratic<T> {
    let half = T::from_ratio(1, 2);
    match side {
        Side::Max => unprimed.shifted(1, -half, T::zero()),
        Side::Min => unprimed.shifted(1, half, T::zero()),
    }
}

/// `J_{K,n+1} = (-1)^n <n> J'_{K,n} = [n+1] J'_{K,n}`.
pub fn unnormalize_poly(primed: &IntPoly, n: u32) -> IntPoly {
    let (num, _) = CycloMonomial::quantum_int(n + 1).unwrap().expand();
    &num * primed
}

/// `J'_{K,n} = J_{K,n+1} / [n+1]`, exactly.
pub fn normalize_poly(unprimed: &IntPoly, n: u32) -> Result<IntPoly> {
    let (num, _) = CycloMonomial::quantum_int(n + 1).unwrap().expand();
    unprimed.div_exact(&num)
}

/// Sign of the top coefficient.
pub fn leading_sign(p: &IntPoly) -> Result<i8> {
    let (_, top) = p.leading_coefficients()?;
    Ok(if top.is_negative() { -1 } else { 1 })
}

/// Whether `signs[m] == signs[n]` whenever `m = n (mod 2)`.
pub fn signs_periodic(signs: &[i8]) -> bool {
    signs.iter().enumerate().all(|(i, s)| signs.get(i + 2).is_none_or(|t| t == s))
}

/// One row of the sign comparison for a Mazur double.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignRow {
    pub n: u32,
    pub mazur: i8,
    /// `(-1)^(3n) eps'(K, 3n)`.
    pub steep: i8,
    /// `(-1)^n eps'(K, n)`.
    pub flat: i8,
}

/// Leading signs of `J'_{M(K),n}` next to the two predicted expressions.
pub fn sign_rows(knot: &KnotProfile, ns: &[u32], framing: Framing) -> Result<Vec<SignRow>> {
    ns.par_iter()
        .map(|&n| {
            let parity = if n % 2 == 1 { -1 } else { 1 };
            Ok(SignRow {
                n,
                mazur: leading_sign(&mazur_normalized_cj_with(knot, n, framing)?)?,
                steep: parity * leading_sign(&*knot.eval(3 * n)?)?,
                flat: parity * leading_sign(&*knot.eval(n)?)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_validation() {
        assert!(MazurTermIndex::new(0, 0, 0, 0).is_ok());
        assert!(MazurTermIndex::new(0, 1, 2, 1).is_err());
        assert!(MazurTermIndex::new(3, 1, 1, 3).is_err());
        assert!(MazurTermIndex::new(0, 1, 1, 1).is_ok());
    }

    #[test]
    fn trivial_color() {
        let idx = MazurTermIndex::new(0, 0, 0, 0).unwrap();
        assert!(g_term(&idx, &KnotProfile::unknot()).unwrap().as_polynomial().unwrap().is_one());
        assert!(mazur_normalized_cj(&KnotProfile::trefoil(), 0).unwrap().is_one());
    }

    #[test]
    fn transitions() {
        let r = |a: i64, b: i64| Rational64::new(a, b);
        let zero = QuasiQuadratic::uniform(r(0, 1), r(0, 1), r(0, 1));
        assert_eq!(to_unnormalized(&zero, Side::Max), QuasiQuadratic::uniform(r(0, 1), r(1, 2), r(-1, 2)).with_onset(1));
        let q = QuasiQuadratic::by_parity([r(5, 1), r(5, 1), r(5, 1)], [r(1, 1), r(0, 1), r(0, 1)]);
        let p = to_normalized(&q, Side::Max);
        assert_eq!(p.class(0), &[r(1, 1), r(3, 2), r(1, 1)]);
        for side in [Side::Max, Side::Min] {
            assert_eq!(to_normalized(&to_unnormalized(&q, side), side), q);
        }
    }
}
