use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

use crate::error::{Error, Result};

/// Exact-capable ordered scalar used for degree data.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).unwrap() / Self::from_i64(den).unwrap()
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}

/// Quadratic quasi-polynomial of period 1 or 2.
///
/// `eval(n)` uses the triple `(a, b, c)` of residue class `n mod period`.
#[derive(Clone, PartialEq)]
pub struct QuasiQuadratic<T> {
    coeffs: Vec<[T; 3]>,
    onset: u32,
}

impl<T: Scalar> QuasiQuadratic<T> {
    pub fn new(coeffs: Vec<[T; 3]>, onset: u32) -> Result<Self> {
        match coeffs.len() {
            1 | 2 => Ok(Self { coeffs, onset }),
            p => Err(Error::Unsupported(format!("quasi-polynomial period {p}"))),
        }
    }

    pub fn uniform(a: T, b: T, c: T) -> Self {
        Self { coeffs: vec![[a, b, c]], onset: 0 }
    }

    /// Period-2 from the even-class and odd-class triples.
    pub fn by_parity(even: [T; 3], odd: [T; 3]) -> Self {
        Self { coeffs: vec![even, odd], onset: 0 }
    }

    pub fn with_onset(mut self, onset: u32) -> Self {
        self.onset = onset;
        self
    }

    pub fn period(&self) -> usize {
        self.coeffs.len()
    }

    pub fn onset(&self) -> u32 {
        self.onset
    }

    /// Triple of residue class `i` (taken mod the period).
    pub fn class(&self, i: usize) -> &[T; 3] {
        &self.coeffs[i % self.coeffs.len()]
    }

    pub fn eval(&self, n: i64) -> T {
        let [a, b, c] = self.class(n.rem_euclid(2) as usize).clone();
        let x = T::from_i64(n).unwrap();
        a * x.clone() * x.clone() + b * x + c
    }

    /// Period-2 form, duplicating a period-1 triple.
    pub fn as_period2(&self) -> Self {
        Self { coeffs: vec![self.class(0).clone(), self.class(1).clone()], onset: self.onset }
    }

    /// Collapses to period 1 when both classes agree.
    pub fn simplified(&self) -> Self {
        if self.coeffs.len() == 2 && self.coeffs[0] == self.coeffs[1] {
            Self { coeffs: vec![self.coeffs[0].clone()], onset: self.onset }
        } else {
            self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|t| t.clone().map(|x| -x)).collect(),
            onset: self.onset,
        }
    }

    /// `n -> Q(n + s) + lin * n + cst`, class by class.
    pub fn shifted(&self, s: i64, lin: T, cst: T) -> Self {
        let p = self.period();
        let st = T::from_i64(s).unwrap();
        let coeffs = (0..p)
            .map(|i| {
                let [a, b, c] = self.class((i as i64 + s).rem_euclid(2) as usize).clone();
                let two = T::from_i64(2).unwrap();
                [
                    a.clone(),
                    two * a.clone() * st.clone() + b.clone() + lin.clone(),
                    a * st.clone() * st.clone() + b * st.clone() + c + cst.clone(),
                ]
            })
            .collect();
        let onset = (self.onset as i64 - s).max(0) as u32;
        Self { coeffs, onset }
    }

    /// Sum `a + b + c` of class `i`.
    pub fn coefficient_sum(&self, i: usize) -> T {
        let [a, b, c] = self.class(i).clone();
        a + b + c
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> QuasiQuadratic<U> {
        QuasiQuadratic {
            coeffs: self.coeffs.iter().map(|t| [f(&t[0]), f(&t[1]), f(&t[2])]).collect(),
            onset: self.onset,
        }
    }
}

impl<T: Scalar> Debug for QuasiQuadratic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuasiQuadratic({self})")
    }
}

impl<T: Scalar> Display for QuasiQuadratic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let triple = |t: &[T; 3]| format!("({}, {}, {})", t[0], t[1], t[2]);
        if self.coeffs.len() == 1 {
            write!(f, "{} from n = {}", triple(&self.coeffs[0]), self.onset)
        } else {
            write!(
                f,
                "even {}, odd {} from n = {}",
                triple(&self.coeffs[0]),
                triple(&self.coeffs[1]),
                self.onset
            )
        }
    }
}

fn quadratic_through<T: Scalar>(pts: &[(i64, T)]) -> [T; 3] {
    let t = |v: i64| T::from_i64(v).unwrap();
    let (x0, y0) = (t(pts[0].0), pts[0].1.clone());
    let (x1, y1) = (t(pts[1].0), pts[1].1.clone());
    let (x2, y2) = (t(pts[2].0), pts[2].1.clone());
    let d01 = (y1.clone() - y0.clone()) / (x1.clone() - x0.clone());
    let d12 = (y2 - y1) / (x2.clone() - x1.clone());
    let a = (d12 - d01.clone()) / (x2 - x0.clone());
    let b = d01 - a.clone() * (x0.clone() + x1);
    let c = y0 - a.clone() * x0.clone() * x0.clone() - b.clone() * x0;
    [a, b, c]
}

/// Fits a quasi-quadratic of the given period to the longest exactly
/// matching tail of the samples.
///
/// Each residue class needs at least four samples, and its last four must
/// lie on one quadratic.
pub fn fit_quasi<T: Scalar>(samples: &[(u32, T)], period: usize) -> Result<QuasiQuadratic<T>> {
    if !(1..=2).contains(&period) {
        return Err(Error::Unsupported(format!("quasi-polynomial period {period}")));
    }
    let mut classes: Vec<BTreeMap<u32, T>> = vec![BTreeMap::new(); period];
    for (n, y) in samples {
        classes[*n as usize % period].insert(*n, y.clone());
    }
    let mut coeffs = Vec::with_capacity(period);
    let mut last_bad: Option<u32> = None;
    for (i, class) in classes.iter().enumerate() {
        if class.len() < 4 {
            return Err(Error::NoStableFit(format!("class {i} has {} samples, need 4", class.len())));
        }
        let pts: Vec<(i64, T)> = class.iter().rev().take(3).map(|(n, y)| (*n as i64, y.clone())).collect();
        let triple = quadratic_through(&pts);
        let q = QuasiQuadratic::uniform(triple[0].clone(), triple[1].clone(), triple[2].clone());
        let mismatches: Vec<u32> =
            class.iter().filter(|(n, y)| q.eval(**n as i64) != **y).map(|(n, _)| *n).collect();
        let fourth = *class.keys().rev().nth(3).unwrap();
        if mismatches.contains(&fourth) {
            return Err(Error::NoStableFit(format!("class {i}: last four samples are not quadratic")));
        }
        if let Some(&m) = mismatches.iter().max() {
            last_bad = Some(last_bad.map_or(m, |b: u32| b.max(m)));
        }
        coeffs.push(triple);
    }
    let onset = match last_bad {
        None => samples.iter().map(|s| s.0).min().unwrap(),
        Some(b) => samples.iter().map(|s| s.0).filter(|&n| n > b).min().unwrap(),
    };
    QuasiQuadratic::new(coeffs, onset)
}

/// Fits with period 1 when that is at least as stable as period 2, else period 2.
pub fn fit_quasi_auto<T: Scalar>(samples: &[(u32, T)]) -> Result<QuasiQuadratic<T>> {
    let one = fit_quasi(samples, 1);
    let two = fit_quasi(samples, 2).map(|q| q.simplified());
    match (one, two) {
        (Ok(a), Ok(b)) => Ok(if a.onset() <= b.onset() { a } else { b }),
        (Ok(a), Err(_)) => Ok(a),
        (Err(_), Ok(b)) => Ok(b),
        (Err(e), Err(_)) => Err(e),
    }
}

/// `(delta, delta*) -> (-delta*, -delta)`: the degree profile of the mirror image.
pub fn mirror_profile<T: Scalar>(
    max: &QuasiQuadratic<T>,
    min: &QuasiQuadratic<T>,
) -> (QuasiQuadratic<T>, QuasiQuadratic<T>) {
    (min.neg(), max.neg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    type Q = QuasiQuadratic<Rational64>;

    fn r(n: i64) -> Rational64 {
        Rational64::from(n)
    }

    #[test]
    fn fits_pure_square() {
        let s: Vec<_> = (1..=8).map(|n| (n, r((n * n) as i64))).collect();
        let q = fit_quasi(&s, 1).unwrap();
        assert_eq!(q, Q::uniform(r(1), r(0), r(0)).with_onset(1));
    }

    #[test]
    fn parity_needs_period_two() {
        let s: Vec<_> = (1..=10u32).map(|n| (n, r((n * n + (n % 2 == 0) as u32) as i64))).collect();
        assert!(fit_quasi(&s, 1).is_err());
        let q = fit_quasi_auto(&s).unwrap();
        assert_eq!(q.period(), 2);
        assert_eq!(q.class(0), &[r(1), r(0), r(1)]);
    }

    #[test]
    fn corrupted_prefix_moves_onset() {
        let mut s: Vec<_> = (1..=12u32).map(|n| (n, r(3 * n as i64 - 2))).collect();
        s[2].1 = r(100);
        let q = fit_quasi(&s, 1).unwrap();
        assert_eq!(q.onset(), 4);
    }

    #[test]
    fn too_few_samples() {
        let s: Vec<_> = (1..=3u32).map(|n| (n, r(0))).collect();
        assert!(matches!(fit_quasi(&s, 1), Err(Error::NoStableFit(_))));
        assert!(matches!(fit_quasi(&s, 3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn float_instances_evaluate() {
        let q = QuasiQuadratic::<f64>::uniform(0.5, -1.0, 2.0);
        assert_eq!(q.eval(4), 6.0);
    }
}
