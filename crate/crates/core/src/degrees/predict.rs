use std::fmt;

use crate::error::{Error, Result};
use crate::mazur::{to_normalized, to_unnormalized, Side};

use super::quasi::{QuasiQuadratic, Scalar};

/// Which formula a residue class falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Leading coefficient multiplied by 9.
    Steep,
    /// Leading coefficient kept (max side) or the universal `-5/4` (min side).
    Flat,
    /// Min side with leading coefficient exactly `-1/12`.
    Critical,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Steep => "steep",
            Branch::Flat => "flat",
            Branch::Critical => "critical",
        })
    }
}

/// Which constant terms the unnormalized minimum-degree formula uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MinConstants {
    /// Obtained by transporting the normalized formula through the
    /// normalization transition.
    #[default]
    Transported,
    /// The closed form as printed, with `C_0 = 3/4`,
    /// `C_1 = 4a*_0 + 2b*_0 + c*_0 + 1/2` and steep constant
    /// `4a* - 2b* + c* + 1/2`.
    Displayed,
}

/// Options for [`predict_min`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MinOptions {
    /// The companion profile is only known to hold eventually.
    pub eventual_only: bool,
    pub constants: MinConstants,
}

/// Helper quantities of the minimum-degree analysis, in normalized form.
#[derive(Clone, Debug, PartialEq)]
pub struct MinDegreeAuxiliary<T> {
    /// `h_A(l) = (alpha*_i + 1/12) l^2 + (beta*_i - 1/3) l + gamma*_i` for
    /// `l >= 1`, per class.
    pub h_a: [[T; 3]; 2],
    /// `h_A(0)`.
    pub h_a_zero: T,
    /// `h_B(l) = l^2/8 - l/2 + d_-[J'_{K,l}]` on odd `l`, i.e.
    /// `(alpha*_1 + 1/8) l^2 + (beta*_1 - 1/2) l + gamma*_1`.
    pub h_b: [T; 3],
    /// `C_0, C_1` of the unnormalized statement.
    pub c: [T; 2],
    /// `C'_0, C'_1` of the normalized statement.
    pub c_prime: [T; 2],
    /// Sign of `12 alpha*_i + 1` per class.
    pub gate_a: [i8; 2],
    /// Sign of `8 alpha*_1 + 1`.
    pub gate_b: i8,
}

impl<T: Scalar> MinDegreeAuxiliary<T> {
    /// Built from the normalized minimum-degree profile `delta'*_K`.
    pub fn new(primed: &QuasiQuadratic<T>) -> Self {
        let r = T::from_ratio;
        let unprimed = to_unnormalized(primed, Side::Min);
        let [a1, b1, g1] = primed.class(1).clone();
        let h_a = [0, 1].map(|i| {
            let [a, b, g] = primed.class(i).clone();
            [a + r(1, 12), b - r(1, 3), g]
        });
        let [ua0, ub0, uc0] = unprimed.class(0).clone();
        let two = r(2, 1);
        let sign = |x: T| if x.is_positive() { 1 } else if x.is_negative() { -1 } else { 0 };
        Self {
            h_a,
            h_a_zero: T::zero(),
            h_b: [a1.clone() + r(1, 8), b1.clone() - r(1, 2), g1.clone()],
            c: [r(3, 4), r(4, 1) * ua0 + two * ub0 + uc0 + r(1, 2)],
            c_prime: [T::zero(), a1.clone() + b1 + g1 - r(1, 4)],
            gate_a: [0, 1].map(|i| sign(r(12, 1) * primed.class(i)[0].clone() + T::one())),
            gate_b: sign(r(8, 1) * a1 + T::one()),
        }
    }

    pub fn h_a(&self, l: u32) -> T {
        if l == 0 {
            return self.h_a_zero.clone();
        }
        eval3(&self.h_a[(l % 2) as usize], l)
    }

    pub fn h_b(&self, l: u32) -> T {
        eval3(&self.h_b, l)
    }
}

fn eval3<T: Scalar>(t: &[T; 3], l: u32) -> T {
    let x = T::from_u32(l).unwrap();
    t[0].clone() * x.clone() * x.clone() + t[1].clone() * x + t[2].clone()
}

/// A predicted degree of `J_{M(K),n}` or `J'_{M(K),n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Prediction<T: Scalar> {
    pub quasi: QuasiQuadratic<T>,
    /// Branch per residue class of `n`.
    pub branches: [Branch; 2],
    /// Hypotheses of the closed form that the input violates.
    pub warnings: Vec<String>,
    pub auxiliary: Option<MinDegreeAuxiliary<T>>,
}

impl<T: Scalar> Prediction<T> {
    pub fn hypotheses_hold(&self) -> bool {
        self.warnings.is_empty()
    }
}

fn check_period<T: Scalar>(q: &QuasiQuadratic<T>) -> Result<()> {
    if q.period() > 2 {
        return Err(Error::Unsupported(format!("period {}", q.period())));
    }
    Ok(())
}

/// Maximum degree of the Mazur double from the companion's maximum degree.
///
/// With `normalized`, `profile` is `delta'_K` and the result is
/// `delta'_{M(K)}`; otherwise both are unnormalized.
pub fn predict_max<T: Scalar>(profile: &QuasiQuadratic<T>, normalized: bool) -> Result<Prediction<T>> {
    check_period(profile)?;
    let r = T::from_ratio;
    let mut warnings = Vec::new();
    let mut branches = [Branch::Flat; 2];
    let mut out = Vec::with_capacity(2);
    for (i, branch) in branches.iter_mut().enumerate() {
        let [a, b, c] = profile.class(i).clone();
        let steep = a.is_positive();
        *branch = if steep { Branch::Steep } else { Branch::Flat };
        if normalized {
            if (-r(2, 1) * a.clone() + b.clone() + r(1, 2)).is_positive() {
                warnings.push(format!("class {i}: -2 alpha + beta + 1/2 > 0"));
            }
            if a.is_zero() && b == r(-1, 2) {
                warnings.push(format!("class {i}: alpha = 0 with beta = -1/2"));
            }
            out.push(if steep {
                [r(9, 1) * a, r(3, 1) * b, c]
            } else {
                [a, b - T::one(), c]
            });
        } else {
            if b.is_positive() {
                warnings.push(format!("class {i}: b > 0"));
            }
            if a.is_zero() && b.is_zero() {
                warnings.push(format!("class {i}: a = 0 with b = 0"));
            }
            out.push(if steep {
                [
                    r(9, 1) * a.clone(),
                    r(-12, 1) * a.clone() + r(3, 1) * b.clone() - T::one(),
                    r(4, 1) * a - r(2, 1) * b + c + T::one(),
                ]
            } else {
                [a, b - T::one(), c + T::one()]
            });
        }
    }
    Ok(Prediction {
        quasi: QuasiQuadratic::new(out, 0)?.simplified(),
        branches,
        warnings,
        auxiliary: None,
    })
}

fn min_branch<T: Scalar>(a: &T) -> Branch {
    let cut = T::from_ratio(-1, 12);
    if *a < cut {
        Branch::Steep
    } else if *a == cut {
        Branch::Critical
    } else {
        Branch::Flat
    }
}

fn predict_min_primed<T: Scalar>(
    primed: &QuasiQuadratic<T>,
    eventual_only: bool,
    critical_as_steep: bool,
    warnings: &mut Vec<String>,
) -> Result<(QuasiQuadratic<T>, [Branch; 2], MinDegreeAuxiliary<T>)> {
    let r = T::from_ratio;
    let aux = MinDegreeAuxiliary::new(primed);
    let mut branches = [Branch::Flat; 2];
    let mut out = Vec::with_capacity(2);
    for (i, branch) in branches.iter_mut().enumerate() {
        let [a, b, c] = primed.class(i).clone();
        *branch = min_branch(&a);
        if eventual_only && *branch != Branch::Steep {
            return Err(Error::InvalidBranch(format!(
                "class {i}: leading coefficient {a} >= -1/12 needs the profile for all colors"
            )));
        }
        if (-r(2, 1) * a.clone() + b.clone() + r(1, 2)).is_negative() {
            warnings.push(format!("class {i}: -2 alpha* + beta* + 1/2 < 0"));
        }
        if (b.clone() - r(2, 1) * a.clone() - r(1, 2)).is_negative() {
            warnings.push(format!("class {i}: beta* - 2 alpha* - 1/2 < 0 (unnormalized b* < 0)"));
        }
        if *branch == Branch::Critical && b == r(-1, 3) {
            warnings.push(format!("class {i}: alpha* = -1/12 with beta* = -1/3"));
        }
        let steep = *branch == Branch::Steep || (critical_as_steep && *branch == Branch::Critical);
        out.push(match steep {
            true => [r(9, 1) * a - r(1, 2), r(3, 1) * b - r(5, 2), c],
            false => [r(-5, 4), r(-3, 2), aux.c_prime[i].clone()],
        });
    }
    if primed.class(0)[2].is_negative() {
        warnings.push("gamma*_0 < 0".into());
    }
    Ok((QuasiQuadratic::new(out, 0)?, branches, aux))
}

/// Minimum degree of the Mazur double from the companion's minimum degree.
///
/// With `normalized`, `profile` is `delta'*_K` and the result is
/// `delta'*_{M(K)}`; otherwise both are unnormalized and
/// `options.constants` selects the constant terms.
pub fn predict_min<T: Scalar>(
    profile: &QuasiQuadratic<T>,
    normalized: bool,
    options: MinOptions,
) -> Result<Prediction<T>> {
    check_period(profile)?;
    let mut warnings = Vec::new();
    if normalized {
        let (quasi, branches, aux) = predict_min_primed(profile, options.eventual_only, false, &mut warnings)?;
        return Ok(Prediction { quasi: quasi.simplified(), branches, warnings, auxiliary: Some(aux) });
    }

    let r = T::from_ratio;
    for i in 0..2 {
        let [a, b, _] = profile.class(i).clone();
        if b.is_negative() {
            warnings.push(format!("class {i}: b* < 0"));
        }
        if a == r(-1, 12) && b.is_zero() {
            warnings.push(format!("class {i}: a* = -1/12 with b* = 0"));
        }
    }
    if profile.coefficient_sum(1).is_negative() {
        warnings.push("a*_1 + b*_1 + c*_1 < 0".into());
    }
    let branches = [0, 1].map(|i| min_branch(&profile.class(i)[0]));
    if options.eventual_only {
        if let Some(i) = branches.iter().position(|b| *b == Branch::Flat) {
            return Err(Error::InvalidBranch(format!(
                "class {i}: leading coefficient {} > -1/12 needs the profile for all colors",
                profile.class(i)[0]
            )));
        }
    }
    let primed = to_normalized(profile, Side::Min);
    let mut inner = Vec::new();
    let (primed_pred, _, aux) = predict_min_primed(&primed, false, options.eventual_only, &mut inner)?;
    let quasi = match options.constants {
        MinConstants::Transported => to_unnormalized(&primed_pred.as_period2(), Side::Min).with_onset(0),
        MinConstants::Displayed => {
            let out = (0..2)
                .map(|i| {
                    let [a, b, c] = profile.class(i).clone();
                    let steep = branches[i] == Branch::Steep
                        || (options.eventual_only && branches[i] == Branch::Critical);
                    match steep {
                        true => [
                            r(9, 1) * a.clone() - r(1, 2),
                            r(-12, 1) * a.clone() + r(3, 1) * b.clone() - r(1, 2),
                            r(4, 1) * a - r(2, 1) * b + c + r(1, 2),
                        ],
                        false => [r(-5, 4), r(1, 2), r(-1, 2) + aux.c[(i + 1) % 2].clone()],
                    }
                })
                .collect();
            QuasiQuadratic::new(out, 0)?
        }
    };
    Ok(Prediction { quasi: quasi.simplified(), branches, warnings, auxiliary: Some(aux) })
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use super::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    fn uni(a: Rational64, b: Rational64, c: Rational64) -> QuasiQuadratic<Rational64> {
        QuasiQuadratic::uniform(a, b, c)
    }

    #[test]
    fn max_examples() {
        let p = predict_max(&uni(r(1, 2), r(-1, 1), r(0, 1)), false).unwrap();
        assert_eq!(p.quasi, uni(r(9, 2), r(-10, 1), r(5, 1)));
        let p = predict_max(&uni(r(0, 1), r(-1, 1), r(0, 1)), false).unwrap();
        assert_eq!(p.quasi, uni(r(0, 1), r(-2, 1), r(1, 1)));
        assert_eq!(p.branches, [Branch::Flat; 2]);
        let p = predict_max(&uni(r(1, 1), r(-1, 1), r(2, 1)), true).unwrap();
        assert_eq!(p.quasi, uni(r(9, 1), r(-3, 1), r(2, 1)));
        let p = predict_max(&uni(r(0, 1), r(0, 1), r(0, 1)), false).unwrap();
        assert!(!p.hypotheses_hold());
    }

    #[test]
    fn max_forms_agree_under_transition() {
        let k = QuasiQuadratic::by_parity([r(3, 2), r(-1, 1), r(1, 3)], [r(-1, 4), r(-2, 1), r(5, 1)]);
        let direct = predict_max(&k, false).unwrap().quasi;
        let via = to_unnormalized(&predict_max(&to_normalized(&k, Side::Max), true).unwrap().quasi.as_period2(), Side::Max).with_onset(0);
        assert_eq!(direct.as_period2(), via.as_period2());
    }

    #[test]
    fn min_steep_constants() {
        let k = uni(r(-1, 1), r(1, 1), r(0, 1));
        let t = predict_min(&k, false, MinOptions::default()).unwrap();
        assert_eq!(t.quasi, uni(r(-19, 2), r(29, 2), r(-5, 1)));
        let d = predict_min(&k, false, MinOptions { constants: MinConstants::Displayed, ..Default::default() }).unwrap();
        assert_eq!(d.quasi, uni(r(-19, 2), r(29, 2), r(-11, 2)));
        assert_eq!(t.branches, [Branch::Steep; 2]);
    }

    #[test]
    fn min_flat_and_auxiliary() {
        let k = uni(r(0, 1), r(1, 1), r(0, 1));
        let p = predict_min(&k, true, MinOptions::default()).unwrap();
        assert_eq!(p.quasi, QuasiQuadratic::by_parity([r(-5, 4), r(-3, 2), r(0, 1)], [r(-5, 4), r(-3, 2), r(3, 4)]));
        let aux = p.auxiliary.unwrap();
        assert_eq!(aux.h_a(0), r(0, 1));
        assert_eq!(aux.h_a(2), r(1, 12) * 4 + r(2, 3) * 2);
        assert_eq!(aux.c_prime[0], r(0, 1));
        assert_eq!(aux.gate_a, [1, 1]);
        assert_eq!(aux.gate_b, 1);
        let d = predict_min(&k, false, MinOptions { constants: MinConstants::Displayed, ..Default::default() }).unwrap();
        assert_eq!(d.quasi.class(1)[2], r(-1, 2) + aux.c[0]);
    }

    #[test]
    fn min_guards() {
        let k = uni(r(0, 1), r(1, 1), r(0, 1));
        let eventual = MinOptions { eventual_only: true, ..Default::default() };
        assert!(matches!(predict_min(&k, true, eventual), Err(Error::InvalidBranch(_))));
        assert!(predict_min(&uni(r(-1, 1), r(0, 1), r(0, 1)), true, eventual).is_ok());
        let neg = predict_min(&uni(r(-1, 1), r(-1, 1), r(0, 1)), false, MinOptions::default()).unwrap();
        assert!(neg.warnings.iter().any(|w| w.contains("b* < 0")));
        let crit = predict_min(&uni(r(-1, 12), r(1, 1), r(0, 1)), true, MinOptions::default()).unwrap();
        assert_eq!(crit.branches, [Branch::Critical; 2]);
    }
}
