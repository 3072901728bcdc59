//! Jones diameter, crossing-number bounds for Mazur doubles, and the
//! coefficient test for A-adequacy.
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::degrees::{fit_knot_degrees, fit_quasi_auto, mazur_degrees, QuasiQuadratic, FIT_COLORS};
use crate::error::{Error, Result};
use crate::knotdata::{DiagramStats, KnotProfile};
use crate::mazur::{to_unnormalized, Side};

type R = Rational64;

/// `max_i 4 |a_i - a*_i|` over the residue classes.
pub fn jones_diameter(max: &QuasiQuadratic<R>, min: &QuasiQuadratic<R>) -> R {
    (0..2)
        .map(|i| (max.class(i)[0] - min.class(i)[0]).abs() * 4)
        .max()
        .unwrap_or_else(R::zero)
}

/// Unnormalized `d_+[J_{K,n}]` and `d_-[J_{K,n}]`: stored on the profile if
/// present, fitted otherwise.
pub fn companion_degrees(knot: &KnotProfile) -> Result<(QuasiQuadratic<R>, QuasiQuadratic<R>)> {
    if let (Some(max), Some(min)) = (&knot.max_degree, &knot.min_degree) {
        return Ok((max.clone(), min.clone()));
    }
    let fit = fit_knot_degrees(knot, FIT_COLORS)?;
    Ok((to_unnormalized(&fit.max, Side::Max), to_unnormalized(&fit.min, Side::Min)))
}

/// Diameter relation and crossing bounds for `M(K)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossingReport {
    pub knot: String,
    pub delta_max: QuasiQuadratic<R>,
    pub delta_min: QuasiQuadratic<R>,
    pub dj_k: R,
    /// `9 dj_K + 2`.
    pub dj_m: R,
    pub lower: i64,
    pub upper: i64,
    pub c: u32,
    pub writhe: i64,
    pub c_plus: u32,
    pub c_minus: u32,
    /// Failed hypotheses; empty when the bounds are certified.
    pub violations: Vec<String>,
}

impl CrossingReport {
    pub fn certified(&self) -> bool {
        self.violations.is_empty()
    }

    /// Every value in `lower..=upper` when `wr = 0`, which is then two values.
    pub fn candidates(&self) -> Option<Vec<i64>> {
        (self.writhe == 0).then(|| (self.lower..=self.upper).collect())
    }

    pub fn require_certified(self) -> Result<Self> {
        if self.certified() {
            Ok(self)
        } else {
            Err(Error::HypothesisViolation(self.violations.join("; ")))
        }
    }

    /// `{38, 39}` or `[29, 48]`.
    pub fn range_text(&self) -> String {
        match self.candidates() {
            Some(v) => format!("{{{}}}", v.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")),
            None => format!("[{}, {}]", self.lower, self.upper),
        }
    }
}

fn hypothesis_violations(max: &QuasiQuadratic<R>, min: &QuasiQuadratic<R>, stats: &DiagramStats) -> Vec<String> {
    let mut out = Vec::new();
    let twelfth = R::new(-1, 12);
    for i in 0..2 {
        let [a, b, _] = *max.class(i);
        let [sa, sb, _] = *min.class(i);
        if !a.is_positive() {
            out.push(format!("a_{i} = {a} is not positive"));
        }
        if sa >= twelfth {
            out.push(format!("a*_{i} = {sa} is not below -1/12"));
        }
        if b.is_positive() {
            out.push(format!("b_{i} = {b} is positive"));
        }
        if sb.is_negative() {
            out.push(format!("b*_{i} = {sb} is negative"));
        }
    }
    let [a1, b1, c1] = *min.class(1);
    if (a1 + b1 + c1).is_negative() {
        out.push(format!("a*_1 + b*_1 + c*_1 = {} is negative", a1 + b1 + c1));
    }
    if stats.c_plus == 0 {
        out.push("c_+ = 0".into());
    }
    if stats.c_minus == 0 {
        out.push("c_- = 0".into());
    }
    out
}

/// `dj_K`, `dj_M = 9 dj_K + 2` and `9c + 2 <= c(M(K)) <= 9c + 3 + 6|wr|`.
///
/// Violated hypotheses are listed rather than raised; see
/// [`CrossingReport::require_certified`].
pub fn diameter_and_bounds(knot: &KnotProfile) -> Result<CrossingReport> {
    let stats = knot.stats.ok_or_else(|| Error::MissingData(format!("{}: no diagram stats", knot.name)))?;
    let (delta_max, delta_min) = companion_degrees(knot)?;
    let dj_k = jones_diameter(&delta_max, &delta_min);
    let c = stats.c as i64;
    Ok(CrossingReport {
        knot: knot.name.clone(),
        violations: hypothesis_violations(&delta_max, &delta_min, &stats),
        delta_max,
        delta_min,
        dj_k,
        dj_m: dj_k * 9 + 2,
        lower: 9 * c + 2,
        upper: 9 * c + 3 + 6 * stats.writhe.abs(),
        c: stats.c,
        writhe: stats.writhe,
        c_plus: stats.c_plus,
        c_minus: stats.c_minus,
    })
}

impl fmt::Display for CrossingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "knot\t{}", self.knot)?;
        writeln!(f, "c\t{}", self.c)?;
        writeln!(f, "wr\t{}", self.writhe)?;
        writeln!(f, "c_plus\t{}", self.c_plus)?;
        writeln!(f, "c_minus\t{}", self.c_minus)?;
        writeln!(f, "delta\t{}", self.delta_max)?;
        writeln!(f, "delta*\t{}", self.delta_min)?;
        writeln!(f, "dj_K\t{}", self.dj_k)?;
        writeln!(f, "dj_M\t{}", self.dj_m)?;
        writeln!(f, "c(M(K))\t{}", self.range_text())?;
        for v in &self.violations {
            writeln!(f, "violation\t{v}")?;
        }
        write!(f, "certified\t{}", if self.certified() { "yes" } else { "no" })
    }
}

/// Degrees and diameter of `M(K)` fitted from exact computation.
#[derive(Clone, Debug, PartialEq)]
pub struct MazurDiameter {
    /// Unnormalized `d_+[J_{M(K),n}]`.
    pub delta_max: QuasiQuadratic<R>,
    /// Unnormalized `d_-[J_{M(K),n}]`.
    pub delta_min: QuasiQuadratic<R>,
    pub dj_m: R,
}

/// Fits both degrees of `J'_{M(K),n}` over `window` and takes the diameter.
pub fn mazur_diameter(knot: &KnotProfile, window: &[u32]) -> Result<MazurDiameter> {
    let fit = |side| -> Result<QuasiQuadratic<R>> {
        let samples = mazur_degrees(knot, side, window)?;
        Ok(to_unnormalized(&fit_quasi_auto(&samples)?, side))
    };
    let delta_max = fit(Side::Max)?;
    let delta_min = fit(Side::Min)?;
    let dj_m = jones_diameter(&delta_max, &delta_min);
    Ok(MazurDiameter { delta_max, delta_min, dj_m })
}

/// Which case of the coefficient argument applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdequacyBranch {
    /// `c_- > 0`: steep minimum degree.
    NegativeCrossings,
    /// `c_- = 0`: flat minimum degree.
    NoNegativeCrossings,
}

impl fmt::Display for AdequacyBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdequacyBranch::NegativeCrossings => "c_- > 0",
            AdequacyBranch::NoNegativeCrossings => "c_- = 0",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdequacyVerdict {
    NotAAdequate,
    /// The coefficients are compatible with an A-adequate diagram.
    Inconclusive,
}

impl fmt::Display for AdequacyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdequacyVerdict::NotAAdequate => "not A-adequate",
            AdequacyVerdict::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of [`adequacy_test`].
#[derive(Clone, Debug, PartialEq)]
pub struct AdequacyReport {
    pub branch: AdequacyBranch,
    /// `a* + b* + c*` per residue class of `n`.
    pub sums: [R; 2],
    /// Obstructions found; empty means inconclusive.
    pub reasons: Vec<String>,
    pub verdict: AdequacyVerdict,
}

/// An A-adequate diagram has `d_-[J_{n}]` a single polynomial on `n >= 1`
/// with half-integral leading term and coefficient sum `0` (as `J_1 = 1`
/// has `d_- = 0` at `n = 1`). Any failure rules A-adequacy out.
pub fn adequacy_test(delta_min: &QuasiQuadratic<R>, stats: &DiagramStats) -> AdequacyReport {
    let q = delta_min.as_period2();
    let sums = [q.coefficient_sum(0), q.coefficient_sum(1)];
    let mut reasons = Vec::new();
    if q.class(0) != q.class(1) {
        reasons.push("residue classes differ".to_string());
    }
    for (i, s) in sums.iter().enumerate() {
        if !s.is_zero() {
            reasons.push(format!("class {i} coefficient sum {s} is nonzero"));
        }
        if !(q.class(i)[0] * 2).is_integer() {
            reasons.push(format!("class {i} leading coefficient {} is not half-integral", q.class(i)[0]));
        }
    }
    let branch = if stats.c_minus > 0 { AdequacyBranch::NegativeCrossings } else { AdequacyBranch::NoNegativeCrossings };
    let verdict = if reasons.is_empty() { AdequacyVerdict::Inconclusive } else { AdequacyVerdict::NotAAdequate };
    AdequacyReport { branch, sums, reasons, verdict }
}

impl fmt::Display for AdequacyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "branch\t{}", self.branch)?;
        writeln!(f, "sums\t{} {}", self.sums[0], self.sums[1])?;
        for r in &self.reasons {
            writeln!(f, "reason\t{r}")?;
        }
        write!(f, "verdict\t{}", self.verdict)
    }
}
