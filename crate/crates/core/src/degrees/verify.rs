use std::fmt;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::knotdata::KnotProfile;
use crate::mazur::{mazur_normalized_cj, Side};

use super::predict::{predict_max, predict_min, Branch, MinOptions, Prediction};
use super::quasi::{fit_quasi_auto, QuasiQuadratic};

/// Colors sampled when fitting a companion's degrees.
pub const FIT_COLORS: u32 = 16;

/// Fitted normalized degrees `delta'_K` and `delta'*_K`.
#[derive(Clone, Debug, PartialEq)]
pub struct KnotDegrees {
    pub max: QuasiQuadratic<Rational64>,
    pub min: QuasiQuadratic<Rational64>,
}

impl KnotDegrees {
    pub fn side(&self, side: Side) -> &QuasiQuadratic<Rational64> {
        match side {
            Side::Max => &self.max,
            Side::Min => &self.min,
        }
    }
}

/// Fits `d_+` and `d_-` of `J'_{K,l}` over `l = 1..=colors`.
pub fn fit_knot_degrees(knot: &KnotProfile, colors: u32) -> Result<KnotDegrees> {
    let bounds = (1..=colors)
        .into_par_iter()
        .map(|l| Ok((l, knot.eval(l)?.degree_bounds()?)))
        .collect::<Result<Vec<_>>>()?;
    let max: Vec<_> = bounds.iter().map(|(l, b)| (*l, b.d_plus)).collect();
    let min: Vec<_> = bounds.iter().map(|(l, b)| (*l, b.d_minus)).collect();
    Ok(KnotDegrees { max: fit_quasi_auto(&max)?, min: fit_quasi_auto(&min)? })
}

/// `d_+` or `d_-` of `J'_{M(K),n}` for each `n` in the window.
pub fn mazur_degrees(knot: &KnotProfile, side: Side, window: &[u32]) -> Result<Vec<(u32, Rational64)>> {
    window
        .par_iter()
        .map(|&n| {
            let b = mazur_normalized_cj(knot, n)?.degree_bounds()?;
            Ok((n, if side == Side::Max { b.d_plus } else { b.d_minus }))
        })
        .collect()
}

/// Prediction of `delta'_{M(K)}` or `delta'*_{M(K)}` from the companion's
/// normalized degrees.
pub fn predict_side(companion: &QuasiQuadratic<Rational64>, side: Side) -> Result<(Prediction<Rational64>, Vec<String>)> {
    match side {
        Side::Max => Ok((predict_max(companion, true)?, Vec::new())),
        Side::Min => {
            let eventual_only = companion.onset() > 1;
            match predict_min(companion, true, MinOptions { eventual_only, ..Default::default() }) {
                Err(Error::InvalidBranch(msg)) => {
                    let mut p = predict_min(companion, true, MinOptions::default())?;
                    p.warnings.push(format!("profile holds only from color {}: {msg}", companion.onset()));
                    Ok((p, vec![msg]))
                }
                other => Ok((other?, Vec::new())),
            }
        }
    }
}

/// Outcome of a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Agree,
    Mismatch,
    /// Hypotheses fail, so disagreement is not a failure.
    OutOfScope,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Agree => "agree",
            Verdict::Mismatch => "mismatch",
            Verdict::OutOfScope => "out-of-scope",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyRow {
    pub n: u32,
    pub computed: String,
    pub predicted: String,
    pub matches: bool,
}

/// Computed versus predicted degrees of a Mazur double over a window.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub knot: String,
    pub side: Side,
    pub companion: QuasiQuadratic<Rational64>,
    pub prediction: Prediction<Rational64>,
    pub rows: Vec<VerifyRow>,
    /// First `n` from which every row in the window agrees.
    pub onset: Option<u32>,
    pub verdict: Verdict,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Mismatch
    }

    pub fn branches(&self) -> [Branch; 2] {
        self.prediction.branches
    }
}

/// Whether the top three rows of each residue class agree.
fn tail_agrees(rows: &[VerifyRow]) -> bool {
    (0..2).all(|i| {
        rows.iter().rev().filter(|r| r.n % 2 == i).take(3).all(|r| r.matches)
    })
}

/// Checks the normalized degree prediction against exact computation.
pub fn verify(knot: &KnotProfile, side: Side, window: &[u32]) -> Result<VerifyReport> {
    if window.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let mut window = window.to_vec();
    window.sort_unstable();
    window.dedup();
    let companion = fit_knot_degrees(knot, FIT_COLORS.max(3 * window.last().unwrap() / 2))?;
    let companion = companion.side(side).clone();
    let (prediction, _) = predict_side(&companion, side)?;
    let rows: Vec<VerifyRow> = mazur_degrees(knot, side, &window)?
        .into_iter()
        .map(|(n, d)| {
            let p = prediction.quasi.eval(n as i64);
            VerifyRow { n, computed: d.to_string(), predicted: p.to_string(), matches: d == p }
        })
        .collect();
    let onset = rows
        .iter()
        .rposition(|r| !r.matches)
        .map_or(Some(window[0]), |i| rows.get(i + 1).map(|r| r.n));
    let verdict = if tail_agrees(&rows) {
        Verdict::Agree
    } else if !prediction.hypotheses_hold() {
        Verdict::OutOfScope
    } else {
        Verdict::Mismatch
    };
    Ok(VerifyReport { knot: knot.name.clone(), side, companion, prediction, rows, onset, verdict })
}

/// Jones slope of one residue class of a Mazur double, with the values the
/// closed forms allow.
#[derive(Clone, Debug, PartialEq)]
pub struct SlopeCheck {
    pub class: usize,
    pub companion_slope: Rational64,
    pub mazur_slope: Rational64,
    /// `{36a, 4a}` on the max side, `{36a* - 2, -5}` on the min side.
    pub allowed: [Rational64; 2],
    /// The value the branch of this class dictates.
    pub expected: Rational64,
}

impl SlopeCheck {
    pub fn ok(&self) -> bool {
        self.mazur_slope == self.expected
    }
}

/// Compares the fitted slopes of a Mazur double with the companion's.
pub fn slope_inclusion(
    companion: &QuasiQuadratic<Rational64>,
    mazur: &QuasiQuadratic<Rational64>,
    side: Side,
) -> Result<Vec<SlopeCheck>> {
    let four = Rational64::from(4);
    let prediction = match side {
        Side::Max => predict_max(companion, true)?,
        Side::Min => predict_min(companion, true, MinOptions::default())?,
    };
    Ok((0..2)
        .map(|i| {
            let a = companion.class(i)[0];
            let allowed = match side {
                Side::Max => [four * 9 * a, four * a],
                Side::Min => [four * 9 * a - 2, Rational64::from(-5)],
            };
            let expected = match (side, prediction.branches[i]) {
                (_, Branch::Steep) => allowed[0],
                (Side::Max, _) => allowed[1],
                (Side::Min, _) => allowed[1],
            };
            SlopeCheck { class: i, companion_slope: four * a, mazur_slope: four * mazur.class(i)[0], allowed, expected }
        })
        .collect())
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = if self.side == Side::Max { "max" } else { "min" };
        writeln!(f, "knot\t{}", self.knot)?;
        writeln!(f, "side\t{side}")?;
        writeln!(f, "companion\t{}", self.companion)?;
        writeln!(f, "predicted\t{}", self.prediction.quasi)?;
        writeln!(f, "branches\t{} {}", self.prediction.branches[0], self.prediction.branches[1])?;
        for w in &self.prediction.warnings {
            writeln!(f, "warning\t{w}")?;
        }
        writeln!(f, "n\tcomputed\tpredicted\tmatch")?;
        for r in &self.rows {
            writeln!(f, "{}\t{}\t{}\t{}", r.n, r.computed, r.predicted, if r.matches { "yes" } else { "no" })?;
        }
        match self.onset {
            Some(n) => writeln!(f, "onset\t{n}")?,
            None => writeln!(f, "onset\tnone")?,
        }
        write!(f, "verdict\t{}", self.verdict)
    }
}
