//! Essential surfaces in the exterior of the two-bridge link `[2, 1, 4]`
//! along the seven minimal edge paths to `5/14`, and the Euler
//! characteristic arithmetic of surfaces glued across the satellite torus.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::mazur::Side;

/// One of the seven minimal edge paths `gamma_1 .. gamma_7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathId(u8);

impl PathId {
    pub const ALL: [PathId; 7] = [PathId(1), PathId(2), PathId(3), PathId(4), PathId(5), PathId(6), PathId(7)];

    pub fn new(i: u8) -> Result<Self> {
        if (1..=7).contains(&i) {
            Ok(PathId(i))
        } else {
            Err(Error::Unsupported(format!("edge path gamma_{i}")))
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    fn row(self) -> &'static Row {
        &TABLE[self.0 as usize - 1]
    }

    pub fn branch_pattern(self) -> &'static str {
        self.row().pattern
    }
}

impl fmt::Display for PathId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gamma_{}", self.0)
    }
}

/// A boundary slope on one link component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational64),
    /// `1/0`.
    Meridian,
    /// The surface misses this component.
    Disjoint,
}

impl Slope {
    /// Slope after exchanging meridian and longitude.
    pub fn inverted(self) -> Self {
        match self {
            Slope::Finite(x) if x.is_zero() => Slope::Meridian,
            Slope::Finite(x) => Slope::Finite(x.recip()),
            Slope::Meridian => Slope::Finite(Rational64::zero()),
            Slope::Disjoint => Slope::Disjoint,
        }
    }

    pub fn finite(self) -> Option<Rational64> {
        match self {
            Slope::Finite(x) => Some(x),
            _ => None,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(x) => write!(f, "{x}"),
            Slope::Meridian => f.write_str("1/0"),
            Slope::Disjoint => f.write_str("disjoint"),
        }
    }
}

#[derive(Clone, Copy)]
enum Ratio {
    /// `beta / alpha`
    BA,
    /// `alpha / beta`
    AB,
}

/// `mult * ratio + add`, or a constant when `ratio` is absent.
#[derive(Clone, Copy)]
struct SlopeForm {
    mult: i64,
    ratio: Option<Ratio>,
    add: i64,
}

/// `gcd(mb * beta, ma * alpha)`, or a bare weight.
#[derive(Clone, Copy)]
enum CountForm {
    Gcd { mb: i64, ma: i64 },
    Alpha,
    Beta,
}

struct Row {
    pattern: &'static str,
    /// `chi = ca * alpha + cb * beta`.
    chi: (i64, i64),
    slopes: [SlopeForm; 2],
    counts: [CountForm; 2],
}

const fn sf(mult: i64, ratio: Ratio, add: i64) -> SlopeForm {
    SlopeForm { mult, ratio: Some(ratio), add }
}

const fn konst(add: i64) -> SlopeForm {
    SlopeForm { mult: 0, ratio: None, add }
}

const G11: [CountForm; 2] = [CountForm::Gcd { mb: 1, ma: 1 }, CountForm::Gcd { mb: 1, ma: 1 }];
const G33: [CountForm; 2] = [CountForm::Gcd { mb: 3, ma: 1 }, CountForm::Gcd { mb: 1, ma: 3 }];

static TABLE: [Row; 7] = [
    Row { pattern: "ADAADAADA", chi: (-2, -2), slopes: [sf(3, Ratio::BA, 0), sf(3, Ratio::AB, 0)], counts: G33 },
    Row { pattern: "ADAADDA", chi: (-2, 0), slopes: [sf(-1, Ratio::BA, 0), sf(-1, Ratio::AB, 0)], counts: G11 },
    Row { pattern: "ADAABBA", chi: (-1, -1), slopes: [sf(1, Ratio::BA, -2), sf(1, Ratio::AB, -2)], counts: G11 },
    Row { pattern: "ADAADAADA", chi: (-2, -2), slopes: [sf(1, Ratio::BA, 0), sf(1, Ratio::AB, 0)], counts: G11 },
    Row { pattern: "ADCDDA", chi: (-2, 1), slopes: [sf(-3, Ratio::BA, 0), sf(-3, Ratio::AB, -2)], counts: G33 },
    Row { pattern: "ADCBBA", chi: (-1, 0), slopes: [sf(-1, Ratio::BA, -2), sf(-1, Ratio::AB, -4)], counts: G11 },
    Row { pattern: "ABBCBBA", chi: (-1, 0), slopes: [konst(-5), konst(-3)], counts: [CountForm::Alpha, CountForm::Beta] },
];

fn eval_slope(form: SlopeForm, alpha: i64, beta: i64) -> Slope {
    let (num, den) = match form.ratio {
        None => return Slope::Finite(Rational64::from(form.add)),
        Some(Ratio::BA) => (beta, alpha),
        Some(Ratio::AB) => (alpha, beta),
    };
    if den == 0 {
        Slope::Meridian
    } else {
        Slope::Finite(Rational64::new(form.mult * num, den) + form.add)
    }
}

fn eval_count(form: CountForm, alpha: i64, beta: i64) -> i64 {
    match form {
        CountForm::Gcd { mb, ma } => (mb * beta).gcd(&(ma * alpha)),
        CountForm::Alpha => alpha,
        CountForm::Beta => beta,
    }
}

/// A catalog surface at given weights.
///
/// Pairs are indexed by link component `(k_1, k_2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceRecord {
    pub path: PathId,
    pub branch_pattern: &'static str,
    pub alpha: i64,
    pub beta: i64,
    pub chi: i64,
    pub slopes: [Slope; 2],
    pub counts: [i64; 2],
    /// Evaluated with the weights and components exchanged (`alpha < beta`).
    pub swapped: bool,
}

impl SurfaceRecord {
    /// Slope on component `c` (0 or 1) read in the solid torus whose
    /// meridian is that component's longitude.
    pub fn solid_torus_slope(&self, c: usize) -> Slope {
        self.slopes[c].inverted()
    }

    /// Whether both weights are even.
    pub fn even_weights(&self) -> bool {
        self.alpha % 2 == 0 && self.beta % 2 == 0
    }
}

/// Evaluates a catalog row at weights `(alpha, beta)`.
pub fn catalog_eval(path: PathId, alpha: i64, beta: i64) -> Result<SurfaceRecord> {
    if alpha < 0 || beta < 0 || (alpha == 0 && beta == 0) {
        return Err(Error::InvalidWeights(format!("({alpha}, {beta})")));
    }
    let swapped = alpha < beta;
    let (a, b) = if swapped { (beta, alpha) } else { (alpha, beta) };
    let row = path.row();
    let chi = row.chi.0 * a + row.chi.1 * b;
    let mut slopes = row.slopes.map(|f| eval_slope(f, a, b));
    let mut counts = row.counts.map(|f| eval_count(f, a, b));
    if path.0 == 7 && b == 0 {
        slopes[1] = Slope::Disjoint;
    }
    if swapped {
        slopes.swap(0, 1);
        counts.swap(0, 1);
    }
    Ok(SurfaceRecord { path, branch_pattern: row.pattern, alpha, beta, chi, slopes, counts, swapped })
}

/// The full catalog at one weight pair.
pub fn catalog(alpha: i64, beta: i64) -> Result<Vec<SurfaceRecord>> {
    PathId::ALL.iter().map(|&p| catalog_eval(p, alpha, beta)).collect()
}

/// Which construction realizes a Jones slope of the Mazur double.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceCase {
    /// Max side, `a >= 1/12`: `gamma_1`, pattern on `k_2`.
    MaxSteepWide,
    /// Max side, `0 < a < 1/12`: `gamma_1`, pattern on `k_1`.
    MaxSteepNarrow,
    /// Max side, `-1/4 <= a <= 0`: `gamma_2`, pattern on `k_1`.
    MaxFlat,
    /// Max side, `a < -1/4`: `gamma_2`, pattern on `k_2`.
    MaxBelowQuarter,
    /// Min side, `a* < -1/12`: `gamma_5`, pattern on `k_2`.
    MinSteep,
    /// Min side, `a* >= -1/12`: `gamma_7` at `(2, 0)`, pattern on `k_1`.
    MinFlat,
}

impl fmt::Display for SurfaceCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceCase::MaxSteepWide => "max/gamma_1/a>=1/12",
            SurfaceCase::MaxSteepNarrow => "max/gamma_1/0<a<1/12",
            SurfaceCase::MaxFlat => "max/gamma_2/-1/4<=a<=0",
            SurfaceCase::MaxBelowQuarter => "max/gamma_2/a<-1/4",
            SurfaceCase::MinSteep => "min/gamma_5/a*<-1/12",
            SurfaceCase::MinFlat => "min/gamma_7/a*>=-1/12",
        })
    }
}

/// Catalog surface chosen for a target slope, with the component roles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSolution {
    pub case: SurfaceCase,
    pub record: SurfaceRecord,
    /// Link component (0 or 1) that becomes the Mazur double.
    pub pattern_component: usize,
}

impl WeightSolution {
    fn companion_component(&self) -> usize {
        1 - self.pattern_component
    }

    /// Slope on the satellite torus, in solid-torus coordinates.
    pub fn companion_slope(&self) -> Slope {
        self.record.solid_torus_slope(self.companion_component())
    }

    /// Slope on the boundary of the Mazur double.
    pub fn satellite_slope(&self) -> Slope {
        self.record.slopes[self.pattern_component]
    }

    /// Boundary components on the satellite torus.
    pub fn companion_count(&self) -> i64 {
        match self.record.slopes[self.companion_component()] {
            Slope::Disjoint => 0,
            _ => self.record.counts[self.companion_component()],
        }
    }

    /// Boundary components on the Mazur double.
    pub fn satellite_count(&self) -> i64 {
        self.record.counts[self.pattern_component]
    }
}

fn split(a: Rational64) -> (i64, i64) {
    (*a.numer(), *a.denom())
}

/// Picks the catalog surface and even weights realizing the Jones slope
/// `4a` of the companion (max side) or `4a*` (min side).
///
/// The `MaxBelowQuarter` choice is only used by [`addendum_check`]; on the
/// max side `a < -1/4` is reported as [`Error::NoCatalogSurface`].
pub fn solve_weights(a: Rational64, side: Side) -> Result<WeightSolution> {
    let (r, s) = split(a);
    let twelfth = Rational64::new(1, 12);
    let quarter = Rational64::new(1, 4);
    let (case, path, alpha, beta, pattern) = match side {
        Side::Max if a >= twelfth => (SurfaceCase::MaxSteepWide, 1, 24 * r, 2 * s, 1),
        Side::Max if a > Rational64::zero() => (SurfaceCase::MaxSteepNarrow, 1, 2 * s, 24 * r, 0),
        Side::Max if a >= -quarter => (SurfaceCase::MaxFlat, 2, 2 * s, -8 * r, 0),
        Side::Max => {
            return Err(Error::NoCatalogSurface(format!(
                "max-side slope 4a with a = {a} < -1/4 has no restricting Jones surface"
            )))
        }
        Side::Min if a < -twelfth => (SurfaceCase::MinSteep, 5, -24 * r, 2 * s, 1),
        Side::Min => (SurfaceCase::MinFlat, 7, 2, 0, 0),
    };
    let record = catalog_eval(PathId(path), alpha, beta)?;
    Ok(WeightSolution { case, record, pattern_component: pattern })
}

fn below_quarter(a: Rational64) -> Result<WeightSolution> {
    let (r, s) = split(a);
    let record = catalog_eval(PathId(2), -8 * r, 2 * s)?;
    Ok(WeightSolution { case: SurfaceCase::MaxBelowQuarter, record, pattern_component: 1 })
}

/// A Jones surface of the companion: slope `p/q`, `chi`, `|boundary|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonesSurfaceCertificate {
    pub side: Side,
    pub class: usize,
    /// Leading degree coefficient `a = r/s`.
    pub r: i64,
    pub s: i64,
    pub slope: Rational64,
    pub q: i64,
    pub chi: i64,
    pub boundary: i64,
}

impl JonesSurfaceCertificate {
    /// Smallest surface data with slope `4a` and
    /// `chi / (|boundary| q) = ratio` (`2b` on the max side, `-2b*` on the min side).
    pub fn synthetic(a: Rational64, ratio: Rational64, side: Side, class: usize) -> Self {
        let (r, s) = split(a);
        let q = s / s.gcd(&4);
        let per = ratio * q;
        let boundary = *per.denom();
        JonesSurfaceCertificate { side, class, r, s, slope: a * 4, q, chi: *per.numer(), boundary }
    }

    /// `chi / (|boundary| q)`.
    pub fn ratio(&self) -> Rational64 {
        Rational64::new(self.chi, self.boundary * self.q)
    }

    /// `q = s / gcd(4, s)` and `q` is the reduced denominator of the slope.
    pub fn consistent(&self) -> bool {
        self.s > 0 && self.q == self.s / self.s.gcd(&4) && *self.slope.denom() == self.q
    }
}

/// `m` copies of the companion surface glued to `n` copies of the pattern surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedSurface {
    pub m: i64,
    pub n: i64,
    pub chi: i64,
    pub boundary: i64,
    pub slope: Slope,
}

impl GluedSurface {
    /// `chi / (|boundary| q)` with `q` the reduced denominator of the slope.
    pub fn ratio(&self) -> Option<Rational64> {
        let q = *self.slope.finite()?.denom();
        Some(Rational64::new(self.chi, self.boundary * q))
    }

    /// Same gluing with `k` times as many copies.
    pub fn scaled(&self, k: i64) -> Self {
        GluedSurface { m: self.m * k, n: self.n * k, chi: self.chi * k, boundary: self.boundary * k, slope: self.slope }
    }
}

/// Glues the minimal `(m, n)` with `m |dS_K| = n |dS_i cap T_K|`.
pub fn glue(companion: &JonesSurfaceCertificate, pattern: &WeightSolution) -> Result<GluedSurface> {
    let on_torus = pattern.companion_count();
    let (m, n) = if on_torus == 0 {
        (0, 1)
    } else {
        if companion.boundary <= 0 {
            return Err(Error::UnsolvableMatching);
        }
        let l = companion.boundary.lcm(&on_torus);
        (l / companion.boundary, l / on_torus)
    };
    Ok(GluedSurface {
        m,
        n,
        chi: m * companion.chi + n * pattern.record.chi,
        boundary: n * pattern.satellite_count(),
        slope: pattern.satellite_slope(),
    })
}

/// Outcome of a Strong-Slope check on the Mazur double.
#[derive(Clone, Debug, PartialEq)]
pub struct SscVerdict {
    pub case: SurfaceCase,
    /// Boundary slope `p/q` of the glued surface.
    pub slope: Slope,
    /// `2b_M` (max side) or `-2b*_M` (min side).
    pub predicted: Rational64,
    /// `chi / (|boundary| q)` of the glued surface.
    pub achieved: Option<Rational64>,
    pub glued: GluedSurface,
    /// Slope equals the predicted Jones slope of the double.
    pub slope_matches: bool,
    pub pass: bool,
}

/// Predicted Jones slope of the Mazur double for the case.
fn predicted_slope(case: SurfaceCase, a: Rational64) -> Rational64 {
    match case {
        SurfaceCase::MaxSteepWide | SurfaceCase::MaxSteepNarrow => a * 36,
        SurfaceCase::MaxFlat | SurfaceCase::MaxBelowQuarter => a * 4,
        SurfaceCase::MinSteep => a * 36 - 2,
        SurfaceCase::MinFlat => Rational64::from(-5),
    }
}

/// `2 b_M` (max) or `-2 b*_M` (min) from the companion's linear coefficient.
pub fn predicted_ratio(a: Rational64, b: Rational64, side: Side) -> Rational64 {
    let two = Rational64::from(2);
    match side {
        Side::Max if a > Rational64::zero() => two * (a * -12 + b * 3 - 1),
        Side::Max => two * (b - 1),
        Side::Min if a < Rational64::new(-1, 12) => -two * (a * -12 + b * 3 - Rational64::new(1, 2)),
        Side::Min => -two * Rational64::new(1, 2),
    }
}

/// Glues the companion's Jones surface to the pattern surface and compares
/// the Euler characteristic ratio with the prediction.
pub fn glue_and_verify_ss(
    companion: &JonesSurfaceCertificate,
    pattern: &WeightSolution,
    predicted: Rational64,
) -> Result<SscVerdict> {
    let glued = glue(companion, pattern)?;
    let achieved = glued.ratio();
    let a = Rational64::new(companion.r, companion.s);
    let slope_matches = glued.slope == Slope::Finite(predicted_slope(pattern.case, a));
    Ok(SscVerdict {
        case: pattern.case,
        slope: glued.slope,
        predicted,
        achieved,
        pass: slope_matches && achieved == Some(predicted),
        glued,
        slope_matches,
    })
}

/// End to end: certificate from `(a, b)`, weights, gluing, verdict.
pub fn verify_ss(a: Rational64, b: Rational64, side: Side, class: usize) -> Result<SscVerdict> {
    let own = match side {
        Side::Max => b * 2,
        Side::Min => -b * 2,
    };
    let companion = JonesSurfaceCertificate::synthetic(a, own, side, class);
    let pattern = solve_weights(a, side)?;
    glue_and_verify_ss(&companion, &pattern, predicted_ratio(a, b, side))
}

/// Result of gluing across the satellite torus below `a = -1/4`.
#[derive(Clone, Debug, PartialEq)]
pub struct AddendumVerdict {
    /// Ratio forced by restriction, `2b + 8a`.
    pub restricted: Rational64,
    /// Ratio a Jones surface of the double needs, `2b - 2`.
    pub required: Rational64,
    pub contradiction: bool,
}

/// Evaluates `2b + 8a` from the `gamma_2` gluing against `2b - 2`.
pub fn addendum_check(a: Rational64, b: Rational64) -> Result<AddendumVerdict> {
    if a > Rational64::new(-1, 4) {
        return Err(Error::OutOfRegime(format!("a = {a} > -1/4")));
    }
    let companion = JonesSurfaceCertificate::synthetic(a, b * 2, Side::Max, 0);
    let glued = glue(&companion, &below_quarter(a)?)?;
    let restricted = glued.ratio().ok_or_else(|| Error::OutOfRegime("meridian slope".into()))?;
    let required = b * 2 - 2;
    Ok(AddendumVerdict { restricted, required, contradiction: restricted != required })
}

impl fmt::Display for SurfaceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t({}, {})\t({}, {})",
            self.path, self.branch_pattern, self.chi, self.slopes[0], self.slopes[1], self.counts[0], self.counts[1]
        )
    }
}

impl fmt::Display for SscVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let achieved = self.achieved.map_or("undefined".to_string(), |r| r.to_string());
        writeln!(f, "case\t{}", self.case)?;
        writeln!(f, "slope\t{}", self.slope)?;
        writeln!(f, "copies\tm={} n={}", self.glued.m, self.glued.n)?;
        writeln!(f, "chi\t{}", self.glued.chi)?;
        writeln!(f, "boundary\t{}", self.glued.boundary)?;
        writeln!(f, "predicted\t{}", self.predicted)?;
        writeln!(f, "achieved\t{achieved}")?;
        write!(f, "verdict\t{}", if self.pass { "pass" } else { "fail" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    fn p(i: u8) -> PathId {
        PathId::new(i).unwrap()
    }

    #[test]
    fn table_rows() {
        let g7 = catalog_eval(p(7), 2, 0).unwrap();
        assert_eq!((g7.chi, g7.slopes, g7.counts), (-2, [Slope::Finite(r(-5, 1)), Slope::Disjoint], [2, 0]));
        let g1 = catalog_eval(p(1), 24, 2).unwrap();
        assert_eq!((g1.chi, g1.slopes, g1.counts), (-52, [Slope::Finite(r(1, 4)), Slope::Finite(r(36, 1))], [6, 2]));
        let g2 = catalog_eval(p(2), 16, 8).unwrap();
        assert_eq!((g2.chi, g2.slopes, g2.counts), (-32, [Slope::Finite(r(-1, 2)), Slope::Finite(r(-2, 1))], [8, 8]));
        assert!(matches!(catalog_eval(p(3), 0, 0), Err(Error::InvalidWeights(_))));
    }

    #[test]
    fn swap_below_diagonal() {
        let lo = catalog_eval(p(6), 3, 7).unwrap();
        let hi = catalog_eval(p(6), 7, 3).unwrap();
        assert!(lo.swapped);
        assert_eq!(lo.chi, hi.chi);
        assert_eq!(lo.slopes, [hi.slopes[1], hi.slopes[0]]);
    }

    #[test]
    fn weight_examples() {
        let w = solve_weights(r(1, 6), Side::Max).unwrap();
        assert_eq!((w.record.path, w.record.alpha, w.record.beta), (p(1), 24, 12));
        assert_eq!(w.satellite_slope(), Slope::Finite(r(6, 1)));
        let w = solve_weights(r(-1, 8), Side::Max).unwrap();
        assert_eq!((w.record.path, w.record.alpha, w.record.beta), (p(2), 16, 8));
        assert_eq!(w.satellite_slope(), Slope::Finite(r(-1, 2)));
        let w = solve_weights(r(-1, 1), Side::Min).unwrap();
        assert_eq!((w.record.path, w.record.alpha, w.record.beta), (p(5), 24, 2));
        assert_eq!(w.satellite_slope(), Slope::Finite(r(-38, 1)));
        assert!(matches!(solve_weights(r(-1, 2), Side::Max), Err(Error::NoCatalogSurface(_))));
    }

    #[test]
    fn ss_examples() {
        let v = verify_ss(r(1, 6), r(-1, 1), Side::Max, 0).unwrap();
        assert_eq!(v.achieved, Some(r(-12, 1)));
        assert!(v.pass);
        let v = verify_ss(r(-1, 8), r(-2, 1), Side::Max, 0).unwrap();
        assert_eq!(v.achieved, Some(r(-6, 1)));
        assert!(v.pass);
        let v = verify_ss(r(-1, 1), r(1, 1), Side::Min, 0).unwrap();
        assert_eq!(v.achieved, Some(r(-29, 1)));
        assert!(v.pass);
        let v = verify_ss(r(0, 1), r(1, 2), Side::Min, 0).unwrap();
        assert_eq!((v.glued.chi, v.glued.boundary, v.achieved), (-2, 2, Some(r(-1, 1))));
    }

    #[test]
    fn addendum() {
        assert!(addendum_check(r(-1, 2), r(-1, 1)).unwrap().contradiction);
        assert!(!addendum_check(r(-1, 4), r(-1, 1)).unwrap().contradiction);
        assert!(matches!(addendum_check(r(-1, 8), r(0, 1)), Err(Error::OutOfRegime(_))));
    }
}
