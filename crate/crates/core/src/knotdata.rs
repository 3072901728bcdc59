//! Normalized colored Jones providers for companion knots, diagram
//! statistics, and knot-profile files.
//!
//! # Profile file
//!
//! A JSON object:
//!
//! ```json
//! {
//!   "name": "my-knot",
//!   "provider": "table",
//!   "table_path": "my-knot.table",
//!   "stats": { "c": 4, "c_plus": 2, "c_minus": 2, "writhe": 0, "v_a": 3, "v_b": 3 }
//! }
//! ```
//!
//! `provider` is one of `unknot`, `torus`, `figure-eight`, `table`. A torus
//! provider carries `"torus": [p, q]`. `table_path` is resolved relative to
//! the profile file. `stats` is optional.
//!
//! # Table file
//!
//! One line per color, `l: <polynomial>`, covering `0, 1, ..., L` in order
//! with `0: 1`. Blank lines and lines starting with `#` are skipped.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::bracket::{self, PlanarDiagram};
use crate::degrees::QuasiQuadratic;
use crate::error::{Error, Result};

pub use crate::IntPoly;

/// Crossing data of a knot diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramStats {
    pub c: u32,
    pub c_plus: u32,
    pub c_minus: u32,
    pub writhe: i64,
    pub v_a: u32,
    pub v_b: u32,
}

impl DiagramStats {
    pub fn new(c_plus: u32, c_minus: u32, v_a: u32, v_b: u32) -> Self {
        Self {
            c: c_plus + c_minus,
            c_plus,
            c_minus,
            writhe: c_plus as i64 - c_minus as i64,
            v_a,
            v_b,
        }
    }

    pub fn from_diagram(d: &PlanarDiagram) -> Self {
        let c_plus = d.crossings().iter().filter(|x| x.sign > 0).count() as u32;
        let c_minus = d.crossings().len() as u32 - c_plus;
        Self::new(c_plus, c_minus, d.v_a() as u32, d.v_b() as u32)
    }

    pub fn validate(&self) -> Result<()> {
        let consistent = self.c == self.c_plus + self.c_minus
            && self.writhe == self.c_plus as i64 - self.c_minus as i64;
        if consistent {
            Ok(())
        } else {
            Err(Error::MissingData(format!("inconsistent diagram stats {self:?}")))
        }
    }
}

/// Source of `J'_{K,l}`.
#[derive(Clone, Debug)]
pub enum Provider {
    Unknot,
    /// Torus knot `T(p, q)`; positive `p q` is the positive (right-handed) knot.
    Torus { p: i64, q: i64 },
    FigureEight,
    Table(Arc<ColorTable>),
}

impl PartialEq for Provider {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Provider::Unknot, Provider::Unknot) | (Provider::FigureEight, Provider::FigureEight) => true,
            (Provider::Torus { p, q }, Provider::Torus { p: p2, q: q2 }) => (p, q) == (p2, q2),
            (Provider::Table(a), Provider::Table(b)) => a.values == b.values,
            _ => false,
        }
    }
}

/// Precomputed `J'_{K,0..=L}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ColorTable {
    values: Vec<IntPoly>,
}

impl ColorTable {
    pub fn new(values: Vec<IntPoly>) -> Result<Self> {
        match values.first() {
            Some(v) if v.is_one() => Ok(Self { values }),
            _ => Err(Error::MissingData("table must start with 0: 1".into())),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |m: String| Error::Parse { position: lineno + 1, message: m };
            let (l, poly) = line.split_once(':').ok_or_else(|| bad("expected `l: polynomial`".into()))?;
            let l: usize = l.trim().parse().map_err(|_| bad(format!("bad color `{}`", l.trim())))?;
            if l != values.len() {
                return Err(bad(format!("color {l} out of order, expected {}", values.len())));
            }
            values.push(poly.trim().parse().map_err(|e| bad(format!("{e}")))?);
        }
        Self::new(values)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Largest covered color.
    pub fn max_color(&self) -> u32 {
        self.values.len() as u32 - 1
    }

    pub fn get(&self, l: u32) -> Result<&IntPoly> {
        self.values.get(l as usize).ok_or(Error::MissingColor { color: l, max: self.max_color() })
    }

    pub fn render(&self) -> String {
        self.values.iter().enumerate().map(|(l, p)| format!("{l}: {p}\n")).collect()
    }
}

type CacheKey = (u8, i64, i64, u32);

fn closed_form_cache() -> &'static RwLock<HashMap<CacheKey, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached(key: CacheKey, f: impl FnOnce() -> Result<IntPoly>) -> Result<Arc<IntPoly>> {
    if let Some(v) = closed_form_cache().read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(f()?);
    Ok(closed_form_cache().write().unwrap().entry(key).or_insert(v).clone())
}

impl Provider {
    pub fn torus(p: i64, q: i64) -> Result<Self> {
        if p.abs() < 2 || q.abs() < 2 || p.gcd(&q) != 1 {
            return Err(Error::Unsupported(format!("torus knot T({p}, {q})")));
        }
        Ok(Provider::Torus { p, q })
    }

    /// `J'_{K,l}`.
    pub fn eval(&self, l: u32) -> Result<Arc<IntPoly>> {
        match self {
            Provider::Unknot => Ok(Arc::new(IntPoly::one())),
            Provider::Torus { p, q } => cached((1, *p, *q, l), || torus_normalized(*p, *q, l)),
            Provider::FigureEight => cached((2, 0, 0, l), || Ok(figure_eight_normalized(l))),
            Provider::Table(t) => Ok(Arc::new(t.get(l)?.clone())),
        }
    }

    /// Largest color the provider can supply.
    pub fn max_color(&self) -> Option<u32> {
        match self {
            Provider::Table(t) => Some(t.max_color()),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Provider::Unknot => "unknot",
            Provider::Torus { .. } => "torus",
            Provider::FigureEight => "figure-eight",
            Provider::Table(_) => "table",
        }
    }
}

/// Closed form for `T(p, q)` at color `l`:
/// `q^(-pq(N^2-1)/4) / (q^(N/2) - q^(-N/2)) * sum_k (q^((pq k^2 + 2(p+q)k + 2)/4) - q^((pq k^2 + 2(p-q)k - 2)/4))`
/// over `k = -(N-1), -(N-3), ..., N-1` with `N = l + 1`, taken with
/// `q -> q^(-1)`.
fn torus_normalized(p: i64, r: i64, l: u32) -> Result<IntPoly> {
    let n = l as i64 + 1;
    let pr = p * r;
    let one = || BigInt::from(1);
    let mut num = IntPoly::zero();
    for k in (-(n - 1)..=n - 1).step_by(2) {
        num.add_assign_ref(&IntPoly::monomial(pr * k * k + 2 * (p + r) * k + 2, one()));
        num.sub_assign_ref(&IntPoly::monomial(pr * k * k + 2 * (p - r) * k - 2, one()));
    }
    let den = &IntPoly::q_pow(2 * n) - &IntPoly::q_pow(-2 * n);
    let j = num.div_exact(&den)?.shift(-pr * (n * n - 1));
    Ok(j.mirror())
}

/// Cyclotomic expansion `sum_{k<N} prod_{i=1}^k (q^N + q^-N - q^i - q^-i)`, `N = l + 1`.
fn figure_eight_normalized(l: u32) -> IntPoly {
    let n = l as i64 + 1;
    let mut total = IntPoly::zero();
    let mut prod = IntPoly::one();
    for k in 0..n {
        if k > 0 {
            let factor = IntPoly::from_terms([
                (4 * n, BigInt::from(1)),
                (-4 * n, BigInt::from(1)),
                (4 * k, BigInt::from(-1)),
                (-4 * k, BigInt::from(-1)),
            ]);
            prod = &prod * &factor;
        }
        total.add_assign_ref(&prod);
    }
    total
}

/// A companion knot: provider, optional diagram statistics, fitted degrees.
#[derive(Clone, Debug)]
pub struct KnotProfile {
    pub name: String,
    pub provider: Provider,
    pub stats: Option<DiagramStats>,
    /// `d_+[J_{K,n}]`, with its onset.
    pub max_degree: Option<QuasiQuadratic<Rational64>>,
    /// `d_-[J_{K,n}]`, with its onset.
    pub min_degree: Option<QuasiQuadratic<Rational64>>,
    pub diagram: Option<PlanarDiagram>,
}

impl KnotProfile {
    pub fn new(name: impl Into<String>, provider: Provider) -> Self {
        Self { name: name.into(), provider, stats: None, max_degree: None, min_degree: None, diagram: None }
    }

    pub fn with_diagram(mut self, d: PlanarDiagram) -> Self {
        self.stats = Some(DiagramStats::from_diagram(&d));
        self.diagram = Some(d);
        self
    }

    pub fn unknot() -> Self {
        Self::new("unknot", Provider::Unknot).with_diagram(PlanarDiagram::unknot())
    }

    /// Right-handed trefoil `T(2, 3)`.
    pub fn trefoil() -> Self {
        Self::new("trefoil", Provider::Torus { p: 2, q: 3 }).with_diagram(bracket::trefoil_diagram())
    }

    pub fn figure_eight() -> Self {
        Self::new("figure-eight", Provider::FigureEight).with_diagram(bracket::figure_eight_diagram())
    }

    /// `T(p, q)`; two-strand torus knots carry their braid diagram.
    pub fn torus(p: i64, q: i64) -> Result<Self> {
        let provider = Provider::torus(p, q)?;
        let profile = Self::new(format!("torus({p},{q})"), provider);
        Ok(match (p.abs(), q.abs()) {
            (2, m) | (m, 2) if m <= bracket::MAX_CROSSINGS as i64 => {
                let twist = (m * (p * q).signum()) as i32;
                profile.with_diagram(bracket::two_strand_torus_diagram(twist)?)
            }
            _ => profile,
        })
    }

    /// Builtin by name: `unknot`, `trefoil`, `figure-eight`, or `torus(p,q)`.
    pub fn builtin(name: &str) -> Result<Self> {
        let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "unknot" => Ok(Self::unknot()),
            "trefoil" | "3_1" => Ok(Self::trefoil()),
            "figure-eight" | "figure8" | "4_1" => Ok(Self::figure_eight()),
            s => {
                let inner = s
                    .strip_prefix("torus(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Unsupported(format!("unknown knot `{name}`")))?;
                let (p, q) = inner
                    .split_once(',')
                    .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                    .ok_or_else(|| Error::Unsupported(format!("unknown knot `{name}`")))?;
                Self::torus(p, q)
            }
        }
    }

    /// Builtin name or path to a profile file.
    pub fn resolve(spec: &str) -> Result<Self> {
        let path = Path::new(spec);
        if path.is_file() {
            Self::load(path)
        } else {
            Self::builtin(spec)
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: ProfileFile =
            serde_json::from_str(&text).map_err(|e| Error::Parse { position: e.line(), message: e.to_string() })?;
        file.into_profile(path.parent().unwrap_or(Path::new(".")))
    }

    pub fn to_file(&self, table_path: Option<PathBuf>) -> ProfileFile {
        ProfileFile {
            name: self.name.clone(),
            provider: self.provider.kind().to_string(),
            torus: match self.provider {
                Provider::Torus { p, q } => Some([p, q]),
                _ => None,
            },
            table_path,
            stats: self.stats,
        }
    }

    pub fn eval(&self, l: u32) -> Result<Arc<IntPoly>> {
        self.provider.eval(l)
    }
}

/// Serialized form of a [`KnotProfile`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileFile {
    pub name: String,
    pub provider: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<DiagramStats>,
}

impl ProfileFile {
    pub fn into_profile(self, base: &Path) -> Result<KnotProfile> {
        let provider = match self.provider.as_str() {
            "unknot" => Provider::Unknot,
            "figure-eight" => Provider::FigureEight,
            "torus" => {
                let [p, q] = self.torus.ok_or_else(|| Error::MissingData("torus provider needs `torus`".into()))?;
                Provider::torus(p, q)?
            }
            "table" => {
                let rel = self.table_path.ok_or_else(|| Error::MissingData("table provider needs `table_path`".into()))?;
                Provider::Table(Arc::new(ColorTable::load(&base.join(rel))?))
            }
            other => return Err(Error::Unsupported(format!("provider `{other}`"))),
        };
        if let Some(s) = &self.stats {
            s.validate()?;
        }
        let mut profile = KnotProfile::new(self.name, provider);
        profile.stats = self.stats;
        Ok(profile)
    }
}

/// Minimum-degree profile of an A-adequate diagram.
#[derive(Clone, Debug, PartialEq)]
pub struct AdequateMinProfile {
    pub profile: QuasiQuadratic<Rational64>,
    /// `a* + b* + c*`.
    pub coefficient_sum: Rational64,
    /// Whether `2 a*` is an integer.
    pub doubled_leading_integral: bool,
    /// `c_- = 0`, so `a* = 0`.
    pub no_negative_crossings: bool,
}

/// `d_-[J_{K,n}] = -c_-/2 n^2 + (c - v_A)/2 n + (v_A - c_+)/2` for a reduced
/// A-adequate diagram.
pub fn adequate_min_profile(stats: Option<&DiagramStats>) -> Result<AdequateMinProfile> {
    let s = stats.ok_or_else(|| Error::MissingData("diagram stats".into()))?;
    let r = |x: i64| Rational64::new(x, 2);
    let a = r(-(s.c_minus as i64));
    let b = r(s.c as i64 - s.v_a as i64);
    let c = r(s.v_a as i64 - s.c_plus as i64);
    Ok(AdequateMinProfile {
        profile: QuasiQuadratic::uniform(a, b, c),
        coefficient_sum: a + b + c,
        doubled_leading_integral: (a * 2).is_integer(),
        no_negative_crossings: s.c_minus == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn color_zero_is_one() {
        for k in [KnotProfile::unknot(), KnotProfile::trefoil(), KnotProfile::figure_eight()] {
            assert!(k.eval(0).unwrap().is_one());
        }
        assert!(KnotProfile::torus(3, -5).unwrap().eval(0).unwrap().is_one());
    }

    #[test]
    fn color_one_matches_jones() {
        assert_eq!(*KnotProfile::trefoil().eval(1).unwrap(), poly("q + q^3 - q^4"));
        assert_eq!(*KnotProfile::torus(-2, 3).unwrap().eval(1).unwrap(), poly("q^-1 + q^-3 - q^-4"));
        assert_eq!(*KnotProfile::figure_eight().eval(1).unwrap(), poly("q^-2 - q^-1 + 1 - q + q^2"));
    }

    #[test]
    fn figure_eight_is_amphichiral() {
        for l in 0..6 {
            let j = KnotProfile::figure_eight().eval(l).unwrap();
            assert_eq!(j.mirror(), *j);
        }
    }

    #[test]
    fn table_round_trip_and_range() {
        let t = ColorTable::parse("0: 1\n# comment\n1: q + q^3 - q^4\n").unwrap();
        assert_eq!(ColorTable::parse(&t.render()).unwrap(), t);
        assert!(matches!(t.get(2), Err(Error::MissingColor { color: 2, max: 1 })));
        assert!(ColorTable::parse("1: 1").is_err());
        assert!(ColorTable::parse("0: 2").is_err());
    }

    #[test]
    fn builtin_names() {
        assert_eq!(KnotProfile::builtin("torus(2, 5)").unwrap().stats.unwrap().c, 5);
        assert!(KnotProfile::builtin("torus(2,4)").is_err());
        assert!(KnotProfile::builtin("nope").is_err());
    }

    #[test]
    fn adequate_profiles() {
        let fig8 = adequate_min_profile(KnotProfile::figure_eight().stats.as_ref()).unwrap();
        assert_eq!(fig8.profile, QuasiQuadratic::uniform((-1).into(), Rational64::new(1, 2), Rational64::new(1, 2)));
        assert_eq!(fig8.coefficient_sum, 0.into());
        let synthetic = adequate_min_profile(Some(&DiagramStats::new(3, 3, 4, 0))).unwrap();
        assert_eq!(synthetic.profile, QuasiQuadratic::uniform(Rational64::new(-3, 2), 1.into(), Rational64::new(1, 2)));
        let positive = adequate_min_profile(KnotProfile::trefoil().stats.as_ref()).unwrap();
        assert!(positive.no_negative_crossings);
        assert_eq!(positive.coefficient_sum, 0.into());
        assert!(matches!(adequate_min_profile(None), Err(Error::MissingData(_))));
    }
}
