//! Kauffman bracket state sum on planar diagrams.
//!
//! A crossing is four arc labels `[a, b, c, d]` read clockwise, starting at
//! the incoming under-arc, plus its sign. The under-strand runs `a -> c`;
//! the over-strand runs `b -> d` at a positive crossing and `d -> b` at a
//! negative one. The A-smoothing joins `(a, d)` and `(b, c)`; the
//! B-smoothing joins `(a, b)` and `(c, d)`.
//!
//! The bracket lives in `Z[A^(+-1)]` and is stored on the `q` grid through
//! `A = q^(-1/4)`, so that `A^k` is the quarter exponent `-k`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub use crate::IntPoly;

/// Largest diagram the state sum accepts.
pub const MAX_CROSSINGS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub labels: [u32; 4],
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    components: usize,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Passage of a knot through a crossing, for signed Gauss codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
}

impl PlanarDiagram {
    pub fn new(crossings: Vec<Crossing>) -> Result<Self> {
        if crossings.is_empty() {
            return Ok(Self::unknot());
        }
        if crossings.len() > MAX_CROSSINGS {
            return Err(Error::TooManyCrossings(crossings.len()));
        }
        let mut count: HashMap<u32, usize> = HashMap::new();
        for x in &crossings {
            if x.sign != 1 && x.sign != -1 {
                return Err(Error::InvalidDiagram(format!("crossing sign {}", x.sign)));
            }
            for l in x.labels {
                *count.entry(l).or_default() += 1;
            }
        }
        if let Some((l, n)) = count.iter().find(|(_, n)| **n != 2) {
            return Err(Error::InvalidDiagram(format!("arc {l} appears {n} times")));
        }
        let index = Self::label_index(&crossings);
        let mut uf = UnionFind::new(index.len());
        let mut components = index.len();
        for x in &crossings {
            let [a, b, c, d] = x.labels.map(|l| index[&l]);
            components -= uf.union(a, c) as usize;
            components -= uf.union(b, d) as usize;
        }
        Ok(Self { crossings, components })
    }

    /// Zero-crossing circle.
    pub fn unknot() -> Self {
        Self { crossings: Vec::new(), components: 1 }
    }

    /// Diagram of a knot from its signed Gauss code: the passages in order
    /// along the orientation and the sign of each crossing.
    pub fn from_gauss(passages: &[Passage], signs: &[i8]) -> Result<Self> {
        let m = passages.len();
        let label = |k: usize| (k % m) as u32 + 1;
        let mut under = vec![None; signs.len()];
        let mut over = vec![None; signs.len()];
        for (k, p) in passages.iter().enumerate() {
            let slot = if p.over { &mut over } else { &mut under };
            let cell = slot
                .get_mut(p.crossing)
                .ok_or_else(|| Error::InvalidDiagram(format!("crossing {} has no sign", p.crossing)))?;
            if cell.replace(k).is_some() {
                return Err(Error::InvalidDiagram(format!("crossing {} passed twice alike", p.crossing)));
            }
        }
        let crossings = signs
            .iter()
            .enumerate()
            .map(|(i, &sign)| match (under[i], over[i]) {
                (Some(u), Some(o)) => {
                    let labels = if sign > 0 {
                        [label(u), label(o), label(u + 1), label(o + 1)]
                    } else {
                        [label(u), label(o + 1), label(u + 1), label(o)]
                    };
                    Ok(Crossing { labels, sign })
                }
                _ => Err(Error::InvalidDiagram(format!("crossing {i} not passed over and under"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(crossings)
    }

    fn label_index(crossings: &[Crossing]) -> HashMap<u32, usize> {
        let mut labels: Vec<u32> = crossings.iter().flat_map(|x| x.labels).collect();
        labels.sort_unstable();
        labels.dedup();
        labels.into_iter().enumerate().map(|(i, l)| (l, i)).collect()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign as i64).sum()
    }

    /// Number of circles of the state given by one bit per crossing
    /// (bit set = B-smoothing).
    pub fn state_circles(&self, state: u64) -> usize {
        if self.crossings.is_empty() {
            return self.components;
        }
        let (arcs, slots) = self.arc_slots();
        count_circles(arcs, &slots, state)
    }

    /// Crossings as dense arc indices, with the number of arcs.
    fn arc_slots(&self) -> (usize, Vec<[usize; 4]>) {
        let index = Self::label_index(&self.crossings);
        let slots = self.crossings.iter().map(|x| x.labels.map(|l| index[&l])).collect();
        (index.len(), slots)
    }

    /// Circles of the all-A state.
    pub fn v_a(&self) -> usize {
        self.state_circles(0)
    }

    /// Circles of the all-B state.
    pub fn v_b(&self) -> usize {
        self.state_circles((1u64 << self.crossings.len()) - 1)
    }

    /// Parses the diagram file format: one crossing per line as four arc
    /// labels and a sign (`+`, `-`, `+1` or `-1`); `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut crossings = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let bad = |m: &str| Error::Parse { position: lineno + 1, message: m.to_string() };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(bad("expected four labels and a sign"));
            }
            let mut labels = [0u32; 4];
            for (slot, f) in labels.iter_mut().zip(&fields[..4]) {
                *slot = f.parse().map_err(|_| bad("arc label must be a nonnegative integer"))?;
            }
            let sign = match fields[4] {
                "+" | "+1" | "1" => 1,
                "-" | "-1" => -1,
                _ => return Err(bad("sign must be + or -")),
            };
            crossings.push(Crossing { labels, sign });
        }
        Self::new(crossings)
    }
}

fn count_circles(arcs: usize, slots: &[[usize; 4]], state: u64) -> usize {
    let mut uf = UnionFind::new(arcs);
    let mut loops = arcs;
    for (i, &[a, b, c, d]) in slots.iter().enumerate() {
        let pairs = if state >> i & 1 == 0 { [(a, d), (b, c)] } else { [(a, b), (c, d)] };
        for (p, q) in pairs {
            loops -= uf.union(p, q) as usize;
        }
    }
    loops
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.crossings {
            let [a, b, c, d] = x.labels;
            writeln!(f, "{a} {b} {c} {d} {}", if x.sign > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// `d = -A^2 - A^(-2)` on the q grid.
fn loop_factor() -> IntPoly {
    IntPoly::from_terms([(-2, BigInt::from(-1)), (2, BigInt::from(-1))])
}

/// Kauffman bracket, normalized so the crossingless circle is 1.
pub fn kauffman_bracket(d: &PlanarDiagram) -> Result<IntPoly> {
    let c = d.crossings.len();
    if c > MAX_CROSSINGS {
        return Err(Error::TooManyCrossings(c));
    }
    let loop_d = loop_factor();
    if c == 0 {
        return Ok(loop_d.pow(d.components as u32 - 1));
    }
    let (arcs, slots) = d.arc_slots();
    // tally[(#B, loops)] over all 2^c states, split into prefix chunks
    let chunk_bits = c.min(6);
    let chunks: u64 = 1 << chunk_bits;
    let per_chunk: u64 = 1 << (c - chunk_bits);
    let tallies: Vec<HashMap<(u32, usize), u64>> = (0..chunks)
        .into_par_iter()
        .map(|hi| {
            let mut t = HashMap::new();
            for lo in 0..per_chunk {
                let state = hi * per_chunk + lo;
                *t.entry((state.count_ones(), count_circles(arcs, &slots, state))).or_insert(0) += 1;
            }
            t
        })
        .collect();
    let mut total: HashMap<(u32, usize), u64> = HashMap::new();
    for t in tallies {
        for (k, v) in t {
            *total.entry(k).or_insert(0) += v;
        }
    }
    let mut keys: Vec<_> = total.into_iter().collect();
    keys.sort_unstable();
    let mut sum = IntPoly::zero();
    for ((b, loops), count) in keys {
        let a_power = c as i64 - 2 * b as i64;
        let term = loop_d.pow(loops as u32 - 1).shift(-a_power).scale(&BigInt::from(count));
        sum.add_assign_ref(&term);
    }
    Ok(sum)
}

/// `(-A)^(-3 wr) <D>`: the Jones polynomial in `q` for a knot diagram.
pub fn jones_at_n1(d: &PlanarDiagram) -> Result<IntPoly> {
    let wr = d.writhe();
    let bracket = kauffman_bracket(d)?;
    let sign = if wr.rem_euclid(2) == 1 { BigInt::from(-1) } else { BigInt::from(1) };
    Ok(bracket.shift(3 * wr).scale(&sign))
}

fn pd(rows: &[[u32; 4]], signs: &[i8]) -> PlanarDiagram {
    let crossings = rows.iter().zip(signs).map(|(l, s)| Crossing { labels: *l, sign: *s }).collect();
    PlanarDiagram::new(crossings).expect("builtin diagram is valid")
}

/// Standard three-crossing diagram of the right-handed trefoil.
pub fn trefoil_diagram() -> PlanarDiagram {
    two_strand_torus_diagram(3).expect("builtin diagram is valid")
}

/// Standard alternating four-crossing diagram of the figure-eight knot.
pub fn figure_eight_diagram() -> PlanarDiagram {
    pd(&[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]], &[-1, -1, 1, 1])
}

/// Closure of the two-strand braid `sigma^m`, `m` odd, as the torus knot
/// `T(2, m)`; positive `m` gives positive crossings.
pub fn two_strand_torus_diagram(m: i32) -> Result<PlanarDiagram> {
    if m % 2 == 0 {
        return Err(Error::InvalidDiagram("two-strand closure with even twist is a link".into()));
    }
    let g = if m > 0 { 1 } else { -1 };
    braid_closure(2, &vec![g; m.unsigned_abs() as usize])
}

/// Closure of a braid word on `strands` strands. Generator `i` (1-based)
/// crosses strands `i` and `i + 1`; `-i` is its inverse. Every strand must
/// take part in some crossing.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<PlanarDiagram> {
    let mut used = vec![false; strands];
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= strands {
            return Err(Error::InvalidDiagram(format!("generator {g} on {strands} strands")));
        }
        used[i - 1] = true;
        used[i] = true;
    }
    if used.iter().any(|u| !u) {
        return Err(Error::InvalidDiagram("a strand takes part in no crossing".into()));
    }
    let start: Vec<u32> = (1..=strands as u32).collect();
    let mut current = start.clone();
    let mut next = strands as u32 + 1;
    let mut raw = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (left, right) = (current[i], current[i + 1]);
        let (out_left, out_right) = (next, next + 1);
        next += 2;
        let (labels, sign) = if g > 0 {
            ([right, left, out_left, out_right], 1)
        } else {
            ([left, out_left, out_right, right], -1)
        };
        raw.push(Crossing { labels, sign });
        current[i] = out_left;
        current[i + 1] = out_right;
    }
    let closing: HashMap<u32, u32> = current.into_iter().zip(start).collect();
    let crossings = raw
        .into_iter()
        .map(|x| Crossing { labels: x.labels.map(|l| closing.get(&l).copied().unwrap_or(l)), sign: x.sign })
        .collect();
    PlanarDiagram::new(crossings)
}

/// The Mazur pattern closed up in the 3-sphere with a trivial companion.
///
/// Inside a box of the annulus two hairpins, one attached to each side,
/// clasp each other, and the third strand runs over the right hairpin. The
/// strand passes around the annulus three times, twice forwards and once
/// back. Four crossings, one of them a removable curl.
pub fn mazur_pattern_diagram() -> PlanarDiagram {
    let p = |crossing, over| Passage { crossing, over };
    let passages = [
        p(0, true),
        p(1, false),
        p(3, false),
        p(0, false),
        p(1, true),
        p(2, false),
        p(2, true),
        p(3, true),
    ];
    PlanarDiagram::from_gauss(&passages, &[-1, -1, -1, 1]).expect("pattern diagram is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn crossingless_and_curls() {
        assert!(kauffman_bracket(&PlanarDiagram::unknot()).unwrap().is_one());
        let pos = pd(&[[1, 2, 2, 1]], &[1]);
        assert_eq!(kauffman_bracket(&pos).unwrap(), poly("-q^(-3/4)"));
        let neg = pd(&[[1, 1, 2, 2]], &[-1]);
        assert_eq!(kauffman_bracket(&neg).unwrap(), poly("-q^(3/4)"));
        assert!(jones_at_n1(&pos).unwrap().is_one());
        assert!(jones_at_n1(&neg).unwrap().is_one());
    }

    fn bracket_of(strands: usize, word: &[i32]) -> IntPoly {
        kauffman_bracket(&braid_closure(strands, word).unwrap()).unwrap()
    }

    #[test]
    fn reidemeister_two_and_three() {
        assert_eq!(bracket_of(3, &[1, 2, -1, 1, 2]), bracket_of(3, &[1, 2, 2]));
        assert_eq!(bracket_of(3, &[1, -2, 2, 2, -1]), bracket_of(3, &[1, 2, -1]));
        assert_eq!(bracket_of(3, &[1, 2, 1, -2]), bracket_of(3, &[2, 1, 2, -2]));
        assert_eq!(bracket_of(4, &[1, 2, 1, 3, -2]), bracket_of(4, &[2, 1, 2, 3, -2]));
    }

    #[test]
    fn reidemeister_one_normalized() {
        let stabilized = braid_closure(3, &[1, 1, 1, 2]).unwrap();
        let neg_stabilized = braid_closure(3, &[1, 1, 1, -2]).unwrap();
        let base = jones_at_n1(&trefoil_diagram()).unwrap();
        assert_eq!(jones_at_n1(&stabilized).unwrap(), base);
        assert_eq!(jones_at_n1(&neg_stabilized).unwrap(), base);
        assert_ne!(kauffman_bracket(&stabilized).unwrap(), kauffman_bracket(&trefoil_diagram()).unwrap());
    }

    #[test]
    fn figure_eight_as_braid() {
        let d = braid_closure(3, &[1, -2, 1, -2]).unwrap();
        assert_eq!(jones_at_n1(&d).unwrap(), jones_at_n1(&figure_eight_diagram()).unwrap());
        assert_eq!(figure_eight_diagram().v_a(), 3);
        assert_eq!(trefoil_diagram().v_a(), 2);
    }

    #[test]
    fn mazur_pattern_closes_to_unknot() {
        let d = mazur_pattern_diagram();
        assert_eq!(d.components(), 1);
        assert!(jones_at_n1(&d).unwrap().is_one());
    }

    #[test]
    fn trefoil_jones() {
        assert_eq!(jones_at_n1(&trefoil_diagram()).unwrap(), poly("q + q^3 - q^4"));
        assert_eq!(jones_at_n1(&two_strand_torus_diagram(3).unwrap()).unwrap(), poly("q + q^3 - q^4"));
        assert_eq!(jones_at_n1(&two_strand_torus_diagram(-3).unwrap()).unwrap(), poly("-q^-4 + q^-3 + q^-1"));
    }

    #[test]
    fn figure_eight_jones() {
        let d = figure_eight_diagram();
        assert_eq!(d.writhe(), 0);
        assert_eq!(jones_at_n1(&d).unwrap(), poly("q^-2 - q^-1 + 1 - q + q^2"));
    }

    #[test]
    fn validation() {
        assert!(matches!(
            PlanarDiagram::new(vec![Crossing { labels: [1, 2, 3, 4], sign: 1 }]),
            Err(Error::InvalidDiagram(_))
        ));
        let big: Vec<Crossing> = (0..25).map(|i| Crossing { labels: [i, i, i + 100, i + 100], sign: 1 }).collect();
        assert_eq!(PlanarDiagram::new(big), Err(Error::TooManyCrossings(25)));
    }

    #[test]
    fn file_round_trip() {
        let d = figure_eight_diagram();
        assert_eq!(PlanarDiagram::parse(&d.to_string()).unwrap(), d);
        assert!(PlanarDiagram::parse("1 2 3 x +").is_err());
    }
}
