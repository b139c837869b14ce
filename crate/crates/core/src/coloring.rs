//! 2-colorings of complete graphs.
//!
//! Black pairs are the edges of an ordinary graph `G` and white pairs are its
//! non-edges; a white clique is an independent set of `G`. Every algorithm in
//! this crate takes the working color as a parameter, so running it on
//! `c.swap_colors()` with `Black` is the same as running it on `c` with `White`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub const BOTH: [Color; 2] = [Color::Black, Color::White];

    #[inline]
    pub fn swap(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    #[inline]
    fn index(self) -> usize {
        self as usize
    }

    /// The single-letter code used by the `.2col` format.
    pub fn letter(self) -> char {
        match self {
            Color::Black => 'B',
            Color::White => 'W',
        }
    }

    pub fn from_letter(ch: char) -> Option<Color> {
        match ch {
            'B' | 'b' => Some(Color::Black),
            'W' | 'w' => Some(Color::White),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Black => "black",
            Color::White => "white",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("pair ({0}, {1}) listed more than once")]
    DuplicatePair(usize, usize),
    #[error("pair ({0}, {1}) has no color")]
    MissingPair(usize, usize),
    #[error("vertex {vertex} out of range for order {order}")]
    OutOfRange { vertex: usize, order: usize },
    #[error("self-pair ({0}, {0}) is not allowed")]
    SelfPair(usize),
    #[error("order must be at least 1")]
    Empty,
}

/// A complete graph on `order` vertices with every pair colored black or white.
///
/// Stored as one neighborhood bitset per vertex and color. Immutable after
/// construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Coloring {
    order: usize,
    // adj[color][v]
    adj: [Vec<VertexSet>; 2],
}

impl Coloring {
    /// Builds a coloring by asking `f(u, v)` for every pair `u < v`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Color) -> Coloring {
        let mut black = vec![VertexSet::with_universe(order); order];
        for u in 0..order {
            for v in u + 1..order {
                if f(u, v) == Color::Black {
                    black[u].insert(v);
                    black[v].insert(u);
                }
            }
        }
        Self::from_black_rows(order, black)
    }

    fn from_black_rows(order: usize, black: Vec<VertexSet>) -> Coloring {
        let all = VertexSet::full(order);
        let white = black
            .iter()
            .enumerate()
            .map(|(v, row)| {
                let mut w = all.difference(row);
                w.remove(v);
                w
            })
            .collect();
        Coloring {
            order,
            adj: [black, white],
        }
    }

    pub fn monochromatic(order: usize, color: Color) -> Coloring {
        Self::from_fn(order, |_, _| color)
    }

    /// Builds a coloring from an explicit list covering every unordered pair once.
    pub fn from_pair_list(
        order: usize,
        pairs: &[(usize, usize, Color)],
    ) -> Result<Coloring, ColoringError> {
        if order == 0 {
            return Err(ColoringError::Empty);
        }
        let mut seen = vec![VertexSet::with_universe(order); order];
        let mut black = vec![VertexSet::with_universe(order); order];
        for &(a, b, color) in pairs {
            for x in [a, b] {
                if x >= order {
                    return Err(ColoringError::OutOfRange { vertex: x, order });
                }
            }
            if a == b {
                return Err(ColoringError::SelfPair(a));
            }
            let (u, v) = (a.min(b), a.max(b));
            if !seen[u].insert(v) {
                return Err(ColoringError::DuplicatePair(u, v));
            }
            if color == Color::Black {
                black[u].insert(v);
                black[v].insert(u);
            }
        }
        for (u, row) in seen.iter().enumerate() {
            if row.len() != order - 1 - u {
                let v = (u + 1..order).find(|&v| !row.contains(v)).expect("gap");
                return Err(ColoringError::MissingPair(u, v));
            }
        }
        Ok(Self::from_black_rows(order, black))
    }

    /// Builds a coloring from the packed upper triangle in row-major order
    /// `(0,1), (0,2), ..., (0,N-1), (1,2), ...`.
    pub fn from_triangle(order: usize, bits: &[Color]) -> Option<Coloring> {
        if bits.len() != pair_count(order) {
            return None;
        }
        let mut it = bits.iter();
        Some(Self::from_fn(order, |_, _| *it.next().unwrap()))
    }

    /// The packed upper triangle in row-major order.
    pub fn triangle(&self) -> Vec<Color> {
        let mut out = Vec::with_capacity(pair_count(self.order));
        for u in 0..self.order {
            for v in u + 1..self.order {
                out.push(self.color(u, v));
            }
        }
        out
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    /// Color of the pair `{u, v}`; panics if `u == v` or either is out of range.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        assert!(u != v, "no color on a self-pair ({u}, {u})");
        assert!(u < self.order && v < self.order, "vertex out of range");
        if self.adj[0][u].contains(v) {
            Color::Black
        } else {
            Color::White
        }
    }

    #[inline]
    pub fn has(&self, u: usize, v: usize, color: Color) -> bool {
        u != v && self.adj[color.index()][u].contains(v)
    }

    /// Vertices `u != v` joined to `v` in `color`. Panics if `v` is out of range.
    #[inline]
    pub fn neighborhood(&self, v: usize, color: Color) -> &VertexSet {
        &self.adj[color.index()][v]
    }

    pub fn checked_neighborhood(&self, v: usize, color: Color) -> Result<&VertexSet, ColoringError> {
        if v >= self.order {
            return Err(ColoringError::OutOfRange {
                vertex: v,
                order: self.order,
            });
        }
        Ok(self.neighborhood(v, color))
    }

    #[inline]
    pub fn degree(&self, v: usize, color: Color) -> usize {
        self.adj[color.index()][v].len()
    }

    /// Union of the `color`-neighborhoods of the members of `set`.
    pub fn set_neighborhood(&self, set: &VertexSet, color: Color) -> VertexSet {
        let mut out = VertexSet::with_universe(self.order);
        for v in set {
            out.union_with(self.neighborhood(v, color));
        }
        out
    }

    /// True iff every pair inside `set` has `color`.
    pub fn is_clique(&self, set: &VertexSet, color: Color) -> bool {
        set.iter().all(|v| {
            let mut rest = set.clone();
            rest.remove(v);
            rest.is_subset(self.neighborhood(v, color))
        })
    }

    /// Every pair's color flipped.
    pub fn swap_colors(&self) -> Coloring {
        let [black, white] = self.adj.clone();
        Coloring {
            order: self.order,
            adj: [white, black],
        }
    }

    /// The coloring induced on `keep`, relabelled `0..keep.len()` in increasing order.
    pub fn induced(&self, keep: &VertexSet) -> Coloring {
        let ids = keep.to_vec();
        Self::from_fn(ids.len(), |i, j| self.color(ids[i], ids[j]))
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.triangle().iter().map(|c| c.letter()).collect();
        write!(f, "Coloring({}, {s})", self.order)
    }
}

/// Serialized as `{"order": N, "pairs": "BWWB..."}` with pairs in row-major upper-triangle order.
impl Serialize for Coloring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            order: usize,
            pairs: String,
        }
        Repr {
            order: self.order,
            pairs: self.triangle().iter().map(|c| c.letter()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            order: usize,
            pairs: String,
        }
        let r = Repr::deserialize(deserializer)?;
        let bits: Option<Vec<Color>> = r.pairs.chars().map(Color::from_letter).collect();
        bits.and_then(|b| Coloring::from_triangle(r.order, &b))
            .ok_or_else(|| serde::de::Error::custom("malformed pair string"))
    }
}

pub fn pair_count(order: usize) -> usize {
    order * order.saturating_sub(1) / 2
}

/// The smallest order the extraction theorem covers: `floor(31n/6) + 15`.
pub fn theorem_order(n: usize) -> usize {
    31 * n / 6 + 15
}

/// Global parameters of a coloring relative to a fan size `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Context {
    pub n: usize,
    pub order: usize,
    /// Largest degree in either color.
    pub d: usize,
    /// Lowest-index vertex attaining `d`, black preferred on ties.
    pub d_witness: (usize, Color),
}

impl Context {
    pub fn d_ratio(&self) -> Ratio<i64> {
        Ratio::from_integer(self.d as i64)
    }

    /// Whether `order >= floor(31n/6) + 15`.
    pub fn meets_theorem_order(&self) -> bool {
        self.order >= theorem_order(self.n)
    }
}

/// Computes `d` and its witness. `n` is carried along for the extractor.
pub fn context_of(c: &Coloring, n: usize) -> Context {
    let mut best = (0usize, (0usize, Color::Black));
    let mut first = true;
    for v in 0..c.order() {
        for col in Color::BOTH {
            let deg = c.degree(v, col);
            if first || deg > best.0 {
                best = (deg, (v, col));
                first = false;
            }
        }
    }
    Context {
        n,
        order: c.order(),
        d: best.0,
        d_witness: best.1,
    }
}
