//! Fans, cliques and the two structural lemmas used by the extractor.
//!
//! A fan `F_n` of color `c` is a center joined in `c` to the `2n` endpoints of
//! `n` disjoint blades, each blade itself a pair of color `c`. A fan centered
//! at `v` exists exactly when the `c`-graph on the `c`-neighborhood of `v` has
//! a matching of size `n`, which is how [`find_mono_fan`] searches.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::coloring::{Color, Coloring};
use crate::matching::{
    bipartite_maximum_matching, greedy_maximal_matching, hall_analysis, maximum_matching_capped,
    maximum_matching_general, Matching,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanCertificate {
    pub color: Color,
    pub center: usize,
    pub blades: Vec<(usize, usize)>,
    pub n_claimed: usize,
}

impl FanCertificate {
    pub fn vertices(&self) -> VertexSet {
        let mut s: VertexSet = self.blades.iter().flat_map(|&(a, b)| [a, b]).collect();
        s.insert(self.center);
        s
    }

    /// Keeps the first `n` blades and claims `n`.
    pub fn truncated(mut self, n: usize) -> Self {
        self.blades.truncate(n);
        self.n_claimed = n;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FanViolation {
    #[error("{have} blades, fewer than the {claimed} claimed")]
    TooFewBlades { have: usize, claimed: usize },
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("vertex {0} used more than once")]
    RepeatedVertex(usize),
    #[error("pair (center {center}, {vertex}) is not {color}")]
    SpokeColor { center: usize, vertex: usize, color: Color },
    #[error("blade ({a}, {b}) is not {color}")]
    BladeColor { a: usize, b: usize, color: Color },
}

/// Checks a certificate against the coloring, reporting the first violation.
pub fn verify_fan(c: &Coloring, cert: &FanCertificate) -> Result<(), FanViolation> {
    if cert.blades.len() < cert.n_claimed {
        return Err(FanViolation::TooFewBlades {
            have: cert.blades.len(),
            claimed: cert.n_claimed,
        });
    }
    let mut seen = VertexSet::with_universe(c.order());
    for v in std::iter::once(cert.center).chain(cert.blades.iter().flat_map(|&(a, b)| [a, b])) {
        if v >= c.order() {
            return Err(FanViolation::OutOfRange(v));
        }
        if !seen.insert(v) {
            return Err(FanViolation::RepeatedVertex(v));
        }
    }
    let color = cert.color;
    for &(a, b) in &cert.blades {
        for v in [a, b] {
            if !c.has(cert.center, v, color) {
                return Err(FanViolation::SpokeColor {
                    center: cert.center,
                    vertex: v,
                    color,
                });
            }
        }
        if !c.has(a, b, color) {
            return Err(FanViolation::BladeColor { a, b, color });
        }
    }
    Ok(())
}

/// First (lowest-center) monochromatic `F_n` of `color`, if any.
pub fn find_mono_fan(c: &Coloring, color: Color, n: usize) -> Option<FanCertificate> {
    find_mono_fan_in(c, color, n, &c.vertices())
}

/// Like [`find_mono_fan`] but with the center and all blades inside `scope`.
pub fn find_mono_fan_in(c: &Coloring, color: Color, n: usize, scope: &VertexSet) -> Option<FanCertificate> {
    for v in scope {
        let nb = c.neighborhood(v, color).intersection(scope);
        if nb.len() < 2 * n {
            continue;
        }
        let m = maximum_matching_capped(c, color, &nb, n);
        if m.len() >= n {
            return Some(FanCertificate {
                color,
                center: v,
                blades: m.edges,
                n_claimed: n,
            });
        }
    }
    None
}

/// A clique in one color; a white clique is an independent set of the black graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueWitness {
    pub color: Color,
    pub vertices: VertexSet,
}

impl CliqueWitness {
    pub fn is_valid(&self, c: &Coloring) -> bool {
        self.vertices.max().is_none_or(|m| m < c.order()) && c.is_clique(&self.vertices, self.color)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// A `color`-clique of exactly `size` vertices inside `scope`, found by
/// branch and bound with greedy-coloring bounds. Exact: `None` means no such clique.
pub fn find_clique(c: &Coloring, color: Color, size: usize, scope: &VertexSet) -> Option<CliqueWitness> {
    let mut current = Vec::with_capacity(size);
    if expand_clique(c, color, size, &mut current, scope.clone()) {
        Some(CliqueWitness {
            color,
            vertices: current.into_iter().collect(),
        })
    } else {
        None
    }
}

fn expand_clique(c: &Coloring, color: Color, k: usize, current: &mut Vec<usize>, mut cand: VertexSet) -> bool {
    if current.len() >= k {
        return true;
    }
    if current.len() + cand.len() < k {
        return false;
    }
    let (order, bounds) = color_classes(c, color, &cand);
    for i in (0..order.len()).rev() {
        if current.len() + bounds[i] < k {
            return false;
        }
        let v = order[i];
        current.push(v);
        let next = cand.intersection(c.neighborhood(v, color));
        if expand_clique(c, color, k, current, next) {
            return true;
        }
        current.pop();
        cand.remove(v);
    }
    false
}

/// Sequential greedy coloring; vertices come out grouped by class, with the
/// class number as an upper bound on any clique among the first `i+1` of them.
fn color_classes(c: &Coloring, color: Color, cand: &VertexSet) -> (Vec<usize>, Vec<usize>) {
    let mut uncolored = cand.clone();
    let mut order = Vec::with_capacity(cand.len());
    let mut bounds = Vec::with_capacity(cand.len());
    let mut class = 0;
    while !uncolored.is_empty() {
        class += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            avail.difference_with(c.neighborhood(v, color));
            uncolored.remove(v);
            order.push(v);
            bounds.push(class);
        }
    }
    (order, bounds)
}

/// One of the four structures that a graph on `3n - c + 4` vertices must contain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum StructureWitness {
    /// `n` disjoint pairs in the working color.
    MatchingNK2(Matching),
    /// An `F_n` in the opposite color.
    ComplementFan(FanCertificate),
    /// A working-color clique on `2n - 2c` vertices.
    Clique(CliqueWitness),
    /// An opposite-color clique on `2n - 2c` vertices.
    ComplementClique(CliqueWitness),
}

impl StructureWitness {
    pub fn label(&self) -> &'static str {
        match self {
            StructureWitness::MatchingNK2(_) => "matching",
            StructureWitness::ComplementFan(_) => "complement_fan",
            StructureWitness::Clique(_) => "clique",
            StructureWitness::ComplementClique(_) => "complement_clique",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no structure found in a scope of {scope_len} vertices (n = {n}, c = {cc})")]
    LemmaFailure { n: usize, cc: usize, scope_len: usize },
    #[error("construction failed: {0}")]
    ConstructionFailure(String),
}

/// Searches `scope` for, in order: a `color` matching of `n` edges, an
/// opposite-color `F_n`, a `color` clique of `2n - 2cc` vertices, an
/// opposite-color clique of `2n - 2cc` vertices.
///
/// Requires `|scope| = 3n - cc + 4` and `0 < cc < 5n/8`, under which one of
/// the four always exists.
pub fn lemma22_search(
    c: &Coloring,
    color: Color,
    scope: &VertexSet,
    n: usize,
    cc: usize,
) -> Result<StructureWitness, StructureError> {
    if n == 0 || cc == 0 || 8 * cc >= 5 * n {
        return Err(StructureError::PreconditionViolated(format!(
            "need 0 < c < 5n/8, got n = {n}, c = {cc}"
        )));
    }
    if scope.len() != 3 * n + 4 - cc {
        return Err(StructureError::PreconditionViolated(format!(
            "scope has {} vertices, expected 3n - c + 4 = {}",
            scope.len(),
            3 * n + 4 - cc
        )));
    }
    if scope.max().is_some_and(|m| m >= c.order()) {
        return Err(StructureError::PreconditionViolated("scope outside the coloring".into()));
    }
    let m = maximum_matching_capped(c, color, scope, n);
    if m.len() >= n {
        return Ok(StructureWitness::MatchingNK2(m));
    }
    if let Some(fan) = find_mono_fan_in(c, color.swap(), n, scope) {
        return Ok(StructureWitness::ComplementFan(fan));
    }
    let size = 2 * n - 2 * cc;
    if let Some(k) = find_clique(c, color, size, scope) {
        return Ok(StructureWitness::Clique(k));
    }
    if let Some(k) = find_clique(c, color.swap(), size, scope) {
        return Ok(StructureWitness::ComplementClique(k));
    }
    Err(StructureError::LemmaFailure {
        n,
        cc,
        scope_len: scope.len(),
    })
}

/// `ceil(3k/4 - 3/2)` for `k >= 2`.
pub fn lemma23_target(k: usize) -> usize {
    (3 * k).saturating_sub(3) / 4
}

/// Given a `color`-clique `a` and an opposite-color clique `b` of equal size
/// `k >= 3`, builds a fan with at least `ceil(3k/4 - 3/2)` blades.
///
/// With `d` the largest number of `color` neighbors a vertex of `a` has in
/// `b`: if that is at least the largest number of opposite-color neighbors a
/// vertex of `b` has in `a`, the fan is centered in `a`, either through a
/// matching of deficiency at most `d - k/2` or through its Hall violator `U`,
/// which yields an opposite-color fan at some `u` in `U`. Otherwise the same
/// argument runs with colors and the roles of `a` and `b` exchanged.
pub fn lemma23_construct(
    c: &Coloring,
    color: Color,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<FanCertificate, StructureError> {
    let k = a.len();
    let pre = |msg: String| Err(StructureError::PreconditionViolated(msg));
    if k < 3 || b.len() != k {
        return pre(format!("need |A| = |B| >= 3, got {} and {}", a.len(), b.len()));
    }
    if !a.is_disjoint(b) {
        return pre("A and B intersect".into());
    }
    if a.union(b).max().is_some_and(|m| m >= c.order()) {
        return pre("vertex out of range".into());
    }
    if !c.is_clique(a, color) || !c.is_clique(b, color.swap()) {
        return pre(format!("A must be a {color} clique and B a {} clique", color.swap()));
    }
    let max_into = |from: &VertexSet, to: &VertexSet, col: Color| {
        from.iter()
            .map(|v| c.neighborhood(v, col).intersection_len(to))
            .max()
            .unwrap_or(0)
    };
    if max_into(a, b, color) >= max_into(b, a, color.swap()) {
        lemma23_oriented(c, color, a, b)
    } else {
        lemma23_oriented(c, color.swap(), b, a)
    }
}

fn lemma23_oriented(c: &Coloring, color: Color, a: &VertexSet, b: &VertexSet) -> Result<FanCertificate, StructureError> {
    let k = a.len();
    let target = lemma23_target(k);
    let (z, d) = a
        .iter()
        .map(|v| (v, c.neighborhood(v, color).intersection_len(b)))
        .fold((usize::MAX, 0), |best, cur| if best.0 == usize::MAX || cur.1 > best.1 { cur } else { best });
    if 2 * d < k {
        return Err(StructureError::ConstructionFailure(format!("max degree {d} into B below k/2")));
    }
    let x = c.neighborhood(z, color).intersection(b);
    let mut y = a.clone();
    y.remove(z);
    let hall = hall_analysis(c, color, &x, &y).expect("A and B are disjoint");
    let def = hall.certificate.deficiency;

    let mut fan = if 2 * def + k <= 2 * d {
        let mut builder = FanBuilder::new(c, color, z);
        builder.add_matching(&hall.matching);
        builder.pair_within(&y);
        builder
    } else {
        let u_set = &hall.certificate.s;
        let u = u_set.first().expect("positive deficiency gives a nonempty violator");
        let free_a = a.difference(&c.set_neighborhood(u_set, color));
        let mut rest_b = b.clone();
        rest_b.remove(u);
        let mut builder = FanBuilder::new(c, color.swap(), u);
        builder.cross(&free_a, &rest_b, usize::MAX);
        builder.pair_within(&rest_b);
        builder
    }
    .finish();
    fan.n_claimed = target;
    if fan.blades.len() < target {
        return Err(StructureError::ConstructionFailure(format!(
            "built {} blades, need {target}",
            fan.blades.len()
        )));
    }
    verify_fan(c, &fan).map_err(|e| StructureError::ConstructionFailure(e.to_string()))?;
    Ok(fan)
}

/// Accumulates blades around a fixed center, never reusing a vertex.
pub struct FanBuilder<'a> {
    c: &'a Coloring,
    color: Color,
    center: usize,
    used: VertexSet,
    blades: Vec<(usize, usize)>,
}

impl<'a> FanBuilder<'a> {
    pub fn new(c: &'a Coloring, color: Color, center: usize) -> Self {
        let mut used = VertexSet::with_universe(c.order());
        used.insert(center);
        Self {
            c,
            color,
            center,
            used,
            blades: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.blades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blades.is_empty()
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn used(&self) -> &VertexSet {
        &self.used
    }

    fn push(&mut self, a: usize, b: usize) {
        self.used.insert(a);
        self.used.insert(b);
        self.blades.push((a.min(b), a.max(b)));
    }

    /// Adds the edges of `m` whose endpoints are both still unused.
    pub fn add_matching(&mut self, m: &Matching) -> usize {
        let before = self.len();
        for &(a, b) in &m.edges {
            if !self.used.contains(a) && !self.used.contains(b) {
                self.push(a, b);
            }
        }
        self.len() - before
    }

    /// Adds up to `limit` blades with one end in `from` and the other in `to`,
    /// via a maximum bipartite matching on the unused parts.
    pub fn cross(&mut self, from: &VertexSet, to: &VertexSet, limit: usize) -> usize {
        let x = from.difference(&self.used);
        let y = to.difference(&self.used).difference(&x);
        let m = bipartite_maximum_matching(self.c, self.color, &x, &y).expect("disjoint by construction");
        let before = self.len();
        for &(a, b) in m.edges.iter().take(limit) {
            self.push(a, b);
        }
        self.len() - before
    }

    /// Pairs up unused vertices of `pool` among themselves.
    pub fn pair_within(&mut self, pool: &VertexSet) -> usize {
        let free = pool.difference(&self.used);
        let m = greedy_maximal_matching(self.c, self.color, &free);
        self.add_matching(&m)
    }

    pub fn finish(self) -> FanCertificate {
        let n = self.blades.len();
        FanCertificate {
            color: self.color,
            center: self.center,
            blades: self.blades,
            n_claimed: n,
        }
    }
}

impl fmt::Debug for FanBuilder<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FanBuilder")
            .field("color", &self.color)
            .field("center", &self.center)
            .field("blades", &self.blades)
            .finish()
    }
}

/// Maximum matching number of the `color` graph on the `color`-neighborhood of `v` inside `scope`.
pub fn fan_number_at(c: &Coloring, color: Color, v: usize, scope: &VertexSet) -> usize {
    maximum_matching_general(c, color, &c.neighborhood(v, color).intersection(scope)).len()
}
