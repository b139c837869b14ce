//! Matchings inside color-restricted induced subgraphs, and Hall deficiency
//! certificates for bipartite instances.
//!
//! Tie-breaking is lexicographic everywhere so every certificate is reproducible.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::coloring::{Color, Coloring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("bipartition sides overlap in {0:?}")]
    Overlap(VertexSet),
}

/// Vertex-disjoint pairs, all of one color. Each edge is stored as `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub color: Color,
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn empty(color: Color) -> Self {
        Self {
            color,
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> VertexSet {
        self.edges.iter().flat_map(|&(a, b)| [a, b]).collect()
    }

    /// Edges are disjoint, of the matching's color, and inside `scope`.
    pub fn is_valid_in(&self, c: &Coloring, scope: &VertexSet) -> bool {
        let mut seen = VertexSet::new();
        self.edges.iter().all(|&(a, b)| {
            a != b
                && scope.contains(a)
                && scope.contains(b)
                && c.has(a, b, self.color)
                && seen.insert(a)
                && seen.insert(b)
        })
    }

    fn from_mates(color: Color, ids: &[usize], mate: &[usize]) -> Self {
        let mut edges: Vec<(usize, usize)> = (0..ids.len())
            .filter(|&i| mate[i] != NONE && i < mate[i])
            .map(|i| {
                let (a, b) = (ids[i], ids[mate[i]]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        Self { color, edges }
    }
}

/// Whether later steps use a greedy maximal or a maximum matching where only
/// maximality is required.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchingMode {
    #[default]
    Greedy,
    Maximum,
}

pub fn inner_matching(c: &Coloring, color: Color, scope: &VertexSet, mode: MatchingMode) -> Matching {
    match mode {
        MatchingMode::Greedy => greedy_maximal_matching(c, color, scope),
        MatchingMode::Maximum => maximum_matching_general(c, color, scope),
    }
}

/// Repeatedly takes the lexicographically smallest `color` pair of unmatched scope vertices.
pub fn greedy_maximal_matching(c: &Coloring, color: Color, scope: &VertexSet) -> Matching {
    let mut free = scope.clone();
    let mut edges = Vec::new();
    for u in scope {
        if !free.contains(u) {
            continue;
        }
        free.remove(u);
        let partner = c.neighborhood(u, color).intersection(&free).first();
        if let Some(w) = partner {
            free.remove(w);
            edges.push((u, w));
        }
    }
    Matching { color, edges }
}

/// Greedy maximal matching using only pairs between `x` and `y`, scanning `x` in order.
pub fn greedy_bipartite_matching(c: &Coloring, color: Color, x: &VertexSet, y: &VertexSet) -> Matching {
    let mut free = y.difference(x);
    let mut edges = Vec::new();
    for u in x.difference(y).iter() {
        if let Some(w) = c.neighborhood(u, color).intersection(&free).first() {
            free.remove(w);
            edges.push((u.min(w), u.max(w)));
        }
    }
    edges.sort_unstable();
    Matching { color, edges }
}

const NONE: usize = usize::MAX;

/// Maximum matching of the `color` graph induced on `scope` (Edmonds' blossom algorithm).
pub fn maximum_matching_general(c: &Coloring, color: Color, scope: &VertexSet) -> Matching {
    maximum_matching_capped(c, color, scope, usize::MAX)
}

/// Like [`maximum_matching_general`] but stops as soon as `cap` edges are matched.
pub fn maximum_matching_capped(c: &Coloring, color: Color, scope: &VertexSet, cap: usize) -> Matching {
    let ids = scope.to_vec();
    let k = ids.len();
    let mut local = vec![NONE; c.order()];
    for (i, &v) in ids.iter().enumerate() {
        local[v] = i;
    }
    let adj: Vec<Vec<usize>> = ids
        .iter()
        .map(|&v| {
            c.neighborhood(v, color)
                .intersection(scope)
                .iter()
                .map(|u| local[u])
                .collect()
        })
        .collect();

    let mut mate = vec![NONE; k];
    let mut size = 0;
    // greedy start, lexicographic
    for i in 0..k {
        if mate[i] == NONE {
            if let Some(&j) = adj[i].iter().find(|&&j| j > i && mate[j] == NONE) {
                mate[i] = j;
                mate[j] = i;
                size += 1;
            }
        }
    }
    if size < cap {
        let mut search = BlossomSearch::new(k);
        for root in 0..k {
            if size >= cap || 2 * (size + 1) > k {
                break;
            }
            if mate[root] != NONE {
                continue;
            }
            if let Some(mut v) = search.find_path(&adj, &mate, root) {
                while v != NONE {
                    let pv = search.parent[v];
                    let ppv = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = ppv;
                }
                size += 1;
            }
        }
    }
    let mut m = Matching::from_mates(color, &ids, &mate);
    m.edges.truncate(cap.min(m.edges.len()));
    m
}

struct BlossomSearch {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl BlossomSearch {
    fn new(k: usize) -> Self {
        Self {
            parent: vec![NONE; k],
            base: (0..k).collect(),
            used: vec![false; k],
            blossom: vec![false; k],
            queue: Vec::with_capacity(k),
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, adj: &[Vec<usize>], mate: &[usize], root: usize) -> Option<usize> {
        let k = adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &to in &adj[v] {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..k {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    let next = mate[to];
                    self.used[next] = true;
                    self.queue.push(next);
                }
            }
        }
        None
    }
}

fn check_disjoint(x: &VertexSet, y: &VertexSet) -> Result<(), MatchingError> {
    let common = x.intersection(y);
    if common.is_empty() {
        Ok(())
    } else {
        Err(MatchingError::Overlap(common))
    }
}

/// Mate arrays for a bipartite instance, indexed by global vertex id.
struct Bipartite<'a> {
    c: &'a Coloring,
    color: Color,
    y: &'a VertexSet,
    mate: Vec<usize>,
}

impl<'a> Bipartite<'a> {
    fn solve(c: &'a Coloring, color: Color, x: &'a VertexSet, y: &'a VertexSet) -> Self {
        let mut b = Bipartite {
            c,
            color,
            y,
            mate: vec![NONE; c.order()],
        };
        for u in x {
            if let Some(w) = b.c.neighborhood(u, color).iter().find(|&w| y.contains(w) && b.mate[w] == NONE) {
                b.mate[u] = w;
                b.mate[w] = u;
            }
        }
        for u in x {
            if b.mate[u] == NONE {
                let mut visited = VertexSet::with_universe(c.order());
                b.augment(u, &mut visited);
            }
        }
        b
    }

    fn augment(&mut self, u: usize, visited: &mut VertexSet) -> bool {
        let cand = self.c.neighborhood(u, self.color).intersection(self.y);
        for w in cand.iter() {
            if !visited.insert(w) {
                continue;
            }
            if self.mate[w] == NONE || self.augment(self.mate[w], visited) {
                self.mate[u] = w;
                self.mate[w] = u;
                return true;
            }
        }
        false
    }

    fn matching(&self, x: &VertexSet) -> Matching {
        let mut edges: Vec<(usize, usize)> = x
            .iter()
            .filter(|&u| self.mate[u] != NONE)
            .map(|u| (u.min(self.mate[u]), u.max(self.mate[u])))
            .collect();
        edges.sort_unstable();
        Matching {
            color: self.color,
            edges,
        }
    }
}

/// Maximum matching using only `color` pairs between `x` and `y`.
pub fn bipartite_maximum_matching(
    c: &Coloring,
    color: Color,
    x: &VertexSet,
    y: &VertexSet,
) -> Result<Matching, MatchingError> {
    check_disjoint(x, y)?;
    Ok(Bipartite::solve(c, color, x, y).matching(x))
}

/// A subset `S` of the left side together with its neighborhood on the right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyCertificate {
    pub s: VertexSet,
    pub ns: VertexSet,
    pub deficiency: usize,
}

impl DeficiencyCertificate {
    /// Recomputes `N(S) ∩ Y` and the deficiency against the coloring.
    pub fn is_valid(&self, c: &Coloring, color: Color, x: &VertexSet, y: &VertexSet) -> bool {
        self.s.is_subset(x)
            && c.set_neighborhood(&self.s, color).intersection(y) == self.ns
            && self.s.len() == self.ns.len() + self.deficiency
    }
}

/// A maximum matching from `x` to `y` and the deficiency set read off it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallAnalysis {
    pub matching: Matching,
    pub certificate: DeficiencyCertificate,
}

/// The `S ⊆ x` maximizing `|S| - |N(S) ∩ y|`: the left vertices reachable by
/// alternating paths from unmatched left vertices of a maximum matching.
pub fn hall_analysis(
    c: &Coloring,
    color: Color,
    x: &VertexSet,
    y: &VertexSet,
) -> Result<HallAnalysis, MatchingError> {
    check_disjoint(x, y)?;
    let b = Bipartite::solve(c, color, x, y);
    let mut s = VertexSet::with_universe(c.order());
    let mut ns = VertexSet::with_universe(c.order());
    let mut queue: Vec<usize> = x.iter().filter(|&u| b.mate[u] == NONE).collect();
    for &u in &queue {
        s.insert(u);
    }
    while let Some(u) = queue.pop() {
        for w in c.neighborhood(u, color).intersection(y).iter() {
            if ns.insert(w) {
                let m = b.mate[w];
                debug_assert!(m != NONE, "unmatched right vertex reachable: matching not maximum");
                if s.insert(m) {
                    queue.push(m);
                }
            }
        }
    }
    let matching = b.matching(x);
    let deficiency = x.len() - matching.len();
    debug_assert_eq!(s.len() - ns.len(), deficiency);
    Ok(HallAnalysis {
        matching,
        certificate: DeficiencyCertificate { s, ns, deficiency },
    })
}

pub fn max_deficiency_certificate(
    c: &Coloring,
    color: Color,
    x: &VertexSet,
    y: &VertexSet,
) -> Result<DeficiencyCertificate, MatchingError> {
    hall_analysis(c, color, x, y).map(|h| h.certificate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::random_coloring;

    fn brute_matching(c: &Coloring, color: Color, scope: &[usize]) -> usize {
        fn go(c: &Coloring, color: Color, rest: &[usize]) -> usize {
            let Some((&v, tail)) = rest.split_first() else { return 0 };
            let mut best = go(c, color, tail);
            for (i, &u) in tail.iter().enumerate() {
                if c.has(u, v, color) {
                    let remaining: Vec<usize> =
                        tail.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &w)| w).collect();
                    best = best.max(1 + go(c, color, &remaining));
                }
            }
            best
        }
        go(c, color, scope)
    }

    fn c5() -> Coloring {
        Coloring::from_fn(5, |u, v| if v - u == 1 || v - u == 4 { Color::Black } else { Color::White })
    }

    #[test]
    fn greedy_examples() {
        let k4 = Coloring::monochromatic(4, Color::Black);
        assert_eq!(greedy_maximal_matching(&k4, Color::Black, &k4.vertices()).edges, vec![(0, 1), (2, 3)]);
        let w4 = Coloring::monochromatic(4, Color::White);
        let m = greedy_maximal_matching(&w4, Color::Black, &w4.vertices());
        assert!(m.is_empty());
        assert!(w4.is_clique(&w4.vertices().difference(&m.vertices()), Color::White));
    }

    #[test]
    fn greedy_is_maximal() {
        for seed in 0..50 {
            let c = random_coloring(12, seed, 0.3);
            let scope = c.vertices();
            let m = greedy_maximal_matching(&c, Color::Black, &scope);
            assert!(m.is_valid_in(&c, &scope));
            let free = scope.difference(&m.vertices());
            for u in &free {
                for v in &free {
                    assert!(u == v || !c.has(u, v, Color::Black));
                }
            }
        }
    }

    #[test]
    fn general_examples() {
        let c = c5();
        assert_eq!(maximum_matching_general(&c, Color::Black, &c.vertices()).len(), 2);
        let k4 = Coloring::monochromatic(4, Color::Black);
        assert_eq!(maximum_matching_general(&k4, Color::Black, &k4.vertices()).len(), 2);
    }

    #[test]
    fn general_matches_brute_force() {
        for seed in 0..200 {
            let c = random_coloring(14, seed, [0.15, 0.3, 0.5][seed as usize % 3]);
            let scope: VertexSet = (0..14).filter(|v| (seed >> (v % 8)) & 1 == 0 || v % 3 == 0).take(10).collect();
            for color in Color::BOTH {
                let m = maximum_matching_general(&c, color, &scope);
                assert!(m.is_valid_in(&c, &scope));
                assert_eq!(m.len(), brute_matching(&c, color, &scope.to_vec()), "seed {seed}");
                let g = greedy_maximal_matching(&c, color, &scope);
                assert!(g.len() <= m.len() && m.len() <= 2 * g.len());
            }
        }
    }

    #[test]
    fn capped_stops_at_cap() {
        let k10 = Coloring::monochromatic(10, Color::Black);
        assert_eq!(maximum_matching_capped(&k10, Color::Black, &k10.vertices(), 3).len(), 3);
    }

    #[test]
    fn bipartite_examples() {
        let c = Coloring::from_fn(4, |u, v| if (u < 2) != (v < 2) { Color::Black } else { Color::White });
        let x: VertexSet = [0, 1].into_iter().collect();
        let y: VertexSet = [2, 3].into_iter().collect();
        assert_eq!(bipartite_maximum_matching(&c, Color::Black, &x, &y).unwrap().len(), 2);
        assert!(bipartite_maximum_matching(&c, Color::White, &x, &y).unwrap().is_empty());
        assert!(matches!(
            bipartite_maximum_matching(&c, Color::Black, &x, &x),
            Err(MatchingError::Overlap(_))
        ));
    }

    #[test]
    fn deficiency_examples() {
        // 0,1,2 black only to 3
        let c = Coloring::from_fn(5, |u, v| if v == 3 && u < 3 { Color::Black } else { Color::White });
        let x: VertexSet = [0, 1, 2].into_iter().collect();
        let y: VertexSet = [3, 4].into_iter().collect();
        let cert = max_deficiency_certificate(&c, Color::Black, &x, &y).unwrap();
        assert_eq!(cert.s, x);
        assert_eq!(cert.ns.to_vec(), vec![3]);
        assert_eq!(cert.deficiency, 2);
        assert!(cert.is_valid(&c, Color::Black, &x, &y));

        let k4 = Coloring::monochromatic(4, Color::Black);
        let x: VertexSet = [0, 1].into_iter().collect();
        let y: VertexSet = [2, 3].into_iter().collect();
        let cert = max_deficiency_certificate(&k4, Color::Black, &x, &y).unwrap();
        assert!(cert.s.is_empty());
        assert_eq!(cert.deficiency, 0);
    }
}
