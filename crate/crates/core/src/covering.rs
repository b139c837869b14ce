//! The sets `S(v, A)` and `C(v, A)` of a monochromatic clique `A`, and greedy
//! covering sequences built from them.
//!
//! For a `col`-clique `A` and `v` in `A`, let `M` be a maximal `col` matching
//! in `N(v) \ A` and `M'` a maximum matching from the rest of `N(v) \ A` into
//! `A \ {v}`. Either `M`, `M'` and pairs of the unmatched part of `A \ {v}`
//! already form an `F_n` at `v`, or the Hall deficiency of `M'` exposes a set
//! `S` with `|S| >= |N(S) ∩ A| + deg(v) - 2n`; `C = N(S) ∩ A`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::coloring::Coloring;
use crate::matching::{hall_analysis, inner_matching, Matching, MatchingMode};
use crate::structure::{verify_fan, CliqueWitness, FanBuilder, FanCertificate};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScRecord {
    pub v: usize,
    pub s: VertexSet,
    pub c: VertexSet,
    pub m: Matching,
    pub mp: Matching,
    /// Degree of `v` in the clique's color.
    pub deg_v: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverRecord {
    pub clique: CliqueWitness,
    pub n: usize,
    /// One record per vertex of the clique, in increasing vertex order.
    pub records: Vec<ScRecord>,
    pub sequence: Vec<usize>,
}

impl CoverRecord {
    pub fn t(&self) -> usize {
        self.sequence.len()
    }

    pub fn record(&self, v: usize) -> Option<&ScRecord> {
        self.records
            .binary_search_by_key(&v, |r| r.v)
            .ok()
            .map(|i| &self.records[i])
    }

    /// The record of the `i`-th covering vertex (0-based).
    pub fn step(&self, i: usize) -> &ScRecord {
        self.record(self.sequence[i]).expect("sequence vertices have records")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScOutcome {
    Record(ScRecord),
    Fan(FanCertificate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverOutcome {
    Cover(CoverRecord),
    Fan(FanCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverViolation {
    #[error("record for {v}: S is not inside N(v) minus A and V(M)")]
    SOutsideNeighborhood { v: usize },
    #[error("record for {v}: S is not a clique of the opposite color")]
    SNotClique { v: usize },
    #[error("record for {v}: C differs from N(S) ∩ A")]
    WrongC { v: usize },
    #[error("record for {v}: |S| < |C| + deg(v) - 2n")]
    SurplusTooSmall { v: usize },
    #[error("record for {v}: |C| > 2n + 1 - |A|")]
    CTooLarge { v: usize },
    #[error("record for {v}: |S| > deg(v) + 1 - |A|")]
    STooLarge { v: usize },
    #[error("record for {v}: stored degree or matchings disagree with the coloring")]
    BadRecord { v: usize },
    #[error("records do not correspond one-to-one with the clique")]
    RecordSet,
    #[error("the C sets of the sequence do not cover the clique")]
    NotCovering,
    #[error("v_{i} lies in an earlier C set or outside the clique")]
    RepeatedVertex { i: usize },
    #[error("v_{i} does not maximize marginal coverage")]
    NotMaximal { i: usize },
    #[error("marginal coverage of v_{j1} is smaller than that of v_{j2} measured at step {j1}")]
    NotMonotone { j1: usize, j2: usize },
    #[error("S(v_{i}) and S(v_{j}) intersect")]
    SNotDisjoint { i: usize, j: usize },
    #[error("|A| = {size} forces at least {need} covering vertices, found {t}")]
    ThresholdViolated { size: usize, t: usize, need: usize },
}

fn pre<T>(msg: impl Into<String>) -> Result<T, CoverError> {
    Err(CoverError::PreconditionViolated(msg.into()))
}

fn check_clique(c: &Coloring, a: &CliqueWitness, n: usize) -> Result<(), CoverError> {
    if !a.is_valid(c) {
        return pre(format!("A is not a {} clique", a.color));
    }
    if a.len() <= n {
        return pre(format!("|A| = {} must exceed n = {n}", a.len()));
    }
    Ok(())
}

/// Constructs `S(v, A)` and `C(v, A)`, or the fan at `v` that makes them unnecessary.
///
/// `S` starts as the maximum-deficiency set of the `M'` instance and is then
/// pruned to an inclusion-minimal set that keeps `|S| >= |N(S) ∩ A| + deg - 2n`.
pub fn build_sc(c: &Coloring, a: &CliqueWitness, v: usize, n: usize, mode: MatchingMode) -> Result<ScOutcome, CoverError> {
    check_clique(c, a, n)?;
    if !a.vertices.contains(v) {
        return pre(format!("{v} is not in A"));
    }
    sc_unchecked(c, a, v, n, mode)
}

fn sc_unchecked(c: &Coloring, a: &CliqueWitness, v: usize, n: usize, mode: MatchingMode) -> Result<ScOutcome, CoverError> {
    let col = a.color;
    let deg = c.degree(v, col);
    if deg <= 2 * n {
        return pre(format!("vertex {v} has {col} degree {deg}, need more than {}", 2 * n));
    }
    let outside = c.neighborhood(v, col).difference(&a.vertices);
    let m = inner_matching(c, col, &outside, mode);
    let x = outside.difference(&m.vertices());
    let mut rest_a = a.vertices.clone();
    rest_a.remove(v);
    let hall = hall_analysis(c, col, &x, &rest_a).expect("x avoids A");

    let mut fan = FanBuilder::new(c, col, v);
    fan.add_matching(&m);
    fan.add_matching(&hall.matching);
    fan.pair_within(&rest_a);
    if fan.len() >= n {
        let cert = fan.finish().truncated(n);
        verify_fan(c, &cert).map_err(|e| CoverError::Internal(e.to_string()))?;
        return Ok(ScOutcome::Fan(cert));
    }

    // need = deg + 1 - 2n >= 2
    let need = deg + 1 - 2 * n;
    let surplus = |s: &VertexSet| s.len() as isize - c.set_neighborhood(s, col).intersection_len(&rest_a) as isize;
    let mut s = hall.certificate.s;
    if surplus(&s) < need as isize {
        return Err(CoverError::Internal(format!(
            "deficiency {} below {need} without a fan at {v}",
            hall.certificate.deficiency
        )));
    }
    loop {
        let mut changed = false;
        for x in s.to_vec() {
            s.remove(x);
            if surplus(&s) >= need as isize {
                changed = true;
            } else {
                s.insert(x);
            }
        }
        if !changed {
            break;
        }
    }
    let cset = c.set_neighborhood(&s, col).intersection(&a.vertices);
    let rec = ScRecord {
        v,
        s,
        c: cset,
        m,
        mp: hall.matching,
        deg_v: deg,
    };
    check_sc(c, a, &rec, n).map_err(|e| CoverError::Internal(e.to_string()))?;
    Ok(ScOutcome::Record(rec))
}

/// Checks the invariants of a single record against the coloring.
pub fn check_sc(c: &Coloring, a: &CliqueWitness, rec: &ScRecord, n: usize) -> Result<(), CoverViolation> {
    let v = rec.v;
    let col = a.color;
    let outside = c.neighborhood(v, col).difference(&a.vertices);
    if rec.deg_v != c.degree(v, col)
        || !a.vertices.contains(v)
        || rec.m.color != col
        || !rec.m.is_valid_in(c, &outside)
    {
        return Err(CoverViolation::BadRecord { v });
    }
    if !rec.s.is_subset(&outside.difference(&rec.m.vertices())) {
        return Err(CoverViolation::SOutsideNeighborhood { v });
    }
    if !c.is_clique(&rec.s, col.swap()) {
        return Err(CoverViolation::SNotClique { v });
    }
    if c.set_neighborhood(&rec.s, col).intersection(&a.vertices) != rec.c {
        return Err(CoverViolation::WrongC { v });
    }
    let (s, cs, k) = (rec.s.len(), rec.c.len(), a.len());
    if s + 2 * n < cs + rec.deg_v {
        return Err(CoverViolation::SurplusTooSmall { v });
    }
    if cs + k > 2 * n + 1 {
        return Err(CoverViolation::CTooLarge { v });
    }
    if s + k > rec.deg_v + 1 {
        return Err(CoverViolation::STooLarge { v });
    }
    Ok(())
}

/// The canonical greedy covering sequence of `A`.
///
/// `v_1` maximizes `|C(v, A)|`; each later `v_i` is taken outside the union so
/// far and maximizes the number of newly covered vertices; ties go to the
/// lowest index. If some `build_sc` call yields a fan, the fan for the lowest
/// such vertex is returned instead.
pub fn compute_cover(c: &Coloring, a: &CliqueWitness, n: usize, mode: MatchingMode) -> Result<CoverOutcome, CoverError> {
    check_clique(c, a, n)?;
    if a.len() > 2 * n {
        return pre(format!("|A| = {} must be below 2n + 1 = {}", a.len(), 2 * n + 1));
    }
    let mut records = Vec::with_capacity(a.len());
    for v in &a.vertices {
        match sc_unchecked(c, a, v, n, mode)? {
            ScOutcome::Record(r) => records.push(r),
            ScOutcome::Fan(f) => return Ok(CoverOutcome::Fan(f)),
        }
    }
    let mut covered = VertexSet::with_universe(c.order());
    let mut sequence = Vec::new();
    while covered != a.vertices {
        let best = records
            .iter()
            .filter(|r| !covered.contains(r.v))
            .map(|r| (r.c.difference(&covered).len(), r))
            .fold(None::<(usize, &ScRecord)>, |acc, cur| match acc {
                Some(b) if b.0 >= cur.0 => Some(b),
                _ => Some(cur),
            })
            .map(|(_, r)| r)
            .ok_or_else(|| CoverError::Internal("no uncovered vertex left".into()))?;
        covered.union_with(&best.c);
        sequence.push(best.v);
    }
    let rec = CoverRecord {
        clique: a.clone(),
        n,
        records,
        sequence,
    };
    check_cover_invariants(c, &rec, n).map_err(|e| CoverError::Internal(e.to_string()))?;
    Ok(CoverOutcome::Cover(rec))
}

/// Checks every record and the covering conditions, reporting the first violation.
pub fn check_cover_invariants(c: &Coloring, rec: &CoverRecord, n: usize) -> Result<(), CoverViolation> {
    let a = &rec.clique;
    let ids: Vec<usize> = rec.records.iter().map(|r| r.v).collect();
    if ids != a.vertices.to_vec() {
        return Err(CoverViolation::RecordSet);
    }
    for r in &rec.records {
        check_sc(c, a, r, n)?;
    }
    let cset = |v: usize| &rec.record(v).expect("ids checked").c;

    let mut prefix = VertexSet::new();
    let mut prefixes = Vec::with_capacity(rec.t());
    for (i, &v) in rec.sequence.iter().enumerate() {
        if !a.vertices.contains(v) || prefix.contains(v) {
            return Err(CoverViolation::RepeatedVertex { i: i + 1 });
        }
        let gain = cset(v).difference(&prefix).len();
        let beaten = a
            .vertices
            .iter()
            .filter(|&z| !prefix.contains(z))
            .any(|z| cset(z).difference(&prefix).len() > gain);
        if beaten {
            return Err(CoverViolation::NotMaximal { i: i + 1 });
        }
        prefixes.push(prefix.clone());
        prefix.union_with(cset(v));
    }
    if prefix != a.vertices {
        return Err(CoverViolation::NotCovering);
    }
    for (j1, p) in prefixes.iter().enumerate() {
        let gain = cset(rec.sequence[j1]).difference(p).len();
        for j2 in j1 + 1..rec.t() {
            if cset(rec.sequence[j2]).difference(p).len() > gain {
                return Err(CoverViolation::NotMonotone { j1: j1 + 1, j2: j2 + 1 });
            }
        }
    }
    for i in 0..rec.t() {
        for j in i + 1..rec.t() {
            if !rec.step(i).s.is_disjoint(&rec.step(j).s) {
                return Err(CoverViolation::SNotDisjoint { i: i + 1, j: j + 1 });
            }
        }
    }
    // |A| > (k-1)/k (2n+1) forces t >= k; the strongest instance is k = t + 1.
    let (size, t) = (a.len(), rec.t());
    if size * (t + 1) > t * (2 * n + 1) {
        return Err(CoverViolation::ThresholdViolated { size, t, need: t + 1 });
    }
    Ok(())
}
