//! Extraction of a monochromatic `F_n` from any coloring of `K_N` with
//! `N >= floor(31n/6) + 15`.
//!
//! Faithful mode follows the five-case argument on `d`, the largest degree in
//! either color. Every step that the argument closes by contradiction is
//! either a fan construction or an [`ExtractError::Unreachable`] carrying the
//! trace so far. Fast mode searches for a fan directly and only falls back to
//! the faithful walk if that fails.

mod audit;
mod balanced;
mod trace;
mod two_cover;

pub use audit::{case_reachability, Reachability};
pub use balanced::{CWitness, COutcome, TOutcome, TWitness};
pub use trace::{ExtractionTrace, TraceStep};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::coloring::{context_of, theorem_order, Color, Coloring, Context};
use crate::covering::{compute_cover, CoverError, CoverOutcome, CoverRecord};
use crate::matching::{maximum_matching_capped, MatchingMode};
use crate::structure::{
    find_mono_fan, find_mono_fan_in, lemma22_search, verify_fan, CliqueWitness, FanBuilder, FanCertificate,
    StructureError, StructureWitness,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Fast,
    #[default]
    Faithful,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fast" => Ok(Mode::Fast),
            "faithful" => Ok(Mode::Faithful),
            _ => Err(format!("unknown mode {s:?}, expected fast or faithful")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unreachable branch {label}")]
    Unreachable { label: String, trace: Box<ExtractionTrace> },
    #[error("internal error: {0}")]
    Internal(String),
}

/// Every label that can end up in [`ExtractionTrace::branch`].
pub const BRANCHES: &[&str] = &[
    "fast.direct",
    "high_d.dense_matching",
    "high_d.dense_complement_fan",
    "high_d.lemma22_matching",
    "high_d.lemma22_complement_fan",
    "low_d.lemma22_matching",
    "low_d.lemma22_complement_fan",
    "cover.fan",
    "clique.direct",
    "t4.fan",
    "mid.low_vertex_matching",
    "mid.low_vertex_complement_fan",
    "mid.low_vertex_lemma23",
    "mid.t_fan",
    "mid.c_fan_small_t",
    "mid.c_fan_large_t",
    "mid.fan_a1",
    "mid.fan_a2",
    "mid.fan_a2_short",
    "big3.v3_fan",
    "big3.t_fan",
    "big3.c_fan_small_t",
    "big3.c_fan_large_t",
    "big3.fan_a1",
    "big3.fan_a2",
    "big3.fan_a2_third",
    "two.fan_wide",
    "two.fan_narrow",
];

/// `num/den * n + add`, exactly.
pub(crate) fn lin(n: usize, num: i64, den: i64, add: i64) -> Ratio<i64> {
    Ratio::new(num * n as i64, den) + add
}

pub(crate) fn int(x: usize) -> Ratio<i64> {
    Ratio::from_integer(x as i64)
}

/// Extracts a verified monochromatic `F_n`.
pub fn extract_fan(c: &Coloring, n: usize, mode: Mode) -> Result<(FanCertificate, ExtractionTrace), ExtractError> {
    let mut run = Extraction::new(c, n)?;
    let cert = match mode {
        Mode::Fast => run.fast()?,
        Mode::Faithful => run.faithful()?,
    };
    Ok((cert, run.into_trace()))
}

/// One extraction in progress: the input, its degree context and the trace.
pub struct Extraction<'a> {
    c: &'a Coloring,
    n: usize,
    ctx: Context,
    matching_mode: MatchingMode,
    trace: ExtractionTrace,
}

impl<'a> Extraction<'a> {
    pub fn new(c: &'a Coloring, n: usize) -> Result<Self, ExtractError> {
        if n == 0 {
            return Err(ExtractError::PreconditionViolated("n must be at least 1".into()));
        }
        let need = theorem_order(n);
        if c.order() < need {
            return Err(ExtractError::PreconditionViolated(format!(
                "{} vertices, need at least floor(31n/6) + 15 = {need} for n = {n}",
                c.order()
            )));
        }
        Ok(Self {
            c,
            n,
            ctx: context_of(c, n),
            matching_mode: MatchingMode::Greedy,
            trace: ExtractionTrace::default(),
        })
    }

    /// Uses maximum instead of greedy maximal matchings where maximality suffices.
    pub fn with_matching_mode(mut self, mode: MatchingMode) -> Self {
        self.matching_mode = mode;
        self
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn trace(&self) -> &ExtractionTrace {
        &self.trace
    }

    pub fn into_trace(self) -> ExtractionTrace {
        self.trace
    }

    pub fn fast(&mut self) -> Result<FanCertificate, ExtractError> {
        for col in Color::BOTH {
            if let Some(f) = find_mono_fan(self.c, col, self.n) {
                self.trace.push("fast", &["fan"], &[("center", f.center as i64)]);
                return self.accept(f, "fast.direct");
            }
        }
        self.trace.push("fast", &[], &[]);
        self.faithful()
    }

    pub fn faithful(&mut self) -> Result<FanCertificate, ExtractError> {
        let w = self.ctx.d_witness.0;
        let d = self.ctx.d;
        self.trace.push(
            "context",
            &[],
            &[("n", self.n as i64), ("order", self.c.order() as i64), ("d", d as i64), ("witness", w as i64)],
        );
        if int(d) >= lin(self.n, 11, 4, 5) {
            self.case_high_d()
        } else {
            self.case_low_d()
        }
    }

    // ---- helpers shared by the cases ----

    fn unreachable(&self, label: &str) -> ExtractError {
        ExtractError::Unreachable {
            label: label.to_string(),
            trace: Box::new(self.trace.clone()),
        }
    }

    fn ensure(&self, cond: bool, label: &str) -> Result<(), ExtractError> {
        if cond {
            Ok(())
        } else {
            Err(self.unreachable(label))
        }
    }

    fn accept(&mut self, cert: FanCertificate, branch: &str) -> Result<FanCertificate, ExtractError> {
        let cert = cert.truncated(self.n);
        verify_fan(self.c, &cert).map_err(|e| ExtractError::Internal(format!("{branch}: {e}")))?;
        if cert.blades.len() < self.n {
            return Err(ExtractError::Internal(format!("{branch}: short certificate")));
        }
        self.trace.branch = Some(branch.to_string());
        self.trace.outcome = Some(cert.clone());
        Ok(cert)
    }

    /// Accepts the builder's fan if it has `n` blades, otherwise reports `branch` as unreachable.
    fn finish(&mut self, b: FanBuilder<'_>, branch: &str) -> Result<FanCertificate, ExtractError> {
        self.trace.push(branch, &["fan"], &[("blades", b.len() as i64), ("center", b.center() as i64)]);
        if b.len() < self.n {
            return Err(self.unreachable(&format!("{branch}.count")));
        }
        let cert = b.finish();
        self.accept(cert, branch)
    }

    fn fan_from_matching(&mut self, center: usize, m: &crate::matching::Matching, branch: &str) -> Result<FanCertificate, ExtractError> {
        let mut b = FanBuilder::new(self.c, m.color, center);
        b.add_matching(m);
        self.finish(b, branch)
    }

    fn lemma22(&mut self, color: Color, scope: &VertexSet, cc: usize) -> Result<StructureWitness, ExtractError> {
        lemma22_search(self.c, color, scope, self.n, cc).map_err(|e| match e {
            StructureError::LemmaFailure { .. } => self.unreachable("lemma22.failure"),
            other => ExtractError::Internal(other.to_string()),
        })
    }

    /// The cover of `a`, or the fan some `build_sc` call found on the way.
    pub fn cover(&mut self, a: &CliqueWitness) -> Result<Result<CoverRecord, FanCertificate>, ExtractError> {
        let out = compute_cover(self.c, a, self.n, self.matching_mode).map_err(|e| match e {
            CoverError::PreconditionViolated(m) => ExtractError::Internal(format!("cover precondition: {m}")),
            CoverError::Internal(m) => ExtractError::Internal(m),
        })?;
        Ok(match out {
            CoverOutcome::Cover(rec) => {
                self.trace.push(
                    "cover",
                    &["cover"],
                    &[("size", a.len() as i64), ("t", rec.t() as i64)],
                );
                self.trace.covers.push(rec.clone());
                Ok(rec)
            }
            CoverOutcome::Fan(f) => {
                self.trace.push("cover", &["fan"], &[("size", a.len() as i64), ("center", f.center as i64)]);
                Err(f)
            }
        })
    }

    fn clique_fan(&mut self, k: &CliqueWitness) -> Result<FanCertificate, ExtractError> {
        let center = k.vertices.first().expect("nonempty clique");
        let mut b = FanBuilder::new(self.c, k.color, center);
        b.pair_within(&k.vertices);
        self.finish(b, "clique.direct")
    }

    // ---- d >= 11n/4 + 5 ----

    pub fn case_high_d(&mut self) -> Result<FanCertificate, ExtractError> {
        let n = self.n;
        let d = self.ctx.d;
        let (w, col) = self.ctx.d_witness;
        if int(d) < lin(n, 11, 4, 5) {
            return Err(ExtractError::PreconditionViolated(format!("d = {d} below 11n/4 + 5")));
        }
        let nb = self.c.neighborhood(w, col).clone();
        if d > 3 * n {
            // R(nK_2, F_n) = 3n inside the d-witness neighborhood
            self.trace.push("high_d.dense", &[], &[("scope", nb.len() as i64)]);
            let m = maximum_matching_capped(self.c, col, &nb, n);
            if m.len() >= n {
                return self.fan_from_matching(w, &m, "high_d.dense_matching");
            }
            if let Some(f) = find_mono_fan_in(self.c, col.swap(), n, &nb) {
                return self.accept(f, "high_d.dense_complement_fan");
            }
            return Err(self.unreachable("high_d.dense"));
        }
        let cc = 3 * n + 4 - d;
        let witness = self.lemma22(col, &nb, cc)?;
        self.trace.push("high_d.lemma22", &[witness.label()], &[("c", cc as i64)]);
        match witness {
            StructureWitness::MatchingNK2(m) => self.fan_from_matching(w, &m, "high_d.lemma22_matching"),
            StructureWitness::ComplementFan(f) => self.accept(f, "high_d.lemma22_complement_fan"),
            StructureWitness::Clique(k) | StructureWitness::ComplementClique(k) => {
                self.ensure(k.len() + 4 * n + 8 >= 2 * d, "high_d.clique_size")?;
                if k.len() > 2 * n {
                    return self.clique_fan(&k);
                }
                let rec = match self.cover(&k)? {
                    Ok(r) => r,
                    Err(f) => return self.accept(f, "cover.fan"),
                };
                self.ensure(rec.t() >= 4, "high_d.coverability")?;
                self.case_t4(&k, &rec)
            }
        }
    }

    // ---- some significant clique is t-coverable, t >= 4 ----

    /// Fan at `v_t`, in the color opposite to `a`, with blades paired inside each `S(v_i, A)`, `i < t`.
    pub fn case_t4(&mut self, a: &CliqueWitness, cover: &CoverRecord) -> Result<FanCertificate, ExtractError> {
        if cover.t() < 4 || a.len() <= self.n || cover.clique != *a {
            return Err(ExtractError::PreconditionViolated(format!(
                "need a t-cover with t >= 4 of a significant clique, got t = {}",
                cover.t()
            )));
        }
        let t = cover.t();
        let vt = cover.sequence[t - 1];
        let mut b = FanBuilder::new(self.c, a.color.swap(), vt);
        for i in 0..t - 1 {
            b.pair_within(&cover.step(i).s);
        }
        self.finish(b, "t4.fan")
    }

    // ---- d < 11n/4 + 5 ----

    fn case_low_d(&mut self) -> Result<FanCertificate, ExtractError> {
        let n = self.n;
        let d = self.ctx.d;
        let (w, col) = self.ctx.d_witness;
        self.ensure(d <= 3 * n + 3, "low_d.degree_range")?;
        let cc = 3 * n + 4 - d;
        self.ensure(8 * cc < 5 * n, "low_d.lemma22_range")?;
        let nb = self.c.neighborhood(w, col).clone();
        let witness = self.lemma22(col, &nb, cc)?;
        self.trace.push("low_d.lemma22", &[witness.label()], &[("c", cc as i64)]);
        let k = match witness {
            StructureWitness::MatchingNK2(m) => return self.fan_from_matching(w, &m, "low_d.lemma22_matching"),
            StructureWitness::ComplementFan(f) => return self.accept(f, "low_d.lemma22_complement_fan"),
            StructureWitness::Clique(k) | StructureWitness::ComplementClique(k) => k,
        };
        self.ensure(k.len() > n, "low_d.clique_small")?;
        if k.len() > 2 * n {
            return self.clique_fan(&k);
        }
        let rec = match self.cover(&k)? {
            Ok(r) => r,
            Err(f) => return self.accept(f, "cover.fan"),
        };
        match rec.t() {
            t if t >= 4 => self.case_t4(&k, &rec),
            3 if int(d) >= lin(n, 8, 3, 6) => self.case_mid(&k, &rec),
            3 => self.case_big3(&k, &rec),
            2 if int(d) < lin(n, 8, 3, 6) => self.case_two_cover(&k, &rec),
            _ => Err(self.unreachable("low_d.coverability")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::random_coloring;

    #[test]
    fn complete_graph_fast() {
        let c = Coloring::monochromatic(46, Color::Black);
        let (cert, trace) = extract_fan(&c, 6, Mode::Fast).unwrap();
        assert_eq!(cert.center, 0);
        assert_eq!(cert.blades.len(), 6);
        assert_eq!(trace.branch.as_deref(), Some("fast.direct"));
    }

    #[test]
    fn too_small() {
        let c = Coloring::monochromatic(45, Color::Black);
        assert!(matches!(extract_fan(&c, 6, Mode::Faithful), Err(ExtractError::PreconditionViolated(_))));
        assert!(matches!(extract_fan(&c, 0, Mode::Faithful), Err(ExtractError::PreconditionViolated(_))));
    }

    #[test]
    fn monochromatic_faithful() {
        for col in Color::BOTH {
            let c = Coloring::monochromatic(46, col);
            let (cert, trace) = extract_fan(&c, 6, Mode::Faithful).unwrap();
            assert_eq!(cert.color, col);
            assert_eq!(cert.center, 0);
            assert_eq!(trace.branch.as_deref(), Some("high_d.dense_matching"));
        }
    }

    #[test]
    fn random_faithful_and_fast_agree_on_existence() {
        for seed in 0..20 {
            let c = random_coloring(46, seed, 0.5);
            let (a, _) = extract_fan(&c, 6, Mode::Faithful).unwrap();
            let (b, _) = extract_fan(&c, 6, Mode::Fast).unwrap();
            assert!(verify_fan(&c, &a).is_ok() && verify_fan(&c, &b).is_ok());
        }
    }

    #[test]
    fn thresholds_are_exact() {
        // 11n/4 + 5 at n = 4 is exactly 16
        assert_eq!(lin(4, 11, 4, 5), int(16));
        assert!(int(43) < lin(14, 8, 3, 6));
        assert!(int(44) >= lin(14, 8, 3, 6));
    }

    #[test]
    fn t4_rejects_short_cover() {
        let c = Coloring::monochromatic(46, Color::Black);
        let mut run = Extraction::new(&c, 6).unwrap();
        let a = CliqueWitness {
            color: Color::Black,
            vertices: VertexSet::from_range(0..8),
        };
        let rec = CoverRecord {
            clique: a.clone(),
            n: 6,
            records: Vec::new(),
            sequence: vec![0, 1, 2],
        };
        assert!(matches!(run.case_t4(&a, &rec), Err(ExtractError::PreconditionViolated(_))));
    }
}
