//! The two balanced-degree cases with a 3-coverable clique `A`.
//!
//! Both run the same pipeline. A fan at `v_3` in the color opposite to `A`
//! either succeeds or leaves a Hall violator `T`; a fan at some `z` in `T`
//! either succeeds or leaves a large opposite-color clique `C` inside
//! `S(v_1, A) ∪ S(v_2, A)`; a fan centered in `C` then finishes. Only the
//! constants differ between the case `8n/3 + 6 <= d` and the case of a big
//! clique with `d < 8n/3 + 6`.

use num_rational::Ratio;

use super::{int, lin, ExtractError, Extraction};
use crate::bitset::VertexSet;
use crate::covering::CoverRecord;
use crate::matching::{greedy_bipartite_matching, hall_analysis, inner_matching, Matching};
use crate::structure::{lemma23_construct, CliqueWitness, FanBuilder, FanCertificate, StructureWitness};

/// A clique `T` of `A`'s color outside `S_1 ∪ S_2` whose opposite-color
/// neighborhood `N_T` in `S_1 ∪ S_2` is small.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TWitness {
    pub t: CliqueWitness,
    pub n_t: VertexSet,
    pub threshold: Ratio<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TOutcome {
    Fan(FanCertificate),
    Witness(TWitness),
}

/// An opposite-color clique `C ⊆ S_1 ∪ S_2`, obtained by removing `N_T` and a
/// maximal matching of `A`'s color between the rest of `S_1` and of `S_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CWitness {
    pub cset: VertexSet,
    pub removed_u: VertexSet,
    pub removed_matching: Matching,
    pub a1: usize,
    pub a2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum COutcome {
    Fan(FanCertificate),
    Witness(CWitness),
}

/// Constants that distinguish the two cases.
struct Profile {
    tag: &'static str,
    /// lower bound on the degrees of v_1, v_2, v_3 in A's color
    degree: Ratio<i64>,
    /// upper bound on |C(v_1)|
    c1_max: Ratio<i64>,
    /// lower bound on |A \ C(v_1)| / 2
    c2_floor: Ratio<i64>,
    s12: Ratio<i64>,
    t_threshold: Ratio<i64>,
    t_scope: Ratio<i64>,
    c_size: Ratio<i64>,
    /// |C ∩ S_2| above this centers the final fan at a_1
    split: Ratio<i64>,
    /// otherwise |C ∩ S_1| must exceed this
    c1_side: Ratio<i64>,
}

impl Extraction<'_> {
    /// The fan at `v_3` built from matchings into `S_1 ∪ S_2`, or the violator left by its failure.
    pub fn find_t_witness(
        &mut self,
        a: &CliqueWitness,
        cover: &CoverRecord,
        threshold: Ratio<i64>,
    ) -> Result<TOutcome, ExtractError> {
        let wc = a.color.swap();
        let (s1, s2) = (&cover.step(0).s, &cover.step(1).s);
        let v3 = cover.sequence[2];
        let s12 = s1.union(s2);
        let tp = self.c.neighborhood(v3, wc).difference(&s12);
        let m = inner_matching(self.c, wc, &tp, self.matching_mode);
        let r = tp.difference(&m.vertices());
        let hall = hall_analysis(self.c, wc, &r, &s12).expect("R avoids S_1 ∪ S_2");

        let mut b = FanBuilder::new(self.c, wc, v3);
        b.add_matching(&m);
        b.add_matching(&hall.matching);
        b.pair_within(s1);
        b.pair_within(s2);
        self.trace.push(
            "t_witness",
            &[],
            &[
                ("t_prime", tp.len() as i64),
                ("m", m.len() as i64),
                ("m_prime", hall.matching.len() as i64),
                ("blades", b.len() as i64),
            ],
        );
        if b.len() >= self.n {
            let f = b.finish().truncated(self.n);
            return Ok(TOutcome::Fan(f));
        }
        let cert = hall.certificate;
        self.ensure(int(cert.s.len()) > int(cert.ns.len()) + threshold, "t_witness.deficiency")?;
        Ok(TOutcome::Witness(TWitness {
            t: CliqueWitness {
                color: a.color,
                vertices: cert.s,
            },
            n_t: cert.ns,
            threshold,
        }))
    }

    /// The clique `C` with `U = N_T`, or the fan at `z = min T` that a too-large matching allows.
    pub fn build_c_witness(
        &mut self,
        a: &CliqueWitness,
        s1: &VertexSet,
        s2: &VertexSet,
        tw: &TWitness,
    ) -> Result<COutcome, ExtractError> {
        let n = self.n;
        let col = a.color;
        let u = &tw.n_t;
        let (x1, x2) = (s1.difference(u), s2.difference(u));
        let mc = greedy_bipartite_matching(self.c, col, &x1, &x2);
        let cset = s1.union(s2).difference(u).difference(&mc.vertices());
        let (t, nt) = (tw.t.len() as i64, u.len() as i64);
        let bound = (s1.len() + s2.len()) as i64 - nt - 2 * n as i64 + 2 * t - 6;
        self.trace.push(
            "c_witness",
            &[],
            &[("c", cset.len() as i64), ("bound", bound), ("t", t), ("n_t", nt), ("mc", mc.len() as i64)],
        );
        if cset.len() as i64 >= bound {
            let a1 = cset.intersection(s1).first();
            let a2 = cset.intersection(s2).first();
            let (Some(a1), Some(a2)) = (a1, a2) else {
                return Err(self.unreachable("c_witness.sides"));
            };
            return Ok(COutcome::Witness(CWitness {
                cset,
                removed_u: u.clone(),
                removed_matching: mc,
                a1,
                a2,
            }));
        }
        let z = tw.t.vertices.first().expect("T is nonempty");
        let mut rest_t = tw.t.vertices.clone();
        rest_t.remove(z);
        let pool = s1.union(s2).difference(u);
        let mut b = FanBuilder::new(self.c, col, z);
        let label = if tw.t.len() <= n + 3 {
            b.add_matching(&mc);
            b.cross(&rest_t, &pool, usize::MAX);
            "c_fan_small_t"
        } else {
            b.cross(&rest_t, &pool, usize::MAX);
            "c_fan_large_t"
        };
        self.trace.push(label, &["fan"], &[("blades", b.len() as i64)]);
        if b.len() < n {
            return Err(self.unreachable(&format!("c_witness.{label}")));
        }
        Ok(COutcome::Fan(b.finish().truncated(n)))
    }

    /// `8n/3 + 6 <= d < 11n/4 + 5`, `A` from the d-witness neighborhood, 3-covered.
    pub fn case_mid(&mut self, a: &CliqueWitness, cover: &CoverRecord) -> Result<FanCertificate, ExtractError> {
        let n = self.n;
        let d = int(self.ctx.d);
        if !(d >= lin(n, 8, 3, 6) && d < lin(n, 11, 4, 5)) || cover.t() != 3 || int(a.len()) < lin(n, 4, 3, 4) {
            return Err(ExtractError::PreconditionViolated(
                "needs 8n/3 + 6 <= d < 11n/4 + 5 and a 3-cover of a clique of size at least 4n/3 + 4".into(),
            ));
        }
        for &v in &cover.sequence {
            if int(self.c.degree(v, a.color)) < lin(n, 5, 2, 5) {
                return self.claim_low_degree(a, v);
            }
        }
        let profile = Profile {
            tag: "mid",
            degree: lin(n, 5, 2, 5),
            c1_max: lin(n, 2, 3, 0),
            c2_floor: lin(n, 1, 3, 0),
            s12: lin(n, 17, 9, 10),
            t_threshold: lin(n, 5, 12, 6),
            t_scope: lin(n, 29, 12, 8),
            c_size: lin(n, 13, 18, 16),
            split: lin(n, 1, 6, 0),
            c1_side: lin(n, 5, 9, 16),
        };
        self.balanced(a, cover, &profile)
    }

    /// A covering vertex of low degree in `A`'s color: its opposite neighborhood
    /// holds a structure that yields a fan directly or via the two-clique lemma.
    fn claim_low_degree(&mut self, a: &CliqueWitness, v: usize) -> Result<FanCertificate, ExtractError> {
        let n = self.n;
        let wc = a.color.swap();
        let w = self.c.neighborhood(v, wc).clone();
        self.ensure(int(w.len()) >= lin(n, 8, 3, 8), "mid.low_vertex_degree")?;
        let cc = (3 * n + 4).saturating_sub(w.len()).max(1);
        self.ensure(8 * cc < 5 * n, "mid.low_vertex_range")?;
        let scope = w.take_lowest(3 * n + 4 - cc);
        let witness = self.lemma22(wc, &scope, cc)?;
        self.trace.push("mid.low_vertex", &[witness.label()], &[("vertex", v as i64), ("c", cc as i64)]);
        match witness {
            StructureWitness::MatchingNK2(m) => self.fan_from_matching(v, &m, "mid.low_vertex_matching"),
            StructureWitness::ComplementFan(f) => self.accept(f, "mid.low_vertex_complement_fan"),
            StructureWitness::Clique(bq) => {
                // an opposite-color clique next to A
                let k = a.len().min(bq.len());
                let aa = a.vertices.take_lowest(k);
                let bb = bq.vertices.take_lowest(k);
                let f = lemma23_construct(self.c, a.color, &aa, &bb)
                    .map_err(|e| ExtractError::Internal(format!("two-clique lemma: {e}")))?;
                self.trace.push("mid.low_vertex_lemma23", &["fan"], &[("k", k as i64), ("blades", f.blades.len() as i64)]);
                self.ensure(f.blades.len() >= n, "mid.low_vertex_lemma23.count")?;
                self.accept(f, "mid.low_vertex_lemma23")
            }
            StructureWitness::ComplementClique(_) => Err(self.unreachable("mid.low_vertex_same_color_clique")),
        }
    }

    /// `d < 8n/3 + 6` and `A` is a big 3-covered clique.
    pub fn case_big3(&mut self, a: &CliqueWitness, cover: &CoverRecord) -> Result<FanCertificate, ExtractError> {
        let n = self.n;
        if int(self.ctx.d) >= lin(n, 8, 3, 6) || cover.t() != 3 || int(a.len()) < lin(n, 7, 6, 5) {
            return Err(ExtractError::PreconditionViolated(
                "needs d < 8n/3 + 6 and a 3-cover of a clique of size at least 7n/6 + 5".into(),
            ));
        }
        let profile = Profile {
            tag: "big3",
            degree: lin(n, 5, 2, 7),
            c1_max: lin(n, 5, 6, 0),
            c2_floor: lin(n, 1, 6, 0),
            s12: lin(n, 16, 9, 16),
            t_threshold: lin(n, 1, 2, 5),
            t_scope: lin(n, 5, 2, 7),
            c_size: lin(n, 7, 9, 20),
            split: lin(n, 1, 3, 0),
            c1_side: lin(n, 4, 9, 20),
        };
        self.balanced(a, cover, &profile)
    }

    fn balanced(&mut self, a: &CliqueWitness, cover: &CoverRecord, p: &Profile) -> Result<FanCertificate, ExtractError> {
        let n = self.n;
        let tag = p.tag;
        let col = a.color;
        let wc = col.swap();
        let label = |s: &str| format!("{tag}.{s}");
        let (r1, r2, r3) = (cover.step(0), cover.step(1), cover.step(2));
        let (s1, s2) = (&r1.s, &r2.s);
        let (c1, c2, c3) = (&r1.c, &r2.c, &r3.c);
        let v3 = r3.v;
        let size = int(a.len());

        for r in [r1, r2, r3] {
            self.ensure(int(r.deg_v) >= p.degree, &label("degrees"))?;
        }
        let a_minus_c1 = a.vertices.difference(c1);
        self.ensure(
            size / 3 <= int(c1.len())
                && int(c1.len()) <= p.c1_max
                && int(c2.len()) * 2 >= int(a_minus_c1.len())
                && int(a_minus_c1.len()) >= p.c2_floor * 2,
            &label("c_bounds"),
        )?;
        let d3 = c3.difference(&c1.union(c2));
        if tag == "big3" && int(d3.len()) < lin(n, 1, 6, 0) {
            let mut b = FanBuilder::new(self.c, wc, v3);
            b.pair_within(s1);
            b.pair_within(s2);
            return self.finish(b, "big3.v3_fan");
        }
        self.ensure(int(s1.len() + s2.len()) > p.s12, &label("s_sum"))?;
        self.ensure(int(self.c.degree(v3, wc)) >= p.t_scope, &label("v3_degree"))?;

        let tw = match self.find_t_witness(a, cover, p.t_threshold)? {
            TOutcome::Fan(f) => return self.accept(f, &label("t_fan")),
            TOutcome::Witness(tw) => tw,
        };
        let cw = match self.build_c_witness(a, s1, s2, &tw)? {
            COutcome::Fan(f) => {
                let which = if tw.t.len() <= n + 3 { "c_fan_small_t" } else { "c_fan_large_t" };
                return self.accept(f, &label(which));
            }
            COutcome::Witness(cw) => cw,
        };
        let cs = &cw.cset;
        self.ensure(int(cs.len()) > p.c_size, &label("c_size"))?;
        let c_s1 = cs.intersection(s1);
        let c_s2 = cs.intersection(s2);
        let a_minus_c2 = a.vertices.difference(c2);

        if int(c_s2.len()) > p.split {
            self.ensure(s1.len() > a_minus_c1.len(), &label("s1_exceeds"))?;
            let mut b = FanBuilder::new(self.c, wc, cw.a1);
            b.cross(s1, &a_minus_c1, usize::MAX);
            b.pair_within(s1);
            b.pair_within(&c_s2);
            return self.finish(b, &label("fan_a1"));
        }
        self.ensure(int(c_s1.len()) > p.c1_side, &label("c_s1_size"))?;
        if tag == "mid" {
            let mut b = FanBuilder::new(self.c, wc, cw.a2);
            b.cross(s2, &a_minus_c2, usize::MAX);
            if s2.len() >= a_minus_c2.len() {
                b.pair_within(s2);
                b.pair_within(&c_s1);
                return self.finish(b, "mid.fan_a2");
            }
            b.pair_within(&c_s1);
            return self.finish(b, "mid.fan_a2_short");
        }
        if int(c2.len()) >= lin(n, 5, 18, 0) {
            let mut b = FanBuilder::new(self.c, wc, cw.a2);
            b.cross(s2, &a_minus_c2, usize::MAX);
            b.pair_within(&c_s1);
            b.pair_within(s2);
            return self.finish(b, "big3.fan_a2");
        }
        self.ensure(int(c_s1.len()) >= lin(n, 5, 9, 18), "big3.c_s1_third")?;
        let mut b = FanBuilder::new(self.c, wc, cw.a2);
        b.cross(&c_s1, &d3, n.div_ceil(6));
        b.pair_within(&c_s1);
        b.cross(s2, &a_minus_c2, usize::MAX);
        b.pair_within(s2);
        self.finish(b, "big3.fan_a2_third")
    }
}
