//! `d < 8n/3 + 6` and every big clique is 2-coverable.
//!
//! The two `S` sets of the 2-cover of a big clique contain disjoint cliques
//! `A` and `B` of the opposite color with `|A| + |B| = floor(7n/3 + 18)`.
//! Covering both, some `S(w_i, B)` meets `S(v_1, A)`, and a fan centered in
//! the intersection finishes.

use super::{int, lin, ExtractError, Extraction};
use crate::covering::CoverRecord;
use crate::structure::{CliqueWitness, FanBuilder, FanCertificate};

impl Extraction<'_> {
    pub fn case_two_cover(&mut self, k: &CliqueWitness, cover: &CoverRecord) -> Result<FanCertificate, ExtractError> {
        let n = self.n;
        if int(self.ctx.d) >= lin(n, 8, 3, 6) || cover.t() != 2 || cover.clique != *k {
            return Err(ExtractError::PreconditionViolated(
                "needs d < 8n/3 + 6 and a 2-cover of the clique".into(),
            ));
        }
        let (ra, rb) = (cover.step(0), cover.step(1));
        self.ensure(int(ra.s.len() + rb.s.len()) >= lin(n, 7, 3, 18), "two.s_sum")?;
        let total = (7 * n + 54) / 3;
        let (p, q) = if ra.s.len() >= rb.s.len() { (&ra.s, &rb.s) } else { (&rb.s, &ra.s) };
        let a_size = total.div_ceil(2).max(total - q.len());
        let acol = k.color.swap();
        let a = CliqueWitness {
            color: acol,
            vertices: p.take_lowest(a_size),
        };
        let b = CliqueWitness {
            color: acol,
            vertices: q.take_lowest(total - a_size),
        };
        self.trace.push("two.cliques", &["clique", "clique"], &[("a", a.len() as i64), ("b", b.len() as i64)]);
        if a.len() > 2 * n {
            return self.clique_fan(&a);
        }
        let ca = match self.cover(&a)? {
            Ok(r) => r,
            Err(f) => return self.accept(f, "cover.fan"),
        };
        match ca.t() {
            t if t >= 4 => return self.case_t4(&a, &ca),
            3 => return self.case_big3(&a, &ca),
            2 => {}
            _ => return Err(self.unreachable("two.a_coverability")),
        }
        self.ensure(b.len() > n, "two.b_small")?;
        let cb = match self.cover(&b)? {
            Ok(r) => r,
            Err(f) => return self.accept(f, "cover.fan"),
        };
        if cb.t() >= 4 {
            return self.case_t4(&b, &cb);
        }
        if cb.t() == 3 && int(b.len()) >= lin(n, 7, 6, 5) {
            return self.case_big3(&b, &cb);
        }
        self.ensure(cb.t() >= 2, "two.b_coverability")?;

        let rv1 = ca.step(0);
        let (sv1, a_rest) = (&rv1.s, a.vertices.difference(&rv1.c));
        let Some(i) = (0..cb.t()).find(|&i| !cb.step(i).s.is_disjoint(sv1)) else {
            return Err(self.unreachable("two.claim_intersect"));
        };
        let rw = cb.step(i);
        let (sw, b_rest) = (&rw.s, b.vertices.difference(&rw.c));
        let inter = sv1.intersection(sw);
        let center = inter.first().expect("nonempty intersection");
        self.trace.push(
            "two.intersection",
            &[],
            &[("i", i as i64 + 1), ("size", inter.len() as i64), ("center", center as i64)],
        );
        self.ensure(
            int(sw.len()) >= lin(n, 1, 2, 7)
                && int(sv1.len()) >= int(a_rest.len()) + lin(n, 1, 2, 7)
                && int(sv1.len() + a_rest.len()) >= lin(n, 5, 3, 15),
            "two.claim_bounds",
        )?;
        let wc = acol.swap();
        let mut fan = FanBuilder::new(self.c, wc, center);
        if int(b_rest.len()) >= lin(n, 1, 3, 0) {
            fan.cross(sw, &b_rest, n.div_ceil(3));
            fan.cross(sv1, &a_rest, usize::MAX);
            fan.pair_within(sv1);
            return self.finish(fan, "two.fan_wide");
        }
        if int(inter.len()) >= lin(n, 4, 3, 1) {
            let ic = CliqueWitness {
                color: wc,
                vertices: inter,
            };
            return self.sub_clique(&ic, "two.intersection_clique");
        }
        self.ensure(
            sv1.union(sw).len() + b_rest.len() + a_rest.len() >= 2 * n + 28,
            "two.narrow_count",
        )?;
        fan.cross(sw, &b_rest, usize::MAX);
        fan.cross(sv1, &a_rest, usize::MAX);
        fan.pair_within(sv1);
        fan.pair_within(sw);
        self.finish(fan, "two.fan_narrow")
    }

    /// A clique that must be 3- or 4-coverable: covers it and continues in the matching case.
    fn sub_clique(&mut self, k: &CliqueWitness, label: &str) -> Result<FanCertificate, ExtractError> {
        if k.len() > 2 * self.n {
            return self.clique_fan(k);
        }
        let rec = match self.cover(k)? {
            Ok(r) => r,
            Err(f) => return self.accept(f, "cover.fan"),
        };
        match rec.t() {
            t if t >= 4 => self.case_t4(k, &rec),
            3 if int(k.len()) >= lin(self.n, 7, 6, 5) => self.case_big3(k, &rec),
            _ => Err(self.unreachable(&format!("{label}.coverability"))),
        }
    }
}
