//! Faithful extraction beyond the acceptance corpus, where `n >= 15` makes
//! dispatch paths other than the `d > 3n` one reachable.

mod common;

use std::collections::BTreeMap;

use rayon::prelude::*;

use common::{planted_barrier, private_neighborhoods, random_circulant, Barrier};
use fanram::extractor::{case_reachability, Extraction};
use fanram::{context_of, extract_fan, verify_fan, CliqueWitness, Color, Coloring, ExtractionTrace, Mode, VertexSet};

fn run(c: &Coloring, n: usize) -> ExtractionTrace {
    match extract_fan(c, n, Mode::Faithful) {
        Ok((cert, trace)) => {
            assert_eq!(verify_fan(c, &cert), Ok(()));
            assert_eq!(cert.blades.len(), n);
            trace
        }
        Err(e) => panic!("n = {n}: {e}"),
    }
}

fn histogram<'a>(traces: impl Iterator<Item = &'a ExtractionTrace>) -> BTreeMap<String, usize> {
    let mut h = BTreeMap::new();
    for t in traces {
        *h.entry(t.branch.clone().unwrap_or_default()).or_insert(0) += 1;
    }
    h
}

#[test]
fn circulants_near_the_degree_floor() {
    let jobs: Vec<(usize, usize, u64)> = (15..=28)
        .flat_map(|n| {
            let r = case_reachability(n);
            let order = r.order;
            (r.d_min..r.d_min + 3)
                .flat_map(move |d| [d, order - 1 - d])
                .filter(move |&black| black.is_multiple_of(2) || order.is_multiple_of(2))
                .flat_map(move |black| (0..3).map(move |seed| (n, black, seed)))
        })
        .collect();
    let traces: Vec<ExtractionTrace> = jobs
        .par_iter()
        .map(|&(n, black, seed)| run(&random_circulant(theorem(n), black, seed), n))
        .collect();
    let h = histogram(traces.iter());
    println!("{h:?}");
    assert!(h.contains_key("low_d.lemma22_matching"));
    assert!(h.contains_key("high_d.lemma22_matching"));
}

fn theorem(n: usize) -> usize {
    fanram::theorem_order(n)
}

#[test]
fn barriers_force_the_clique_outcome() {
    let jobs: Vec<(usize, Barrier)> = (19..=32)
        .flat_map(|n| {
            let r = case_reachability(n);
            (r.d_min..r.order).flat_map(move |d| Barrier::all(n, d).into_iter().map(move |b| (n, b)))
        })
        .collect();
    let results: Vec<(ExtractionTrace, bool)> = jobs
        .par_iter()
        .flat_map_iter(|&(n, b)| {
            (0..2).filter_map(move |seed| {
                let c = planted_barrier(theorem(n), b, seed)?;
                let ctx = context_of(&c, n);
                assert_eq!((ctx.d, ctx.d_witness), (b.d, (0, Color::Black)));
                let high = 4 * b.d >= 11 * n + 20;
                Some((run(&c, n), high))
            })
        })
        .collect();
    assert!(results.len() > 100, "only {} barrier instances built", results.len());
    let mut ranges = BTreeMap::new();
    for (t, high) in &results {
        let step = t
            .steps
            .iter()
            .find(|s| s.case.ends_with(".lemma22"))
            .expect("lemma step recorded");
        assert_eq!(step.witnesses, ["clique"], "{:?}", t.steps);
        *ranges.entry((*high, t.branch.clone().unwrap())).or_insert(0) += 1;
    }
    println!("{ranges:?}");
    assert!(ranges.keys().any(|(high, _)| *high));
    assert!(ranges.keys().any(|(high, _)| !*high));
}

#[test]
fn t4_fan_from_singleton_covers() {
    // every clique vertex only covers itself, so t = |A| = 6
    let n = 4;
    let base = private_neighborhoods(6, 4, 1, 0.0, 0);
    let order = theorem(n);
    let c = Coloring::from_fn(order, |u, v| if v < base.order() { base.color(u, v) } else { Color::White });
    let a = CliqueWitness {
        color: Color::Black,
        vertices: VertexSet::from_range(0..6),
    };
    let mut run = Extraction::new(&c, n).unwrap();
    let cover = run.cover(&a).unwrap().expect("records, not a fan");
    assert_eq!(cover.t(), 6);
    let cert = run.case_t4(&a, &cover).unwrap();
    assert_eq!(cert.color, Color::White);
    assert_eq!(cert.center, cover.sequence[5]);
    assert_eq!(verify_fan(&c, &cert), Ok(()));
    assert_eq!(run.trace().branch.as_deref(), Some("t4.fan"));
}
