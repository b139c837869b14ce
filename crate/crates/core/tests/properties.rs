mod common;

use proptest::prelude::*;

use fanram::matching::{bipartite_maximum_matching, hall_analysis, maximum_matching_general};
use fanram::oracle::random_coloring;
use fanram::{extract_fan, theorem_order, verify_fan, Color, FanCertificate, Mode, VertexSet};

fn swapped(cert: &FanCertificate) -> FanCertificate {
    FanCertificate {
        color: cert.color.swap(),
        ..cert.clone()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn perspective_symmetry(n in 3usize..=5, seed in any::<u64>(), p in 0.05f64..0.95) {
        let c = random_coloring(theorem_order(n), seed, p);
        let s = c.swap_colors();
        for mode in [Mode::Faithful, Mode::Fast] {
            let (a, _) = extract_fan(&c, n, mode).unwrap();
            let (b, _) = extract_fan(&s, n, mode).unwrap();
            prop_assert_eq!(verify_fan(&s, &swapped(&a)), Ok(()));
            prop_assert_eq!(verify_fan(&c, &swapped(&b)), Ok(()));
        }
    }

    #[test]
    fn fast_and_faithful_both_succeed(n in 3usize..=6, seed in any::<u64>(), p in 0.0f64..1.0) {
        let c = random_coloring(theorem_order(n), seed, p);
        for mode in [Mode::Faithful, Mode::Fast] {
            let (cert, trace) = extract_fan(&c, n, mode).unwrap();
            prop_assert_eq!(verify_fan(&c, &cert), Ok(()));
            prop_assert_eq!(cert.blades.len(), n);
            prop_assert_eq!(trace.outcome.as_ref(), Some(&cert));
        }
    }

    #[test]
    fn extraction_is_a_pure_function(n in 3usize..=5, seed in any::<u64>()) {
        let c = random_coloring(theorem_order(n), seed, 0.5);
        let once = extract_fan(&c, n, Mode::Faithful).unwrap();
        let twice = extract_fan(&c.clone(), n, Mode::Faithful).unwrap();
        prop_assert_eq!(serde_json::to_string(&once).unwrap(), serde_json::to_string(&twice).unwrap());
    }

    #[test]
    fn hall_defect_matches_matching(xs in 1usize..14, ys in 1usize..14, seed in any::<u64>(), p in 0.0f64..1.0) {
        let c = random_coloring(xs + ys, seed, p);
        let x = VertexSet::from_range(0..xs);
        let y = VertexSet::from_range(xs..xs + ys);
        for col in Color::BOTH {
            let h = hall_analysis(&c, col, &x, &y).unwrap();
            let m = bipartite_maximum_matching(&c, col, &x, &y).unwrap();
            prop_assert_eq!(h.matching.len(), m.len());
            prop_assert_eq!(h.certificate.deficiency, xs - m.len());
            prop_assert!(h.certificate.is_valid(&c, col, &x, &y));
        }
    }

    #[test]
    fn general_matching_is_maximum_on_bipartite_scopes(xs in 1usize..10, ys in 1usize..10, seed in any::<u64>()) {
        // both sides are white inside, so every black matching crosses
        let r = random_coloring(xs + ys, seed, 0.5);
        let c = fanram::Coloring::from_fn(xs + ys, |u, v| {
            if (u < xs) == (v < xs) { Color::White } else { r.color(u, v) }
        });
        let x = VertexSet::from_range(0..xs);
        let y = VertexSet::from_range(xs..xs + ys);
        let general = maximum_matching_general(&c, Color::Black, &x.union(&y));
        let bip = bipartite_maximum_matching(&c, Color::Black, &x, &y).unwrap();
        prop_assert_eq!(general.len(), bip.len());
    }

    #[test]
    fn brute_force_agrees_under_color_swap(order in 3usize..=8, n in 1usize..=3, seed in any::<u64>(), p in 0.0f64..1.0) {
        let c = random_coloring(order, seed, p);
        let s = c.swap_colors();
        for col in Color::BOTH {
            prop_assert_eq!(common::brute_fan_exists(&c, col, n), common::brute_fan_exists(&s, col.swap(), n));
            prop_assert_eq!(fanram::find_mono_fan(&c, col, n).is_some(), common::brute_fan_exists(&c, col, n));
        }
    }
}
