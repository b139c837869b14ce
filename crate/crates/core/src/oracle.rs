//! Ground truth at desk scale: exhaustive enumeration of small colorings,
//! the bipartite lower-bound construction, and seeded generators.

use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{pair_count, Color, Coloring};
use crate::rng::SplitMix64;
use crate::structure::find_mono_fan;

/// Largest order accepted by the exhaustive enumerators.
pub const MAX_EXHAUSTIVE_ORDER: usize = 7;

/// Largest fan size accepted by [`exhaustive_ramsey_check`].
pub const MAX_EXHAUSTIVE_FAN: usize = 2;

const MAX_EXAMPLES: usize = 10;

/// Perturbation used by [`adversarial_coloring`].
pub const DEFAULT_NOISE: f64 = 0.03;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("order {order} exceeds the exhaustive limit {max}")]
    TooLarge { order: usize, max: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown family {0:?}")]
    UnknownKind(String),
}

/// Each pair `(u, v)`, `u < v`, visited in row-major order, is black iff the
/// next SplitMix64 float drawn from `seed` is below `p_black`.
pub fn random_coloring(order: usize, seed: u64, p_black: f64) -> Coloring {
    let mut rng = SplitMix64::new(seed);
    let bits: Vec<Color> = (0..pair_count(order))
        .map(|_| if rng.next_f64() < p_black { Color::Black } else { Color::White })
        .collect();
    Coloring::from_triangle(order.max(1), &bits).expect("length matches")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdversarialKind {
    /// Two near-equal parts, black across and white inside.
    BipartiteBlowup,
    /// Five near-equal parts, black between cyclically adjacent parts.
    PentagonBlowup,
    /// A black clique on the first `ceil(7N/12)` vertices, every other pair black with probability 1/2.
    CliquePlusNoise,
}

impl AdversarialKind {
    pub const ALL: [AdversarialKind; 3] = [
        AdversarialKind::BipartiteBlowup,
        AdversarialKind::PentagonBlowup,
        AdversarialKind::CliquePlusNoise,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AdversarialKind::BipartiteBlowup => "bipartite_blowup",
            AdversarialKind::PentagonBlowup => "pentagon_blowup",
            AdversarialKind::CliquePlusNoise => "clique_plus_noise",
        }
    }
}

impl FromStr for AdversarialKind {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, OracleError> {
        AdversarialKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| OracleError::UnknownKind(s.to_string()))
    }
}

/// [`adversarial_coloring_with_noise`] at [`DEFAULT_NOISE`].
pub fn adversarial_coloring(kind: AdversarialKind, order: usize, seed: u64) -> Result<Coloring, OracleError> {
    adversarial_coloring_with_noise(kind, order, seed, DEFAULT_NOISE)
}

/// A structured coloring of the named family. For the two blow-ups every pair
/// is then flipped with probability `noise`; the planted clique is never
/// perturbed.
pub fn adversarial_coloring_with_noise(
    kind: AdversarialKind,
    order: usize,
    seed: u64,
    noise: f64,
) -> Result<Coloring, OracleError> {
    if order < 5 {
        return Err(OracleError::InvalidParameter(format!("order must be at least 5, got {order}")));
    }
    if !(0.0..=1.0).contains(&noise) {
        return Err(OracleError::InvalidParameter(format!("noise {noise} outside [0, 1]")));
    }
    let mut rng = SplitMix64::new(seed);
    let half = order.div_ceil(2);
    let planted = (7 * order).div_ceil(12);
    let c = Coloring::from_fn(order, |u, v| {
        let r = rng.next_f64();
        let base = match kind {
            AdversarialKind::BipartiteBlowup => (u < half) != (v < half),
            AdversarialKind::PentagonBlowup => {
                let (pu, pv) = (5 * u / order, 5 * v / order);
                matches!((pv + 5 - pu) % 5, 1 | 4)
            }
            AdversarialKind::CliquePlusNoise => {
                return if v < planted || r < 0.5 { Color::Black } else { Color::White };
            }
        };
        if base != (r < noise) {
            Color::Black
        } else {
            Color::White
        }
    });
    Ok(c)
}

/// `K_{2n,2n}`: black across `{0..2n-1}` and `{2n..4n-1}`, white inside.
pub fn bipartite_lower_bound(n: usize) -> Coloring {
    let half = 2 * n;
    Coloring::from_fn(4 * n, |u, v| {
        if (u < half) != (v < half) {
            Color::Black
        } else {
            Color::White
        }
    })
}

fn check_order(order: usize) -> Result<(), OracleError> {
    if order == 0 {
        return Err(OracleError::InvalidParameter("order must be at least 1".into()));
    }
    if order > MAX_EXHAUSTIVE_ORDER {
        return Err(OracleError::TooLarge {
            order,
            max: MAX_EXHAUSTIVE_ORDER,
        });
    }
    Ok(())
}

/// The coloring with index `index`: pair `k` of the row-major triangle is
/// black iff bit `P - 1 - k` of `index` is set, `P = N(N-1)/2`. Increasing
/// indices therefore list triangles in lexicographic order with `W < B`.
pub fn coloring_at(order: usize, index: u64) -> Coloring {
    let p = pair_count(order);
    let bits: Vec<Color> = (0..p)
        .map(|k| if index >> (p - 1 - k) & 1 == 1 { Color::Black } else { Color::White })
        .collect();
    Coloring::from_triangle(order, &bits).expect("length matches")
}

/// Visits every coloring of `K_order` in index order; returns the count.
pub fn enumerate_colorings(order: usize, mut visitor: impl FnMut(u64, &Coloring)) -> Result<u64, OracleError> {
    check_order(order)?;
    let total = 1u64 << pair_count(order);
    for i in 0..total {
        visitor(i, &coloring_at(order, i));
    }
    Ok(total)
}

/// Like [`enumerate_colorings`], split across the rayon pool; visit order is unspecified.
pub fn enumerate_colorings_par(order: usize, visitor: impl Fn(u64, &Coloring) + Sync) -> Result<u64, OracleError> {
    check_order(order)?;
    let total = 1u64 << pair_count(order);
    (0..total).into_par_iter().for_each(|i| visitor(i, &coloring_at(order, i)));
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub order: usize,
    pub n: usize,
    pub total: u64,
    pub fan_free_count: u64,
    /// The lowest-index fan-free colorings, at most ten.
    pub fan_free_examples: Vec<Coloring>,
    pub all_contain: bool,
}

/// Whether every coloring of `K_order` has a monochromatic `F_n`.
pub fn exhaustive_ramsey_check(order: usize, n: usize) -> Result<EnumerationReport, OracleError> {
    check_order(order)?;
    if n == 0 || n > MAX_EXHAUSTIVE_FAN {
        return Err(OracleError::InvalidParameter(format!(
            "n must be in 1..={MAX_EXHAUSTIVE_FAN}, got {n}"
        )));
    }
    let total = 1u64 << pair_count(order);
    let free: Vec<u64> = (0..total)
        .into_par_iter()
        .filter(|&i| {
            let c = coloring_at(order, i);
            Color::BOTH.iter().all(|&col| find_mono_fan(&c, col, n).is_none())
        })
        .collect();
    Ok(EnumerationReport {
        order,
        n,
        total,
        fan_free_count: free.len() as u64,
        fan_free_examples: free.iter().take(MAX_EXAMPLES).map(|&i| coloring_at(order, i)).collect(),
        all_contain: free.is_empty(),
    })
}
