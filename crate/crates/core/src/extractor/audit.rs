//! Which cases of the dispatch can occur at all for a given `n`.
//!
//! With `N = floor(31n/6) + 15` the degree parameter `d` ranges over
//! `ceil((N-1)/2) ..= N-1`, minus the bottom value when no graph on `N`
//! vertices is `(N-1)/2`-regular; each value selects one branch of the dispatch.

use serde::{Deserialize, Serialize};

use super::{int, lin};
use crate::coloring::theorem_order;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reachability {
    pub n: usize,
    pub order: usize,
    pub d_min: usize,
    /// Inclusive `d` ranges, `None` when empty.
    pub dense: Option<(usize, usize)>,
    pub high_lemma22: Option<(usize, usize)>,
    pub mid: Option<(usize, usize)>,
    pub low: Option<(usize, usize)>,
    /// Some `d` in the low range gives a clique that a 2-cover allows, and
    /// the clique `A` chosen from its `S` sets can itself be 2-coverable.
    pub two_cover_main: bool,
}

fn range(ds: impl Iterator<Item = usize>) -> Option<(usize, usize)> {
    let v: Vec<usize> = ds.collect();
    Some((*v.first()?, *v.last()?))
}

pub fn case_reachability(n: usize) -> Reachability {
    let order = theorem_order(n);
    let mut d_min = (order - 1).div_ceil(2);
    if order % 2 == 1 && d_min % 2 == 1 {
        // both color classes would be d_min-regular with an odd degree sum
        d_min += 1;
    }
    let ds = || d_min..order;
    let high = |d: usize| int(d) >= lin(n, 11, 4, 5);
    let mid = |d: usize| !high(d) && int(d) >= lin(n, 8, 3, 6);
    let low = |d: usize| int(d) < lin(n, 8, 3, 6);
    // a t-coverable clique of size s with t = 2 needs 3s <= 2(2n + 1)
    let two_ok = |s: usize| 3 * s <= 2 * (2 * n + 1);
    let total = (7 * n + 54) / 3;
    let two_cover_main = ds()
        .filter(|&d| low(d))
        .any(|d| (2 * d).checked_sub(4 * n + 8).is_some_and(two_ok))
        && two_ok(total.div_ceil(2));
    Reachability {
        n,
        order,
        d_min,
        dense: range(ds().filter(|&d| high(d) && d > 3 * n)),
        high_lemma22: range(ds().filter(|&d| high(d) && d <= 3 * n)),
        mid: range(ds().filter(|&d| mid(d))),
        low: range(ds().filter(|&d| low(d))),
        two_cover_main,
    }
}
