//! Brute-force oracles and instance helpers shared by the integration tests.
#![allow(dead_code)]

use fanram::rng::SplitMix64;
use fanram::{Color, Coloring, VertexSet};

/// `max |S| - |N(S) ∩ y|` over all `S ⊆ x`, by enumerating subsets.
pub fn brute_deficiency(c: &Coloring, color: Color, x: &VertexSet, y: &VertexSet) -> usize {
    let xs = x.to_vec();
    let masks: Vec<Vec<bool>> = xs
        .iter()
        .map(|&u| y.iter().map(|w| c.has(u, w, color)).collect())
        .collect();
    let ny = y.len();
    let mut best = 0;
    for sub in 0u32..(1 << xs.len()) {
        let mut hit = vec![false; ny];
        let mut size = 0usize;
        for (i, row) in masks.iter().enumerate() {
            if sub >> i & 1 == 1 {
                size += 1;
                for (h, &b) in hit.iter_mut().zip(row) {
                    *h |= b;
                }
            }
        }
        let covered = hit.iter().filter(|&&h| h).count();
        best = best.max(size.saturating_sub(covered));
    }
    best
}

/// Size of a maximum `color` matching on `scope`, by exhaustive branching.
pub fn brute_matching(c: &Coloring, color: Color, scope: &[usize]) -> usize {
    let Some((&v, rest)) = scope.split_first() else { return 0 };
    let mut best = brute_matching(c, color, rest);
    for (i, &u) in rest.iter().enumerate() {
        if c.has(v, u, color) {
            let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &w)| w).collect();
            best = best.max(1 + brute_matching(c, color, &remaining));
        }
    }
    best
}

/// Whether some center and `n` disjoint blades in its `color` neighborhood
/// form a `color` fan, trying every center and every blade choice.
pub fn brute_fan_exists(c: &Coloring, color: Color, n: usize) -> bool {
    fn blades(c: &Coloring, color: Color, pool: &[usize], need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if pool.len() < 2 * need {
            return false;
        }
        let (&v, rest) = pool.split_first().unwrap();
        if blades(c, color, rest, need) {
            return true;
        }
        rest.iter().enumerate().any(|(i, &u)| {
            c.has(v, u, color) && {
                let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &w)| w).collect();
                blades(c, color, &remaining, need - 1)
            }
        })
    }
    (0..c.order()).any(|center| {
        let nb: Vec<usize> = (0..c.order()).filter(|&u| u != center && c.has(center, u, color)).collect();
        blades(c, color, &nb, n)
    })
}

/// A uniformly random permutation of `0..len` (Fisher-Yates).
pub fn permutation(rng: &mut SplitMix64, len: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..len).collect();
    for i in (1..len).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        p.swap(i, j);
    }
    p
}

pub fn random_subset(rng: &mut SplitMix64, universe: usize, size: usize) -> VertexSet {
    permutation(rng, universe).into_iter().take(size).collect()
}

/// Inclusive range draw.
pub fn between(rng: &mut SplitMix64, lo: usize, hi: usize) -> usize {
    lo + rng.below((hi - lo + 1) as u64) as usize
}

/// Black clique `0..k`; each clique vertex owns `size` private vertices that
/// are black to it and to the next `spread - 1` clique vertices cyclically.
/// Every other pair is white. Pairs between the clique and a private
/// vertex flip with probability `noise`.
pub fn private_neighborhoods(k: usize, size: usize, spread: usize, noise: f64, seed: u64) -> Coloring {
    let mut rng = SplitMix64::new(seed);
    let owner = |x: usize| (x - k) / size;
    Coloring::from_fn(k + k * size, |u, v| {
        let r = rng.next_f64();
        let black = if v < k {
            true
        } else if u < k {
            ((u + k - owner(v)) % k < spread) != (r < noise)
        } else {
            false
        };
        if black {
            Color::Black
        } else {
            Color::White
        }
    })
}

/// Circulant coloring: `u < v` is black iff `min(v - u, order - (v - u))` is in `distances`.
pub fn circulant(order: usize, distances: &[usize]) -> Coloring {
    let mut black = vec![false; order];
    for &d in distances {
        black[d] = true;
        black[order - d] = true;
    }
    Coloring::from_fn(order, |u, v| if black[v - u] { Color::Black } else { Color::White })
}

/// A random circulant whose black degree is exactly `degree`, which must be
/// even unless `order` is even.
pub fn random_circulant(order: usize, degree: usize, seed: u64) -> Coloring {
    let mut rng = SplitMix64::new(seed);
    let half = (order - 1) / 2;
    let mut pool: Vec<usize> = permutation(&mut rng, half).into_iter().map(|d| d + 1).collect();
    pool.truncate(degree / 2);
    if degree % 2 == 1 {
        assert!(order.is_multiple_of(2), "odd degree needs an even order");
        pool.push(order / 2);
    }
    circulant(order, &pool)
}

/// Sizes of the barrier inside `N(0)`: `u` vertices black to everything in
/// it, a black clique of `q` vertices, and a white clique of `i` vertices
/// white to the black clique. Black matchings there have fewer than `n`
/// edges and white fans fewer than `n` blades.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Barrier {
    pub n: usize,
    pub d: usize,
    pub u: usize,
    pub q: usize,
    pub i: usize,
}

impl Barrier {
    /// Every barrier split of a `d`-vertex neighborhood that keeps both
    /// the black matching and the white fan below `n` while leaving a black
    /// clique of `2n - 2(3n + 4 - d)` vertices.
    pub fn all(n: usize, d: usize) -> Vec<Barrier> {
        let Some(cc) = (3 * n + 4).checked_sub(d) else { return Vec::new() };
        let mut out = Vec::new();
        for q in (1..2 * n).step_by(2) {
            for u in 0..n {
                let Some(i) = d.checked_sub(u + q) else { continue };
                if i < u.max(1) || 2 * u + q > 2 * n - 1 {
                    continue;
                }
                let white_fan = if q < i { (i - 1 + q) / 2 } else { i - 1 };
                if white_fan.max(i / 2) >= n || u + q + 2 * cc < 2 * n {
                    continue;
                }
                out.push(Barrier { n, d, u, q, i });
            }
        }
        out
    }
}

/// Havel-Hakimi on `targets`, drawing ties in `order`; `None` if not graphic.
fn realize(targets: &[usize]) -> Option<Vec<(usize, usize)>> {
    let mut left: Vec<(usize, usize)> = targets.iter().copied().enumerate().map(|(v, t)| (t, v)).collect();
    let mut edges = Vec::new();
    loop {
        left.sort_unstable_by(|a, b| b.cmp(a));
        let (t, v) = left[0];
        if t == 0 {
            return Some(edges);
        }
        if t >= left.len() {
            return None;
        }
        left[0].0 = 0;
        for slot in left.iter_mut().skip(1).take(t) {
            if slot.0 == 0 {
                return None;
            }
            slot.0 -= 1;
            edges.push((v, slot.1));
        }
    }
}

/// A coloring of `K_order` in which vertex 0 has black degree `b.d`, its
/// black neighborhood carries the barrier `b`, and every vertex has both
/// color degrees at most `b.d`. `None` when the degree targets drawn from
/// `seed` are not realizable.
pub fn planted_barrier(order: usize, b: Barrier, seed: u64) -> Option<Coloring> {
    let mut rng = SplitMix64::new(seed);
    let (lo, hi) = (order - 1 - b.d, b.d);
    if lo > hi {
        return None;
    }
    let u0 = 1;
    let q0 = u0 + b.u;
    let i0 = q0 + b.q;
    let z0 = i0 + b.i;
    let zs = order - z0;
    let mut black = vec![vec![false; order]; order];
    let set = |x: usize, y: usize, black: &mut Vec<Vec<bool>>| {
        black[x][y] = true;
        black[y][x] = true;
    };
    for x in 1..z0 {
        set(0, x, &mut black);
        for y in u0..q0 {
            if x != y {
                set(x, y, &mut black);
            }
        }
    }
    for x in q0..i0 {
        for y in x + 1..i0 {
            set(x, y, &mut black);
        }
    }
    // clique and white-clique vertices take their remaining black degree from Z
    let mut z_load = vec![0usize; zs];
    let zperm = permutation(&mut rng, zs);
    let mut cursor = 0;
    for x in q0..z0 {
        let locked = black[x].iter().filter(|&&e| e).count();
        let need_lo = lo.saturating_sub(locked);
        let need_hi = hi.checked_sub(locked)?.min(zs);
        if need_lo > need_hi {
            return None;
        }
        let need = between(&mut rng, need_lo, need_hi.min(need_lo + 2));
        for _ in 0..need {
            // round-robin keeps the load on Z even
            let mut z = zperm[cursor % zs];
            while black[x][z0 + z] {
                cursor += 1;
                z = zperm[cursor % zs];
            }
            cursor += 1;
            set(x, z0 + z, &mut black);
            z_load[z] += 1;
        }
    }
    let mut targets = Vec::with_capacity(zs);
    for &load in &z_load {
        let t_lo = lo.saturating_sub(load);
        let t_hi = hi.checked_sub(load)?.min(zs - 1);
        if t_lo > t_hi {
            return None;
        }
        targets.push(between(&mut rng, t_lo, t_hi.min(t_lo + 1)));
    }
    if targets.iter().sum::<usize>() % 2 == 1 {
        let lo_of = |z: usize| lo.saturating_sub(z_load[z]);
        let hi_of = |z: usize| (hi - z_load[z]).min(zs - 1);
        let z = (0..zs).find(|&z| targets[z] < hi_of(z) || targets[z] > lo_of(z))?;
        if targets[z] < hi_of(z) {
            targets[z] += 1;
        } else {
            targets[z] -= 1;
        }
    }
    for (x, y) in realize(&targets)? {
        set(z0 + x, z0 + y, &mut black);
    }
    let c = Coloring::from_fn(order, |x, y| if black[x][y] { Color::Black } else { Color::White });
    let ok = (0..order).all(|v| (lo..=hi).contains(&c.degree(v, Color::Black)));
    ok.then_some(c)
}
