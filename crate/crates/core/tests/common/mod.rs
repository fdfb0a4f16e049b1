//! Brute-force oracles and a random quiver generator shared by the
//! integration tests. Everything here is deliberately naive: direct
//! definitions, no shared code with the library's fast paths.

#![allow(dead_code)]

use num_rational::BigRational;
use quiverpoly::{Quiver, Weight};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A connected acyclic quiver with `2..=max_n` vertices and at most `max_m`
/// arrows: a random tree plus extra arrows, all oriented along a hidden
/// random topological order, arrow list shuffled.
pub fn random_quiver(seed: u64, max_n: usize, max_m: usize) -> Quiver {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n);
    let m = rng.gen_range(n - 1..=max_m.max(n - 1));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut arrows = Vec::with_capacity(m);
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        arrows.push((order[parent], order[i]));
    }
    while arrows.len() < m {
        let a = rng.gen_range(0..n - 1);
        let b = rng.gen_range(a + 1..n);
        arrows.push((order[a], order[b]));
    }
    arrows.shuffle(&mut rng);
    Quiver::new(n, arrows).unwrap()
}

/// A random integer weight with entries in `-5..=5` summing to zero.
pub fn random_weight(seed: u64, n: usize) -> Weight {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut v: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-5..=5)).collect();
    v.push(-v.iter().sum::<i64>());
    Weight::from_integers(v).unwrap()
}

fn in_set(bits: u32, v: usize) -> bool {
    bits & (1 << v) != 0
}

/// Direct definition: no kept arrow has tail in `V` and head outside.
pub fn is_closed(q: &Quiver, kept: &[bool], bits: u32) -> bool {
    q.arrows()
        .iter()
        .zip(kept)
        .all(|(a, &k)| !k || !(in_set(bits, a.tail) && !in_set(bits, a.head)))
}

pub fn closed_sets(q: &Quiver, kept: &[bool]) -> Vec<u32> {
    let full = (1u32 << q.vertex_count()) - 1;
    (1..full).filter(|&b| is_closed(q, kept, b)).collect()
}

pub fn subset_sum(theta: &Weight, bits: u32) -> BigRational {
    theta
        .values()
        .iter()
        .enumerate()
        .filter(|(i, _)| in_set(bits, *i))
        .map(|(_, v)| v.clone())
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Naive {
    Stable,
    Semistable,
    Unstable,
}

pub fn naive_status(q: &Quiver, kept: &[bool], theta: &Weight) -> Naive {
    let zero = BigRational::from_integer(0.into());
    let mut status = Naive::Stable;
    for b in closed_sets(q, kept) {
        let s = subset_sum(theta, b);
        if s < zero {
            return Naive::Unstable;
        }
        if s == zero {
            status = Naive::Semistable;
        }
    }
    status
}

pub fn kept_from_mask(m: usize, mask: u64) -> Vec<bool> {
    (0..m).map(|i| mask & (1 << i) != 0).collect()
}

/// Literal genericity: scan every arrow subset for a strictly semistable one.
/// Returns the first such mask (as kept-arrow bits).
pub fn naive_nongeneric_mask(q: &Quiver, theta: &Weight) -> Option<u64> {
    let m = q.arrow_count();
    (0..1u64 << m).find(|&mask| naive_status(q, &kept_from_mask(m, mask), theta) == Naive::Semistable)
}

/// Unstable codimension by the cut formula: the fewest arrows that must be
/// removed to close some negative-sum set is the number leaving it.
pub fn naive_codim(q: &Quiver, theta: &Weight) -> Option<usize> {
    let zero = BigRational::from_integer(0.into());
    let full = (1u32 << q.vertex_count()) - 1;
    (1..full)
        .filter(|&b| subset_sum(theta, b) < zero)
        .map(|b| {
            q.arrows()
                .iter()
                .filter(|a| in_set(b, a.tail) && !in_set(b, a.head))
                .count()
        })
        .min()
}

pub fn naive_tight(q: &Quiver, theta: &Weight) -> bool {
    let m = q.arrow_count();
    (0..m).all(|i| {
        let kept: Vec<bool> = (0..m).map(|j| j != i).collect();
        naive_status(q, &kept, theta) == Naive::Stable
    })
}

/// Undirected connectivity after deleting the arrows in `removed`.
fn connected_without(q: &Quiver, removed: u64) -> bool {
    let n = q.vertex_count();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for (i, a) in q.arrows().iter().enumerate() {
            if removed & (1 << i) != 0 {
                continue;
            }
            for (x, y) in [(a.tail, a.head), (a.head, a.tail)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Smallest number of arrows whose deletion disconnects the underlying graph.
pub fn naive_edge_connectivity(q: &Quiver) -> usize {
    let m = q.arrow_count();
    if !connected_without(q, 0) {
        return 0;
    }
    (1..=m)
        .find(|&k| (0..1u64 << m).any(|s| s.count_ones() as usize == k && !connected_without(q, s)))
        .unwrap_or(m)
}
