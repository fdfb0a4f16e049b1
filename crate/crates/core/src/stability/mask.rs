use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

/// The arrow set of a subquiver `Q'` with `Q'_0 = Q_0`, as a bitmask over
/// arrow indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubquiverMask {
    bits: u128,
    len: usize,
}

impl SubquiverMask {
    /// Largest arrow count a mask can address.
    pub const MAX_ARROWS: usize = 128;

    pub fn full(len: usize) -> Self {
        assert!(len <= Self::MAX_ARROWS);
        let bits = if len == 128 { u128::MAX } else { (1u128 << len) - 1 };
        SubquiverMask { bits, len }
    }

    pub fn empty(len: usize) -> Self {
        assert!(len <= Self::MAX_ARROWS);
        SubquiverMask { bits: 0, len }
    }

    pub fn from_bits(bits: u128, len: usize) -> Self {
        let full = Self::full(len);
        assert_eq!(bits & !full.bits, 0, "mask has bits beyond its length");
        SubquiverMask { bits, len }
    }

    /// The full quiver with the given arrows removed.
    pub fn without(len: usize, removed: &[usize]) -> Self {
        let mut m = Self::full(len);
        for &i in removed {
            m.bits &= !(1u128 << i);
        }
        m
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, arrow: usize) -> bool {
        self.bits & (1u128 << arrow) != 0
    }

    pub fn kept(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.contains(i)).collect()
    }

    pub fn removed(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| !self.contains(i)).collect()
    }
}

impl fmt::Debug for SubquiverMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubquiverMask{:?}", self.kept())
    }
}

/// Serialized as the sorted list of kept arrow indices.
impl Serialize for SubquiverMask {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.kept().serialize(s)
    }
}

/// A set of vertices, as a bitmask (at most 32 vertices).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0, |acc, v| acc | (1 << v)))
    }

    pub fn contains(&self, v: usize) -> bool {
        v < 32 && self.0 & (1 << v) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..32).filter(|&v| self.contains(v)).collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexSet{:?}", self.vertices())
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.vertices().serialize(s)
    }
}

/// All `k`-subsets of `0..n` as bitmasks, in colexicographic order (which for
/// bitmasks is increasing numeric order).
pub(crate) struct Combinations {
    next: Option<u128>,
    n: usize,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        assert!(n <= 128);
        let next = if k > n {
            None
        } else if k == 0 {
            Some(0)
        } else if k == 128 {
            Some(u128::MAX)
        } else {
            Some((1u128 << k) - 1)
        };
        Combinations { next, n }
    }
}

impl Iterator for Combinations {
    type Item = u128;

    fn next(&mut self) -> Option<u128> {
        let x = self.next?;
        self.next = if x == 0 {
            None
        } else {
            // Gosper's hack.
            let c = x & x.wrapping_neg();
            match x.checked_add(c) {
                None => None,
                Some(r) => {
                    let y = (((r ^ x) >> 2) / c) | r;
                    (self.n == 128 || y >> self.n == 0).then_some(y)
                }
            }
        };
        Some(x)
    }
}

/// The first `k`-subset of `0..n` in colex order satisfying `pred`, checked
/// in parallel chunks. An error from `pred` is returned if it comes before the
/// first match.
pub(crate) fn first_subset<E, P>(n: usize, k: usize, pred: P) -> Result<Option<u128>, E>
where
    E: Send,
    P: Fn(u128) -> Result<bool, E> + Sync,
{
    const CHUNK: usize = 1 << 14;
    let mut subsets = Combinations::new(n, k);
    loop {
        let chunk: Vec<u128> = subsets.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return Ok(None);
        }
        let hit = chunk
            .par_iter()
            .map(|&s| pred(s).map(|b| b.then_some(s)))
            .find_first(|r| !matches!(r, Ok(None)));
        if let Some(r) = hit {
            return r;
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}
