//! King stability of thin subquivers, and the weight properties built on it:
//! genericity, tightness, and the codimension of the unstable locus.
//!
//! A subquiver is identified by its arrow set (all vertices are kept). A
//! vertex set `V` is successor-closed in `Q'` when no arrow of `Q'` leaves
//! `V`, i.e. when `leaving(V) ∩ Q'_1 = ∅`. Only nonempty proper `V` are
//! considered; `∅` and `Q_0` always have weight sum zero.

mod mask;
mod perturb;

pub use mask::{SubquiverMask, VertexSet};
pub use perturb::{perturb_to_generic, PerturbOptions};

pub(crate) use mask::{binomial, first_subset, Combinations};

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::weight::{rational_pair, Weight};

/// Capacity bounds for the exponential enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Bound on `|Q0|` for vertex-subset enumeration.
    pub max_vertices: usize,
    /// Bound on `|Q1|` for arrow masks.
    pub max_arrows: usize,
    /// Bound on the number of arrow subsets visited by one search.
    pub max_combinations: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: 24,
            max_arrows: SubquiverMask::MAX_ARROWS,
            max_combinations: 50_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Stable,
    StrictlySemistable,
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub vertices: VertexSet,
    #[serde(with = "rational_pair")]
    pub sum: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub status: Status,
    /// A successor-closed set of minimal weight sum (smallest bitmask on
    /// ties). Absent exactly when the subquiver is stable.
    pub witness: Option<Witness>,
}

#[derive(Clone, Copy, Debug)]
struct Critical {
    bits: u32,
    leaving: u128,
    sum: i128,
}

/// Precomputed data for repeated stability queries against one `(Q, θ)`.
///
/// Only vertex sets with non-positive weight sum can block stability, so the
/// oracle keeps exactly those, each with the mask of arrows leaving it. A
/// query is then one AND per kept set.
pub struct StabilityOracle<'a> {
    quiver: &'a Quiver,
    theta: &'a Weight,
    out_arrows: Vec<u128>,
    in_arrows: Vec<u128>,
    scaled: Vec<i128>,
    critical: Vec<Critical>,
}

impl<'a> StabilityOracle<'a> {
    pub fn new(q: &'a Quiver, theta: &'a Weight, limits: &Limits) -> Result<Self> {
        let n = q.vertex_count();
        let m = q.arrow_count();
        if theta.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: theta.len(),
            });
        }
        let vertex_cap = limits.max_vertices.min(30);
        if n > vertex_cap {
            return Err(Error::capacity("vertex-subset enumeration", vertex_cap as u128, n as u128));
        }
        let arrow_cap = limits.max_arrows.min(SubquiverMask::MAX_ARROWS);
        if m > arrow_cap {
            return Err(Error::capacity("arrow mask", arrow_cap as u128, m as u128));
        }
        let mut out_arrows = vec![0u128; n];
        let mut in_arrows = vec![0u128; n];
        for (i, a) in q.arrows().iter().enumerate() {
            out_arrows[a.tail] |= 1 << i;
            in_arrows[a.head] |= 1 << i;
        }
        let scaled = theta.integer_scaled()?;
        let mut oracle = StabilityOracle {
            quiver: q,
            theta,
            out_arrows,
            in_arrows,
            scaled,
            critical: Vec::new(),
        };
        let full = (1u32 << n) - 1;
        for bits in 1..full {
            let sum = oracle.scaled_sum(bits);
            if sum <= 0 {
                oracle.critical.push(Critical {
                    bits,
                    leaving: oracle.leaving(bits),
                    sum,
                });
            }
        }
        Ok(oracle)
    }

    pub fn quiver(&self) -> &Quiver {
        self.quiver
    }

    pub fn theta(&self) -> &Weight {
        self.theta
    }

    fn scaled_sum(&self, bits: u32) -> i128 {
        let mut sum = 0;
        let mut b = bits;
        while b != 0 {
            let v = b.trailing_zeros() as usize;
            sum += self.scaled[v];
            b &= b - 1;
        }
        sum
    }

    /// Mask of arrows with tail in `V` and head outside `V`.
    pub(crate) fn leaving(&self, bits: u32) -> u128 {
        let (mut tails, mut heads) = (0u128, 0u128);
        let mut b = bits;
        while b != 0 {
            let v = b.trailing_zeros() as usize;
            tails |= self.out_arrows[v];
            heads |= self.in_arrows[v];
            b &= b - 1;
        }
        tails & !heads
    }

    fn full_vertex_bits(&self) -> u32 {
        (1u32 << self.quiver.vertex_count()) - 1
    }

    /// Nonempty proper successor-closed vertex sets of the masked subquiver,
    /// in increasing bitmask order.
    pub fn successor_closed_sets(&self, mask: SubquiverMask) -> impl Iterator<Item = VertexSet> + '_ {
        (1..self.full_vertex_bits())
            .filter(move |&bits| self.leaving(bits) & mask.bits() == 0)
            .map(VertexSet)
    }

    pub fn verdict(&self, mask: SubquiverMask) -> StabilityVerdict {
        let mut best: Option<&Critical> = None;
        for c in &self.critical {
            if c.leaving & mask.bits() != 0 {
                continue;
            }
            // Critical sets are visited in increasing bitmask order, so a
            // strict comparison keeps the smallest bitmask among ties.
            if best.is_none_or(|b| c.sum < b.sum) {
                best = Some(c);
            }
        }
        match best {
            None => StabilityVerdict {
                status: Status::Stable,
                witness: None,
            },
            Some(c) => StabilityVerdict {
                status: if c.sum < 0 {
                    Status::Unstable
                } else {
                    Status::StrictlySemistable
                },
                witness: Some(Witness {
                    vertices: VertexSet(c.bits),
                    sum: self.theta.subset_sum(c.bits),
                }),
            },
        }
    }

    pub fn is_stable(&self, mask: SubquiverMask) -> bool {
        self.critical
            .iter()
            .all(|c| c.leaving & mask.bits() != 0)
    }

    pub fn is_unstable(&self, mask: SubquiverMask) -> bool {
        self.critical
            .iter()
            .any(|c| c.sum < 0 && c.leaving & mask.bits() == 0)
    }

    /// Zero-sum nonempty proper vertex sets, in increasing bitmask order.
    fn zero_sum_sets(&self) -> impl Iterator<Item = &Critical> + '_ {
        self.critical.iter().filter(|c| c.sum == 0)
    }

    pub fn is_generic(&self, mode: GenericityMode) -> GenericityReport {
        let first_zero = self.zero_sum_sets().next().map(|c| VertexSet(c.bits));
        match mode {
            GenericityMode::Fast => GenericityReport {
                generic: first_zero.is_none(),
                mode,
                zero_sum_set: first_zero,
                witness: None,
            },
            GenericityMode::Exhaustive => {
                // A zero-sum V witnesses non-genericity iff the largest
                // subquiver in which V is closed (drop the arrows leaving V)
                // is semistable: every smaller subquiver in which V is closed
                // has at least as many closed sets.
                let full = SubquiverMask::full(self.quiver.arrow_count());
                for c in self.zero_sum_sets() {
                    let mask = SubquiverMask::from_bits(full.bits() & !c.leaving, full.len());
                    if !self.is_unstable(mask) {
                        return GenericityReport {
                            generic: false,
                            mode,
                            zero_sum_set: Some(VertexSet(c.bits)),
                            witness: Some(mask),
                        };
                    }
                }
                GenericityReport {
                    generic: true,
                    mode,
                    zero_sum_set: first_zero,
                    witness: None,
                }
            }
        }
    }

    /// Tight iff every single-arrow removal leaves a stable subquiver.
    pub fn tightness(&self) -> TightnessReport {
        let m = self.quiver.arrow_count();
        for a in 0..m {
            let mask = SubquiverMask::without(m, &[a]);
            let verdict = self.verdict(mask);
            if verdict.status != Status::Stable {
                return TightnessReport {
                    tight: false,
                    offending_arrow: Some(a),
                    verdict: Some(verdict),
                };
            }
        }
        TightnessReport {
            tight: true,
            offending_arrow: None,
            verdict: None,
        }
    }

    /// Smallest removal set `B` (colex-first among the smallest) such that
    /// `Q1 \ B` is unstable, found by trying removal sizes 0, 1, 2, ...
    pub fn unstable_codim(&self, limits: &Limits) -> Result<CodimCertificate> {
        let m = self.quiver.arrow_count();
        if self.theta.is_zero() {
            return Err(Error::NotFound(
                "the zero weight has no unstable subquiver".into(),
            ));
        }
        let full = SubquiverMask::full(m);
        let mut visited: u128 = 0;
        for size in 0..=m {
            visited = visited.saturating_add(binomial(m, size));
            if visited > limits.max_combinations {
                return Err(Error::capacity("unstable codimension search", limits.max_combinations, visited));
            }
            for removed in Combinations::new(m, size) {
                let mask = SubquiverMask::from_bits(full.bits() & !removed, m);
                if self.is_unstable(mask) {
                    return Ok(CodimCertificate {
                        codim: size,
                        witness_removal: mask.removed(),
                        exhaustive_below: true,
                    });
                }
            }
        }
        Err(Error::Integrity(
            "no arrow removal is unstable for a nonzero weight".into(),
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenericityMode {
    /// No nonempty proper vertex set has weight sum zero. Sufficient only.
    Fast,
    /// Exact: no subquiver is strictly semistable.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityReport {
    pub generic: bool,
    pub mode: GenericityMode,
    /// First zero-sum nonempty proper vertex set, if any.
    pub zero_sum_set: Option<VertexSet>,
    /// A strictly semistable subquiver (exhaustive mode only).
    pub witness: Option<SubquiverMask>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightnessReport {
    pub tight: bool,
    pub offending_arrow: Option<usize>,
    pub verdict: Option<StabilityVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimCertificate {
    pub codim: usize,
    /// Sorted arrow indices `B` with `|B| = codim` and `Q1 \ B` unstable.
    pub witness_removal: Vec<usize>,
    /// Every smaller removal set was checked and found not unstable.
    pub exhaustive_below: bool,
}

pub fn successor_closed_sets(q: &Quiver, mask: SubquiverMask) -> Result<Vec<VertexSet>> {
    let zero = Weight::new(vec![BigRational::from_integer(0.into()); q.vertex_count()])?;
    let oracle = StabilityOracle::new(q, &zero, &Limits::default())?;
    check_mask(q, mask)?;
    Ok(oracle.successor_closed_sets(mask).collect())
}

fn check_mask(q: &Quiver, mask: SubquiverMask) -> Result<()> {
    if mask.len() != q.arrow_count() {
        return Err(Error::Dimension {
            expected: q.arrow_count(),
            found: mask.len(),
        });
    }
    Ok(())
}

pub fn stability(q: &Quiver, mask: SubquiverMask, theta: &Weight) -> Result<StabilityVerdict> {
    check_mask(q, mask)?;
    Ok(StabilityOracle::new(q, theta, &Limits::default())?.verdict(mask))
}

pub fn is_generic(q: &Quiver, theta: &Weight, mode: GenericityMode) -> Result<GenericityReport> {
    Ok(StabilityOracle::new(q, theta, &Limits::default())?.is_generic(mode))
}

pub fn is_tight(q: &Quiver, theta: &Weight) -> Result<TightnessReport> {
    Ok(StabilityOracle::new(q, theta, &Limits::default())?.tightness())
}

pub fn unstable_codim(q: &Quiver, theta: &Weight) -> Result<CodimCertificate> {
    let limits = Limits::default();
    StabilityOracle::new(q, theta, &limits)?.unstable_codim(&limits)
}

/// The four-way split of the arrows by where their endpoints fall relative
/// to a vertex set `V`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ArrowPartition {
    /// Both endpoints in `V`.
    pub inside: Vec<usize>,
    /// Both endpoints outside `V`.
    pub outside: Vec<usize>,
    /// Tail outside, head inside.
    pub entering: Vec<usize>,
    /// Tail inside, head outside.
    pub leaving: Vec<usize>,
}

pub fn arrow_partition(q: &Quiver, vertices: VertexSet) -> ArrowPartition {
    let mut p = ArrowPartition::default();
    for (i, a) in q.arrows().iter().enumerate() {
        match (vertices.contains(a.tail), vertices.contains(a.head)) {
            (true, true) => p.inside.push(i),
            (false, false) => p.outside.push(i),
            (false, true) => p.entering.push(i),
            (true, false) => p.leaving.push(i),
        }
    }
    p
}

/// Number of arrows leaving `V`: every removal set that makes `V`
/// successor-closed must contain them all.
pub fn a4_lower_bound(q: &Quiver, vertices: VertexSet) -> Result<usize> {
    let n = q.vertex_count();
    let full = if n >= 32 { u32::MAX } else { (1u32 << n) - 1 };
    if vertices.is_empty() || vertices.0 & full == full || vertices.0 & !full != 0 {
        return Err(Error::Integrity(format!(
            "{vertices:?} is not a nonempty proper vertex subset"
        )));
    }
    Ok(arrow_partition(q, vertices).leaving.len())
}
