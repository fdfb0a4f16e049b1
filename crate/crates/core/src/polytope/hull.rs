//! LP-based face queries and facet re-derivation for a finite point set.
//! Nothing here knows about quivers; it only sees points of `Z^d`.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::VertexMatrix;
use crate::error::{Error, Result};
use crate::field::{ExactField, SmallRational};
use crate::linalg::{rank_of, solve};
use crate::lp::{LinearProgram, LpOutcome, SolverOptions};
use crate::stability::{binomial, Combinations};
use crate::weight::rational;

/// Bound on the number of subsets one oracle call may visit.
pub const MAX_ORACLE_SUBSETS: u128 = 5_000_000;

/// Whether the points indexed by `subset` are exactly the points on some
/// proper face of their convex hull.
///
/// Decided by the feasibility of `c·v = β` on the subset and `c·v <= β - 1`
/// off it, with `c` and `β` free. Scaling any strict separator gives such a
/// pair, so no tolerance is involved.
pub fn face_oracle(v: &VertexMatrix, subset: &[usize]) -> Result<bool> {
    let n = v.len();
    let d = v.dimension;
    let mut inside = vec![false; n];
    for &i in subset {
        if i >= n {
            return Err(Error::Dimension {
                expected: n,
                found: i + 1,
            });
        }
        inside[i] = true;
    }
    if subset.is_empty() {
        return Err(Error::Integrity("face query on an empty subset".into()));
    }
    if inside.iter().all(|&b| b) {
        return Ok(false);
    }

    // Columns: c⁺ (d), c⁻ (d), β⁺, β⁻, then one slack per outside point.
    let outside: Vec<usize> = (0..n).filter(|&i| !inside[i]).collect();
    let width = 2 * d + 2 + outside.len();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for (i, p) in v.points.iter().enumerate() {
        let mut row = vec![rational(0); width];
        for (j, &x) in p.iter().enumerate() {
            row[j] = rational(x);
            row[d + j] = rational(-x);
        }
        row[2 * d] = rational(-1);
        row[2 * d + 1] = rational(1);
        if let Ok(k) = outside.binary_search(&i) {
            row[2 * d + 2 + k] = rational(1);
            b.push(rational(-1));
        } else {
            b.push(rational(0));
        }
        a.push(row);
    }
    let lp = LinearProgram::new(a, b, vec![rational(0); width])?;
    Ok(matches!(lp.solve(SolverOptions::default())?, LpOutcome::Optimal(_)))
}

fn check_budget(total: u128) -> Result<()> {
    if total > MAX_ORACLE_SUBSETS {
        return Err(Error::capacity("face oracle subsets", MAX_ORACLE_SUBSETS, total));
    }
    Ok(())
}

pub(crate) fn bits_to_indices(bits: u128) -> Vec<usize> {
    (0..128).filter(|&i| bits & (1u128 << i) != 0).collect()
}

/// Entry `ℓ - 1` counts the `ℓ`-subsets of points that span a face, for
/// `ℓ = 1..=up_to`.
pub fn f_vector_oracle(v: &VertexMatrix, up_to: usize) -> Result<Vec<usize>> {
    let n = v.len();
    check_budget((1..=up_to).map(|l| binomial(n, l)).sum())?;
    (1..=up_to)
        .map(|l| {
            let subsets: Vec<u128> = Combinations::new(n, l).collect();
            subsets
                .par_iter()
                .map(|&s| face_oracle(v, &bits_to_indices(s)).map(usize::from))
                .sum::<Result<usize>>()
        })
        .collect()
}

/// Facets of the hull of the dual vertices, recovered independently of the
/// quiver, and how the arrow rows sit against them.
#[derive(Clone, Debug, Serialize)]
pub struct HullFacets {
    /// Normals `w` of the facets `{x : w·x = 1}`, sorted.
    #[serde(skip)]
    pub normals: Vec<Vec<BigRational>>,
    /// The normals as integers, when every one is integral.
    pub integer_normals: Option<Vec<Vec<i64>>>,
    /// One entry per point.
    pub contacts: Vec<ContactCheck>,
}

/// How the point `a_i` behaves as a linear functional on the facet normals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContactCheck {
    pub index: usize,
    /// `max_w a_i·w == 1`.
    pub max_is_one: bool,
    /// Number of normals attaining the maximum.
    pub contact: usize,
    /// Linear rank of those normals; `d` means `a_i` defines a facet of the
    /// hull of the normals.
    pub rank: usize,
}

impl HullFacets {
    pub fn is_integral(&self) -> bool {
        self.integer_normals.is_some()
    }

    /// True when every point is a facet normal of the hull of the normals,
    /// i.e. the inequalities `a_i·x <= 1` are recovered exactly.
    pub fn rows_are_facets(&self, dimension: usize) -> bool {
        self.contacts.iter().all(|c| c.max_is_one && c.rank == dimension)
    }
}

/// Enumerates the vertices of `{x : a_i·x <= 1 for all i}` by solving every
/// nonsingular `d`-subset of the equalities and keeping the feasible
/// solutions. These are exactly the facet normals of the hull of the points,
/// provided the origin is interior.
pub fn hull_facets(v: &VertexMatrix) -> Result<HullFacets> {
    let n = v.len();
    let d = v.dimension;
    check_budget(binomial(n, d))?;
    let small: Vec<Vec<SmallRational>> = v
        .points
        .iter()
        .map(|p| p.iter().map(|&x| SmallRational::from_i64(x)).collect())
        .collect();
    let big: Vec<Vec<BigRational>> = v
        .points
        .iter()
        .map(|p| p.iter().map(|&x| rational(x)).collect())
        .collect();

    let subsets: Vec<u128> = Combinations::new(n, d).collect();
    let found: Vec<Vec<BigRational>> = subsets
        .par_iter()
        .filter_map(|&s| {
            let rows = bits_to_indices(s);
            basic_solution(&small, &rows).unwrap_or_else(|| {
                basic_solution(&big, &rows).expect("big rationals do not overflow")
            })
        })
        .collect();
    let normals: Vec<Vec<BigRational>> = found.into_iter().collect::<BTreeSet<_>>().into_iter().collect();

    let integer_normals = normals
        .iter()
        .map(|w| {
            w.iter()
                .map(|x| {
                    if x.is_integer() {
                        i64::try_from(x.to_integer()).ok()
                    } else {
                        None
                    }
                })
                .collect::<Option<Vec<i64>>>()
        })
        .collect::<Option<Vec<_>>>();

    let contacts = big
        .iter()
        .enumerate()
        .map(|(index, a)| {
            let values: Vec<BigRational> = normals.iter().map(|w| dot(a, w)).collect();
            let max = values.iter().max().cloned().unwrap_or_else(|| rational(0));
            let touching: Vec<Vec<BigRational>> = normals
                .iter()
                .zip(&values)
                .filter(|(_, val)| **val == max)
                .map(|(w, _)| w.clone())
                .collect();
            ContactCheck {
                index,
                max_is_one: max.is_one(),
                contact: touching.len(),
                rank: rank_of(&touching).expect("big rationals do not overflow"),
            }
        })
        .collect();

    Ok(HullFacets {
        normals,
        integer_normals,
        contacts,
    })
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `None` on overflow; `Some(None)` when singular or infeasible.
fn basic_solution<F: ExactField>(points: &[Vec<F>], rows: &[usize]) -> Option<Option<Vec<BigRational>>> {
    let a: Vec<Vec<F>> = rows.iter().map(|&i| points[i].clone()).collect();
    let ones = vec![F::one(); rows.len()];
    let Some(w) = solve(&a, &ones)? else {
        return Some(None);
    };
    for p in points {
        let mut acc = F::zero();
        for (x, y) in p.iter().zip(&w) {
            acc = acc.add(&x.mul(y)?)?;
        }
        if acc > F::one() {
            return Some(None);
        }
    }
    Some(Some(w.iter().map(ExactField::to_big).collect()))
}
