//! The flow polytope of `(Q, δ)` translated to the origin, its dual, and
//! neighborliness certificates.
//!
//! With a cycle basis `f_1..f_d` fixed, row `i` of the facet matrix is
//! `-(f_1(a_i), ..., f_d(a_i))`. The same rows are the vertices of the dual
//! polytope, so [`FacetPresentation`] and [`VertexMatrix`] share their data
//! and differ only in what they promise about it.

mod hull;
mod neighborly;

pub use hull::{
    face_oracle, f_vector_oracle, hull_facets, ContactCheck, HullFacets, MAX_ORACLE_SUBSETS,
};
pub use neighborly::{
    max_neighborliness_hull, max_neighborliness_jow, max_neighborliness_subquiver, Method,
    NeighborlinessCertificate,
};

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::rank_i64;
use crate::quiver::{validate, CycleBasis, Quiver};
use crate::stability::{Limits, StabilityOracle};
use crate::weight::canonical_weight;

/// `A x <= 1`, one row per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetPresentation {
    pub matrix: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
    pub tree_arrows: Vec<usize>,
    /// Set when `(Q, δ)` is not tight; the rows are then not guaranteed to be
    /// irredundant facets.
    pub not_tight: bool,
}

/// The dual polytope's vertices, one point of `Z^d` per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexMatrix {
    pub dimension: usize,
    pub points: Vec<Vec<i64>>,
    pub tree_arrows: Vec<usize>,
}

fn check_structure(q: &Quiver) -> Result<()> {
    let diag = validate(q);
    if !diag.connected {
        return Err(Error::Disconnected);
    }
    if !diag.acyclic {
        return Err(Error::Cyclic);
    }
    Ok(())
}

fn evaluation_rows(q: &Quiver, basis: &CycleBasis) -> Vec<Vec<i64>> {
    (0..q.arrow_count())
        .map(|a| basis.evaluation_row(a).into_iter().map(|x| -x).collect())
        .collect()
}

pub fn facet_presentation(q: &Quiver, basis: &CycleBasis) -> Result<FacetPresentation> {
    check_structure(q)?;
    let delta = canonical_weight(q);
    let tight = StabilityOracle::new(q, &delta, &Limits::default())?
        .tightness()
        .tight;
    if !tight {
        log::warn!("(Q, δ) is not tight; facet rows may be redundant");
    }
    Ok(FacetPresentation {
        matrix: evaluation_rows(q, basis),
        rhs: vec![1; q.arrow_count()],
        tree_arrows: basis.tree_arrows().to_vec(),
        not_tight: !tight,
    })
}

/// Errors with [`Error::Integrity`] if two arrows give the same point or the
/// points do not span `R^d`, both of which mean `(Q, δ)` is not tight.
pub fn dual_vertices(q: &Quiver, basis: &CycleBasis) -> Result<VertexMatrix> {
    check_structure(q)?;
    let points = evaluation_rows(q, basis);
    let d = basis.dimension();
    let mut seen = HashSet::new();
    for (i, p) in points.iter().enumerate() {
        if !seen.insert(p) {
            return Err(Error::Integrity(format!(
                "arrow {i} repeats an earlier dual vertex {p:?}"
            )));
        }
    }
    let rank = rank_i64(&points);
    if rank != d {
        return Err(Error::Integrity(format!(
            "dual vertices span rank {rank}, expected {d}"
        )));
    }
    Ok(VertexMatrix {
        dimension: d,
        points,
        tree_arrows: basis.tree_arrows().to_vec(),
    })
}

impl VertexMatrix {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn entries_in_unit_range(&self) -> bool {
        self.points.iter().flatten().all(|x| (-1..=1).contains(x))
    }

    /// One point per line, comma separated, no header.
    pub fn to_csv(&self) -> String {
        matrix_csv(&self.points)
    }
}

impl FacetPresentation {
    /// One inequality per line: the row entries followed by the right-hand side.
    pub fn to_csv(&self) -> String {
        let rows: Vec<Vec<i64>> = self
            .matrix
            .iter()
            .zip(&self.rhs)
            .map(|(r, &b)| r.iter().copied().chain([b]).collect())
            .collect();
        matrix_csv(&rows)
    }
}

pub(crate) fn matrix_csv(rows: &[Vec<i64>]) -> String {
    let mut out = String::new();
    for r in rows {
        for (j, x) in r.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{x}").unwrap();
        }
        out.push('\n');
    }
    out
}
