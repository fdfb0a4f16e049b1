use serde::Serialize;

use super::hull::{bits_to_indices, face_oracle, MAX_ORACLE_SUBSETS};
use super::{check_structure, VertexMatrix};
use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::stability::{
    binomial, first_subset, GenericityMode, Limits, StabilityOracle, SubquiverMask,
};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    StableSubquiver,
    JowCodim,
    HullOracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborlinessCertificate {
    pub method: Method,
    pub k_max: usize,
    /// A `(k_max + 1)`-subset of arrows (equivalently, of dual vertices) that
    /// fails: its removal is not stable, or the points span no face.
    pub failing_witness: Option<Vec<usize>>,
    /// The weight was not both generic and tight, so the link to the
    /// polytope is not guaranteed.
    pub conditional: bool,
    /// Tree arrows of the basis the points came from (hull method only).
    pub spanning_tree: Option<Vec<usize>>,
}

fn guarded_oracle<'a>(q: &'a Quiver, theta: &'a Weight, limits: &Limits) -> Result<(StabilityOracle<'a>, bool)> {
    check_structure(q)?;
    let oracle = StabilityOracle::new(q, theta, limits)?;
    let generic = oracle.is_generic(GenericityMode::Exhaustive).generic;
    let tight = oracle.tightness().tight;
    if !(generic && tight) {
        log::warn!("weight is generic: {generic}, tight: {tight}; certificate is conditional");
    }
    Ok((oracle, !(generic && tight)))
}

/// Largest `k` such that removing any at most `k` arrows leaves a
/// `θ`-stable subquiver. Removal sizes are tried in increasing order and the
/// colex-first failing set is returned.
pub fn max_neighborliness_subquiver(q: &Quiver, theta: &Weight, limits: &Limits) -> Result<NeighborlinessCertificate> {
    let (oracle, conditional) = guarded_oracle(q, theta, limits)?;
    let m = q.arrow_count();
    let full = SubquiverMask::full(m);
    if !oracle.is_stable(full) {
        return Err(Error::Refused("the full quiver is not stable for this weight".into()));
    }
    let mut visited: u128 = 0;
    for size in 1..=m {
        visited = visited.saturating_add(binomial(m, size));
        if visited > limits.max_combinations {
            return Err(Error::capacity("neighborliness search", limits.max_combinations, visited));
        }
        let hit = first_subset::<Error, _>(m, size, |removed| {
            Ok(!oracle.is_stable(SubquiverMask::from_bits(full.bits() & !removed, m)))
        })?;
        if let Some(removed) = hit {
            return Ok(NeighborlinessCertificate {
                method: Method::StableSubquiver,
                k_max: size - 1,
                failing_witness: Some(bits_to_indices(removed)),
                conditional,
                spanning_tree: None,
            });
        }
    }
    Err(Error::Integrity("removing every arrow left a stable subquiver".into()))
}

/// `k_max = codim − 1`, where codim is the unstable-locus codimension.
pub fn max_neighborliness_jow(q: &Quiver, theta: &Weight, limits: &Limits) -> Result<NeighborlinessCertificate> {
    let (oracle, conditional) = guarded_oracle(q, theta, limits)?;
    let cert = oracle.unstable_codim(limits)?;
    if cert.codim == 0 {
        return Err(Error::Refused("the full quiver is already unstable for this weight".into()));
    }
    Ok(NeighborlinessCertificate {
        method: Method::JowCodim,
        k_max: cert.codim - 1,
        failing_witness: Some(cert.witness_removal),
        conditional,
        spanning_tree: None,
    })
}

/// Largest `k` such that every `k`-subset of the points spans a face, by
/// direct LP queries.
pub fn max_neighborliness_hull(v: &VertexMatrix) -> Result<NeighborlinessCertificate> {
    let n = v.len();
    let mut visited: u128 = 0;
    for size in 1..=n {
        visited = visited.saturating_add(binomial(n, size));
        if visited > MAX_ORACLE_SUBSETS {
            return Err(Error::capacity("face oracle subsets", MAX_ORACLE_SUBSETS, visited));
        }
        let hit = first_subset(n, size, |s| face_oracle(v, &bits_to_indices(s)).map(|face| !face))?;
        if let Some(s) = hit {
            return Ok(NeighborlinessCertificate {
                method: Method::HullOracle,
                k_max: size - 1,
                failing_witness: Some(bits_to_indices(s)),
                conditional: false,
                spanning_tree: Some(v.tree_arrows.clone()),
            });
        }
    }
    Err(Error::Integrity("the full point set spans a proper face".into()))
}
