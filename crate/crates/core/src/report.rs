//! One consolidated certificate for a quiver: structure, weight properties,
//! polytope size, neighborliness by two methods, and the two neighborliness
//! lower-bound comparisons.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{max_neighborliness_jow, max_neighborliness_subquiver, NeighborlinessCertificate};
use crate::quiver::{edge_connectivity, validate, CycleBasis, Quiver};
use crate::stability::{
    perturb_to_generic, CodimCertificate, GenericityMode, GenericityReport, Limits, PerturbOptions,
    StabilityOracle, TightnessReport,
};
use crate::weight::{canonical_weight, rational_pair, Weight};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    pub limits: Limits,
    pub tree_seed: Option<u64>,
    pub perturb: PerturbOptions,
}

/// `k_max >= ⌊r/2⌋ − 1`, with the stronger `k_max >= ⌊r/2⌋` reported but not
/// required.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeConnectivityCheck {
    pub r: usize,
    pub bound: i64,
    pub ok: bool,
    pub strong_bound: i64,
    pub strong_ok: bool,
}

impl EdgeConnectivityCheck {
    pub fn new(r: usize, k_max: usize) -> Self {
        let half = (r / 2) as i64;
        EdgeConnectivityCheck {
            r,
            bound: half - 1,
            ok: k_max as i64 >= half - 1,
            strong_bound: half,
            strong_ok: k_max as i64 >= half,
        }
    }
}

/// For `Q_{p,q}` with coprime sides, `k_max = min(p, q) − 1` exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteCheck {
    pub p: usize,
    pub q: usize,
    pub coprime: bool,
    pub expected: usize,
    /// `None` when the sides are not coprime.
    pub ok: Option<bool>,
}

impl BipartiteCheck {
    pub fn new(p: usize, q: usize, k_max: usize) -> Self {
        let coprime = p.gcd(&q) == 1;
        let expected = p.min(q).saturating_sub(1);
        BipartiteCheck {
            p,
            q,
            coprime,
            expected,
            ok: coprime.then_some(k_max == expected),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateReport {
    pub source: String,
    pub quiver_vertices: usize,
    pub quiver_arrows: usize,
    pub connected: bool,
    pub acyclic: bool,
    pub canonical_weight: Weight,
    pub r: usize,
    /// Dimension of the flow polytope, `|Q1| − |Q0| + 1`.
    pub dim: usize,
    /// Number of distinct dual vertices.
    pub vertices: usize,
    pub spanning_tree: Vec<usize>,
    /// Exhaustive genericity of the canonical weight.
    pub generic: bool,
    pub generic_fast: bool,
    pub genericity: GenericityReport,
    /// The weight the remaining checks use: `δ`, or a nearby generic weight.
    pub theta: Weight,
    pub perturbed: bool,
    #[serde(with = "rational_pair")]
    pub perturbation_l1: BigRational,
    pub tight: bool,
    pub tightness: TightnessReport,
    pub codim: CodimCertificate,
    pub k_max: usize,
    pub methods_agree: bool,
    pub neighborliness: Vec<NeighborlinessCertificate>,
    pub edge_bound: EdgeConnectivityCheck,
    pub edge_bound_ok: bool,
    pub bipartite_bound: Option<BipartiteCheck>,
    pub bipartite_bound_ok: Option<bool>,
    /// Some precondition (genericity of `δ`, tightness) failed.
    pub conditional: bool,
}

impl CertificateReport {
    /// Every asserted comparison holds.
    pub fn guarantees_hold(&self) -> bool {
        self.methods_agree && self.edge_bound_ok && self.bipartite_bound_ok != Some(false)
    }
}

/// Builds the report. `bipartite` gives the side sizes when the quiver came
/// from the bipartite generator.
pub fn certificate_report(
    q: &Quiver,
    source: &str,
    bipartite: Option<(usize, usize)>,
    opts: &ReportOptions,
) -> Result<CertificateReport> {
    let diag = validate(q);
    if !diag.connected {
        return Err(Error::Disconnected);
    }
    if !diag.acyclic {
        return Err(Error::Cyclic);
    }
    let limits = &opts.limits;
    let delta = canonical_weight(q);
    let r = edge_connectivity(q);
    let basis = CycleBasis::new(q, opts.tree_seed)?;
    let distinct: BTreeSet<Vec<i64>> = (0..q.arrow_count()).map(|a| basis.evaluation_row(a)).collect();

    let delta_oracle = StabilityOracle::new(q, &delta, limits)?;
    let genericity = delta_oracle.is_generic(GenericityMode::Exhaustive);
    let generic_fast = delta_oracle.is_generic(GenericityMode::Fast).generic;
    log::info!("canonical weight {delta}: generic {}", genericity.generic);

    let theta = if genericity.generic {
        delta.clone()
    } else {
        perturb_to_generic(q, &delta, limits, &opts.perturb)?
    };
    let perturbed = theta != delta;
    if perturbed {
        log::info!("using perturbed weight {theta}");
    }
    let oracle = StabilityOracle::new(q, &theta, limits)?;
    let tightness = oracle.tightness();
    let codim = oracle.unstable_codim(limits)?;
    let subquiver = max_neighborliness_subquiver(q, &theta, limits)?;
    let jow = max_neighborliness_jow(q, &theta, limits)?;
    let k_max = subquiver.k_max;
    let methods_agree = subquiver.k_max == jow.k_max && jow.k_max + 1 == codim.codim;

    let edge_bound = EdgeConnectivityCheck::new(r, k_max);
    let bipartite_bound = bipartite.map(|(p, s)| BipartiteCheck::new(p, s, k_max));
    let conditional = !genericity.generic || !tightness.tight;

    Ok(CertificateReport {
        source: source.to_string(),
        quiver_vertices: q.vertex_count(),
        quiver_arrows: q.arrow_count(),
        connected: diag.connected,
        acyclic: diag.acyclic,
        r,
        dim: basis.dimension(),
        vertices: distinct.len(),
        spanning_tree: basis.tree_arrows().to_vec(),
        generic: genericity.generic,
        generic_fast,
        genericity,
        perturbation_l1: theta.l1_distance(&delta),
        canonical_weight: delta,
        theta,
        perturbed,
        tight: tightness.tight,
        tightness,
        codim,
        k_max,
        methods_agree,
        neighborliness: vec![subquiver, jow],
        edge_bound_ok: edge_bound.ok,
        edge_bound,
        bipartite_bound_ok: bipartite_bound.as_ref().and_then(|c| c.ok),
        bipartite_bound,
        conditional,
    })
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "source          {}", self.source)?;
        writeln!(f, "quiver          {} vertices, {} arrows", self.quiver_vertices, self.quiver_arrows)?;
        writeln!(f, "canonical       {}", self.canonical_weight)?;
        writeln!(f, "edge conn. r    {}", self.r)?;
        writeln!(f, "polytope        dim {}, {} dual vertices", self.dim, self.vertices)?;
        writeln!(f, "generic         {} (fast test: {})", self.generic, self.generic_fast)?;
        if self.perturbed {
            writeln!(f, "theta           {} (l1 distance {})", self.theta, self.perturbation_l1)?;
        }
        writeln!(f, "tight           {}", self.tight)?;
        writeln!(f, "codim           {} via {:?}", self.codim.codim, self.codim.witness_removal)?;
        writeln!(f, "k_max           {} (methods agree: {})", self.k_max, self.methods_agree)?;
        writeln!(
            f,
            "edge bound      k_max >= {}: {} (k_max >= {}: {})",
            self.edge_bound.bound, self.edge_bound.ok, self.edge_bound.strong_bound, self.edge_bound.strong_ok
        )?;
        if let Some(t) = &self.bipartite_bound {
            match t.ok {
                Some(ok) => writeln!(f, "bipartite       k_max == {}: {ok}", t.expected)?,
                None => writeln!(f, "bipartite       sides {} and {} not coprime", t.p, t.q)?,
            }
        }
        writeln!(f, "conditional     {}", self.conditional)
    }
}
