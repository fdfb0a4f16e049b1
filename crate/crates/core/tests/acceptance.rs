//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_rational::BigRational;
use quiverpoly::linalg::rank_i64;
use quiverpoly::polytope::{
    dual_vertices, face_oracle, facet_presentation, f_vector_oracle, hull_facets,
    max_neighborliness_hull, max_neighborliness_jow, max_neighborliness_subquiver,
};
use quiverpoly::quiver::{edge_connectivity, validate};
use quiverpoly::sensing::{build_sensing_matrix, recovery_sweep, SweepOptions};
use quiverpoly::stability::{
    perturb_to_generic, stability, successor_closed_sets, GenericityMode, Limits, PerturbOptions,
    StabilityOracle, Status, SubquiverMask,
};
use quiverpoly::{canonical_weight, incidence, CycleBasis, Quiver, Weight};

const SUITE: [(usize, usize); 5] = [(2, 3), (3, 4), (2, 5), (3, 5), (4, 5)];

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn bip(p: usize, q: usize) -> (Quiver, Weight) {
    let quiver = Quiver::bipartite(p, q).unwrap();
    let delta = canonical_weight(&quiver);
    (quiver, delta)
}

fn err(e: quiverpoly::Error) -> String {
    e.to_string()
}

fn criterion_1() -> Check {
    let limits = Limits::default();
    let mut summary = Vec::new();
    for (p, s) in SUITE {
        let (q, d) = bip(p, s);
        let oracle = StabilityOracle::new(&q, &d, &limits).map_err(err)?;
        ensure(oracle.is_generic(GenericityMode::Exhaustive).generic, || format!("Q_{p},{s}: δ not generic"))?;
        ensure(oracle.tightness().tight, || format!("Q_{p},{s}: not tight"))?;
        let v = dual_vertices(&q, &CycleBasis::new(&q, None).map_err(err)?).map_err(err)?;
        let dim = p * s - p - s + 1;
        ensure(v.dimension == dim && rank_i64(&v.points) == dim, || {
            format!("Q_{p},{s}: dimension {} expected {dim}", v.dimension)
        })?;
        ensure(v.len() == p * s, || format!("Q_{p},{s}: {} vertices", v.len()))?;
        let expected = p.min(s) - 1;
        for cert in [
            max_neighborliness_subquiver(&q, &d, &limits).map_err(err)?,
            max_neighborliness_jow(&q, &d, &limits).map_err(err)?,
        ] {
            ensure(cert.k_max == expected, || {
                format!("Q_{p},{s}: {:?} gives k_max {} expected {expected}", cert.method, cert.k_max)
            })?;
            let witness = cert.failing_witness.clone().unwrap_or_default();
            let verdict = stability(&q, SubquiverMask::without(q.arrow_count(), &witness), &d).map_err(err)?;
            ensure(witness.len() == expected + 1 && verdict.status != Status::Stable, || {
                format!("Q_{p},{s}: {:?} witness {witness:?} does not fail", cert.method)
            })?;
        }
        summary.push(format!("Q_{p},{s}:k={expected}"));
    }
    Ok(summary.join(" "))
}

fn criterion_2() -> Check {
    let limits = Limits::default();
    for (p, s) in SUITE {
        let (q, d) = bip(p, s);
        let sub = max_neighborliness_subquiver(&q, &d, &limits).map_err(err)?.k_max;
        let jow = max_neighborliness_jow(&q, &d, &limits).map_err(err)?.k_max;
        let codim = StabilityOracle::new(&q, &d, &limits)
            .and_then(|o| o.unstable_codim(&limits))
            .map_err(err)?
            .codim;
        ensure(sub == jow && jow + 1 == codim, || {
            format!("Q_{p},{s}: subquiver {sub}, jow {jow}, codim {codim}")
        })?;
    }
    let mut counts = Vec::new();
    for (p, s) in [(2, 3), (3, 4)] {
        let (q, d) = bip(p, s);
        let k = max_neighborliness_subquiver(&q, &d, &limits).map_err(err)?.k_max;
        let v = dual_vertices(&q, &CycleBasis::new(&q, None).map_err(err)?).map_err(err)?;
        let n = v.len();
        let f = f_vector_oracle(&v, k + 1).map_err(err)?;
        for l in 1..=k {
            ensure(f[l - 1] == binom(n, l), || format!("Q_{p},{s}: count({l}) = {} < C({n},{l})", f[l - 1]))?;
        }
        ensure(f[k] < binom(n, k + 1), || format!("Q_{p},{s}: every {}-subset spans a face", k + 1))?;
        let hull = max_neighborliness_hull(&v).map_err(err)?.k_max;
        ensure(hull == k, || format!("Q_{p},{s}: hull oracle k_max {hull}"))?;
        counts.push(format!("Q_{p},{s}:{f:?}"));
    }
    Ok(counts.join(" "))
}

fn criterion_3() -> Check {
    let limits = Limits::default();
    let mut quivers: Vec<(String, Quiver)> = SUITE
        .iter()
        .map(|&(p, s)| (format!("Q_{p},{s}"), Quiver::bipartite(p, s).unwrap()))
        .collect();
    quivers.push(("K_2,3,5".into(), Quiver::multipartite(&[2, 3, 5]).unwrap()));
    let mut summary = Vec::new();
    for (name, q) in quivers {
        let d = canonical_weight(&q);
        let theta = perturb_to_generic(&q, &d, &limits, &PerturbOptions::default()).map_err(err)?;
        let r = edge_connectivity(&q);
        let k = max_neighborliness_subquiver(&q, &theta, &limits).map_err(err)?.k_max;
        ensure(k as i64 >= (r / 2) as i64 - 1, || format!("{name}: k_max {k} below bound for r = {r}"))?;
        summary.push(format!("{name}:r={r},k={k}"));
    }
    Ok(summary.join(" "))
}

fn criterion_4() -> Check {
    let mut summary = Vec::new();
    for (p, s) in SUITE {
        let q = Quiver::bipartite(p, s).unwrap();
        let basis = CycleBasis::new(&q, None).map_err(err)?;
        let v = dual_vertices(&q, &basis).map_err(err)?;
        let facets = facet_presentation(&q, &basis).map_err(err)?;
        ensure(v.entries_in_unit_range(), || format!("Q_{p},{s}: entry outside -1..=1"))?;
        let mut sorted = v.points.clone();
        sorted.sort();
        sorted.dedup();
        ensure(sorted.len() == v.len(), || format!("Q_{p},{s}: repeated rows"))?;
        ensure(rank_i64(&v.points) == v.dimension, || format!("Q_{p},{s}: rank deficient"))?;
        ensure(facets.matrix == v.points && !facets.not_tight, || format!("Q_{p},{s}: facet rows differ"))?;
        for i in 0..v.len() {
            ensure(face_oracle(&v, &[i]).map_err(err)?, || format!("Q_{p},{s}: point {i} is not a vertex"))?;
        }
        let hull = hull_facets(&v).map_err(err)?;
        ensure(hull.is_integral(), || format!("Q_{p},{s}: non-integral facet normal"))?;
        ensure(hull.rows_are_facets(v.dimension), || format!("Q_{p},{s}: a row is not a recovered facet"))?;
        summary.push(format!("Q_{p},{s}:{}", hull.normals.len()));
    }
    Ok(format!("polar vertex counts {}", summary.join(" ")))
}

fn criterion_5() -> Check {
    let limits = Limits::default();
    let (q, d) = bip(2, 2);
    let report = StabilityOracle::new(&q, &d, &limits).map_err(err)?.is_generic(GenericityMode::Exhaustive);
    ensure(!report.generic, || "Q_2,2: δ reported generic".into())?;
    let mask = report.witness.ok_or("no witness mask")?;
    let verdict = stability(&q, mask, &d).map_err(err)?;
    ensure(verdict.status == Status::StrictlySemistable, || format!("witness {mask:?} is {:?}", verdict.status))?;
    ensure(naive_nongeneric_mask(&q, &d).is_some(), || "mask scan finds no witness".into())?;

    let theta = perturb_to_generic(&q, &d, &limits, &PerturbOptions::default()).map_err(err)?;
    let dist = theta.l1_distance(&d);
    ensure(dist < BigRational::from_integer(1.into()), || format!("distance {dist}"))?;
    let generic = StabilityOracle::new(&q, &theta, &limits).map_err(err)?.is_generic(GenericityMode::Exhaustive).generic;
    ensure(generic && naive_nongeneric_mask(&q, &theta).is_none(), || format!("{theta} is not generic"))?;
    Ok(format!("witness kept arrows {:?}, theta {theta}, l1 {dist}", mask.kept()))
}

fn criterion_6() -> Check {
    let mut summary = Vec::new();
    for (p, s, k, supports) in [(3, 4, 2, 78u128), (4, 5, 3, 1350)] {
        let q = Quiver::bipartite(p, s).unwrap();
        let a = build_sensing_matrix(&q, &CycleBasis::new(&q, None).map_err(err)?, &Limits::default()).map_err(err)?;
        let opts = SweepOptions::default();
        let r = recovery_sweep(&a, k, &opts).map_err(err)?;
        ensure(r.supports == supports && r.instances.len() as u128 == supports, || {
            format!("Q_{p},{s}: {} supports", r.supports)
        })?;
        if let Some(bad) = r.failures().next() {
            return Err(format!("Q_{p},{s}: {}", serde_json::to_string(bad).unwrap()));
        }
        ensure(r.max_pivots <= opts.solver.max_pivots, || "pivot cap exceeded".into())?;
        summary.push(format!("Q_{p},{s} k={k}: {}/{} rate {}", r.successes, supports, r.success_rate));
    }
    Ok(summary.join("; "))
}

fn criterion_7() -> Check {
    let limits = Limits::default();
    let mut tight_checked = 0;
    for seed in 0..50u64 {
        let q = random_quiver(seed, 8, 14);
        let diag = validate(&q);
        ensure(diag.connected && diag.acyclic, || format!("seed {seed}: generator broke"))?;
        let m = q.arrow_count();
        let basis = CycleBasis::new(&q, None).map_err(err)?;
        let rows: Vec<Vec<i64>> = basis.circulations().iter().map(|c| c.values().to_vec()).collect();
        ensure(rank_i64(&rows) == m + 1 - q.vertex_count(), || format!("seed {seed}: basis rank"))?;
        for c in basis.circulations() {
            let f: Vec<BigRational> = c.values().iter().map(|&x| BigRational::from_integer(x.into())).collect();
            ensure(incidence(&q, &f).map_err(err)?.is_zero(), || format!("seed {seed}: circulation not in kernel"))?;
        }
        for mask in [0u64, (1 << m) - 1, seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) & ((1 << m) - 1)] {
            let got: Vec<u32> = successor_closed_sets(&q, SubquiverMask::from_bits(mask as u128, m))
                .map_err(err)?
                .into_iter()
                .map(|v| v.0)
                .collect();
            ensure(got == closed_sets(&q, &kept_from_mask(m, mask)), || format!("seed {seed}: closed sets differ"))?;
        }
        let d = canonical_weight(&q);
        let oracle = StabilityOracle::new(&q, &d, &limits).map_err(err)?;
        let fast = oracle.is_generic(GenericityMode::Fast).generic;
        let exhaustive = oracle.is_generic(GenericityMode::Exhaustive).generic;
        ensure(!fast || exhaustive, || format!("seed {seed}: fast generic but not exhaustive"))?;
        let codim = oracle.unstable_codim(&limits).map_err(err)?.codim;
        if exhaustive && codim >= 2 {
            tight_checked += 1;
            ensure(oracle.tightness().tight, || format!("seed {seed}: generic, codim {codim}, not tight"))?;
        }
    }
    Ok(format!("50 quivers, {tight_checked} generic with codim >= 2"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 bipartite suite", criterion_1, Duration::from_secs(300)),
        ("2 method agreement", criterion_2, Duration::from_secs(600)),
        ("3 edge-connectivity bound", criterion_3, Duration::from_secs(600)),
        ("4 vertex matrix and reflexive hull", criterion_4, Duration::from_secs(600)),
        ("5 non-generic detection and perturbation", criterion_5, Duration::from_secs(60)),
        ("6 compressed sensing sweeps", criterion_6, Duration::from_secs(1800)),
        ("7 random quiver properties", criterion_7, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail} (took {elapsed:.1?}, budget {budget:?})")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {name} [{elapsed:.2?}]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} [{elapsed:.2?}]: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
