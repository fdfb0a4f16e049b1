//! Dual-polytope vertices as a measurement matrix, and exact recovery of
//! nonnegative sparse vectors by minimizing `Σ x` subject to `A x = y`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{InfeasibilityCertificate, LinearProgram, LpOutcome, SolverOptions};
use crate::polytope::{dual_vertices, matrix_csv};
use crate::quiver::{CycleBasis, Quiver};
use crate::stability::{binomial, Combinations, GenericityMode, Limits, StabilityOracle};
use crate::weight::{canonical_weight, rational, rational_pair};

/// Denominator of the sampled coefficients; numerators are drawn from
/// `1..=100`.
pub const COEFFICIENT_DENOMINATOR: i64 = 7;

/// `d × n` matrix whose column `j` is the dual vertex of arrow `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SensingMatrix {
    pub rows: usize,
    pub columns: usize,
    /// Row-major entries.
    pub entries: Vec<Vec<i64>>,
    pub tree_arrows: Vec<usize>,
}

impl SensingMatrix {
    pub fn column(&self, j: usize) -> Vec<i64> {
        self.entries.iter().map(|r| r[j]).collect()
    }

    pub fn nonzeros(&self) -> usize {
        self.entries.iter().flatten().filter(|&&x| x != 0).count()
    }

    /// Fraction of nonzero entries.
    pub fn density(&self) -> f64 {
        if self.rows * self.columns == 0 {
            return 0.0;
        }
        self.nonzeros() as f64 / (self.rows * self.columns) as f64
    }

    pub fn to_csv(&self) -> String {
        matrix_csv(&self.entries)
    }

    /// `A x` in exact arithmetic.
    pub fn apply(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.entries
            .iter()
            .map(|r| {
                r.iter()
                    .zip(x)
                    .filter(|(a, _)| **a != 0)
                    .map(|(&a, xi)| rational(a) * xi)
                    .sum()
            })
            .collect()
    }

    fn big_rows(&self) -> Vec<Vec<BigRational>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&a| rational(a)).collect())
            .collect()
    }
}

/// Refuses unless `δ` is generic and `(Q, δ)` is tight, since recovery is
/// only guaranteed then.
pub fn build_sensing_matrix(q: &Quiver, basis: &CycleBasis, limits: &Limits) -> Result<SensingMatrix> {
    let delta = canonical_weight(q);
    let oracle = StabilityOracle::new(q, &delta, limits)?;
    let generic = oracle.is_generic(GenericityMode::Exhaustive);
    if !generic.generic {
        return Err(Error::Refused(format!(
            "canonical weight {delta} is not generic (strictly semistable subquiver {:?})",
            generic.witness.map(|m| m.kept()).unwrap_or_default()
        )));
    }
    let tight = oracle.tightness();
    if !tight.tight {
        return Err(Error::Refused(format!(
            "(Q, δ) is not tight: removing arrow {} is not stable",
            tight.offending_arrow.unwrap_or_default()
        )));
    }
    let v = dual_vertices(q, basis)?;
    let entries = (0..v.dimension)
        .map(|i| v.points.iter().map(|p| p[i]).collect())
        .collect();
    Ok(SensingMatrix {
        rows: v.dimension,
        columns: v.len(),
        entries,
        tree_arrows: v.tree_arrows,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum L1Outcome {
    Optimal {
        x: Vec<BigRational>,
        value: BigRational,
        pivots: usize,
    },
    Infeasible(InfeasibilityCertificate),
}

/// `min Σ x` subject to `A x = y`, `x >= 0`.
pub fn lp_min_l1_nonneg(a: &SensingMatrix, y: &[BigRational], opts: SolverOptions) -> Result<L1Outcome> {
    if y.len() != a.rows {
        return Err(Error::Dimension {
            expected: a.rows,
            found: y.len(),
        });
    }
    let lp = LinearProgram::new(a.big_rows(), y.to_vec(), vec![rational(1); a.columns])?;
    match lp.solve(opts)? {
        LpOutcome::Optimal(s) => Ok(L1Outcome::Optimal {
            x: s.x,
            value: s.value,
            pivots: s.pivots,
        }),
        LpOutcome::Infeasible(cert) => Ok(L1Outcome::Infeasible(cert)),
        LpOutcome::Unbounded => Err(Error::Integrity("Σ x >= 0 cannot be unbounded".into())),
    }
}

/// Whether `{x >= 0 : A x = y, Σ x = value}` is a single point, by bounding
/// every coordinate from above and below. Returns the pivots spent as well.
pub fn check_unique(a: &SensingMatrix, y: &[BigRational], value: &BigRational, opts: SolverOptions) -> Result<(bool, usize)> {
    let n = a.columns;
    let mut rows = a.big_rows();
    rows.push(vec![rational(1); n]);
    let mut rhs = y.to_vec();
    rhs.push(value.clone());
    let mut pivots = 0;
    for j in 0..n {
        let mut c = unit(n, j);
        c[j] = rational(-1);
        let lp = LinearProgram::new(rows.clone(), rhs.clone(), c)?;
        let hi = match lp.solve(opts)? {
            LpOutcome::Optimal(s) => {
                pivots += s.pivots;
                -s.value
            }
            LpOutcome::Infeasible(_) => {
                return Err(Error::Integrity("optimal face is empty".into()));
            }
            LpOutcome::Unbounded => {
                return Err(Error::Integrity("optimal face is unbounded".into()));
            }
        };
        if hi.is_zero() {
            continue;
        }
        let lp = LinearProgram::new(rows.clone(), rhs.clone(), unit(n, j))?;
        let lo = match lp.solve(opts)? {
            LpOutcome::Optimal(s) => {
                pivots += s.pivots;
                s.value
            }
            _ => return Err(Error::Integrity("optimal face changed between solves".into())),
        };
        if lo != hi {
            return Ok((false, pivots));
        }
    }
    Ok((true, pivots))
}

fn unit(n: usize, j: usize) -> Vec<BigRational> {
    let mut c = vec![rational(0); n];
    c[j] = rational(1);
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub trials_per_support: usize,
    pub seed: u64,
    pub solver: SolverOptions,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            trials_per_support: 1,
            seed: 0,
            solver: SolverOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceOutcome {
    pub support: Vec<usize>,
    pub trial: usize,
    #[serde(serialize_with = "pairs")]
    pub coefficients: Vec<BigRational>,
    pub recovered: bool,
    pub unique: bool,
    pub pivots: usize,
}

fn pairs<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&Pair(x))?;
    }
    seq.end()
}

struct Pair<'a>(&'a BigRational);

impl Serialize for Pair<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational_pair::serialize(self.0, s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecoveryReport {
    pub rows: usize,
    pub columns: usize,
    pub k: usize,
    pub trials_per_support: usize,
    pub seed: u64,
    pub supports: u128,
    pub instances: Vec<InstanceOutcome>,
    pub successes: usize,
    pub success_rate: f64,
    pub max_pivots: usize,
}

impl RecoveryReport {
    pub fn failures(&self) -> impl Iterator<Item = &InstanceOutcome> {
        self.instances.iter().filter(|i| !(i.recovered && i.unique))
    }
}

/// The coefficients for instance number `index` of a sweep: one ChaCha8
/// stream per instance, so any instance can be regenerated on its own.
pub fn sample_coefficients(seed: u64, index: u64, len: usize) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    (0..len)
        .map(|_| BigRational::new(rng.gen_range(1..=100i64).into(), COEFFICIENT_DENOMINATOR.into()))
        .collect()
}

/// Recovers `x*` for every support of size `1..=k`, each with
/// `trials_per_support` coefficient draws. Instances run in parallel and are
/// reported in support order (by size, then colex).
pub fn recovery_sweep(a: &SensingMatrix, k: usize, opts: &SweepOptions) -> Result<RecoveryReport> {
    let n = a.columns;
    let supports: u128 = (1..=k).map(|l| binomial(n, l)).sum();
    let jobs: Vec<(Vec<usize>, usize)> = (1..=k.min(n))
        .flat_map(|l| Combinations::new(n, l))
        .flat_map(|bits| {
            let support: Vec<usize> = (0..n).filter(|&i| bits & (1u128 << i) != 0).collect();
            (0..opts.trials_per_support).map(move |t| (support.clone(), t))
        })
        .collect();

    let instances = jobs
        .par_iter()
        .enumerate()
        .map(|(index, (support, trial))| {
            let coefficients = sample_coefficients(opts.seed, index as u64, support.len());
            recover_one(a, support, *trial, coefficients, opts.solver)
        })
        .collect::<Result<Vec<_>>>()?;

    let successes = instances.iter().filter(|i| i.recovered && i.unique).count();
    let success_rate = if instances.is_empty() {
        1.0
    } else {
        successes as f64 / instances.len() as f64
    };
    Ok(RecoveryReport {
        rows: a.rows,
        columns: n,
        k,
        trials_per_support: opts.trials_per_support,
        seed: opts.seed,
        supports,
        max_pivots: instances.iter().map(|i| i.pivots).max().unwrap_or(0),
        instances,
        successes,
        success_rate,
    })
}

fn recover_one(
    a: &SensingMatrix,
    support: &[usize],
    trial: usize,
    coefficients: Vec<BigRational>,
    solver: SolverOptions,
) -> Result<InstanceOutcome> {
    let mut x_star = vec![rational(0); a.columns];
    for (&j, c) in support.iter().zip(&coefficients) {
        x_star[j] = c.clone();
    }
    let y = a.apply(&x_star);
    let (x, value, pivots) = match lp_min_l1_nonneg(a, &y, solver)? {
        L1Outcome::Optimal { x, value, pivots } => (x, value, pivots),
        L1Outcome::Infeasible(_) => {
            return Err(Error::Integrity("a measured vector was reported infeasible".into()));
        }
    };
    debug_assert!(!value.is_negative());
    let recovered = x == x_star;
    let (unique, extra) = check_unique(a, &y, &value, solver)?;
    Ok(InstanceOutcome {
        support: support.to_vec(),
        trial,
        coefficients,
        recovered,
        unique,
        pivots: pivots + extra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(p: usize, q: usize) -> SensingMatrix {
        let quiver = Quiver::bipartite(p, q).unwrap();
        let basis = CycleBasis::new(&quiver, None).unwrap();
        build_sensing_matrix(&quiver, &basis, &Limits::default()).unwrap()
    }

    #[test]
    fn shapes() {
        let a = matrix(3, 4);
        assert_eq!((a.rows, a.columns), (6, 12));
        assert!(a.entries.iter().flatten().all(|x| (-1..=1).contains(x)));
        let b = matrix(2, 3);
        assert_eq!((b.rows, b.columns), (2, 6));
        assert_eq!(b.column(0), vec![-1, -1]);
        assert!(a.density() <= 1.0 && a.density() > 0.0);
    }

    #[test]
    fn refuses_non_generic() {
        let q = Quiver::bipartite(2, 2).unwrap();
        let basis = CycleBasis::new(&q, None).unwrap();
        assert!(matches!(
            build_sensing_matrix(&q, &basis, &Limits::default()),
            Err(Error::Refused(_))
        ));
    }

    #[test]
    fn zero_measurement() {
        let a = matrix(2, 3);
        let y = vec![rational(0); 2];
        let L1Outcome::Optimal { x, value, .. } = lp_min_l1_nonneg(&a, &y, SolverOptions::default()).unwrap() else {
            panic!("expected optimum");
        };
        assert!(value.is_zero());
        assert!(x.iter().all(Zero::is_zero));
        assert!(check_unique(&a, &y, &value, SolverOptions::default()).unwrap().0);
    }

    #[test]
    fn scaled_column() {
        let a = matrix(3, 4);
        let c = BigRational::new(5.into(), 3.into());
        let y: Vec<BigRational> = a.column(4).iter().map(|&v| rational(v) * &c).collect();
        let L1Outcome::Optimal { x, value, .. } = lp_min_l1_nonneg(&a, &y, SolverOptions::default()).unwrap() else {
            panic!("expected optimum");
        };
        assert_eq!(value, c);
        assert_eq!(x[4], c);
    }

    #[test]
    fn deterministic_coefficients() {
        let a = sample_coefficients(3, 11, 4);
        assert_eq!(a, sample_coefficients(3, 11, 4));
        assert_ne!(a, sample_coefficients(3, 12, 4));
        for c in &a {
            assert_eq!(c.denom(), &7.into());
            assert!(*c > rational(0) && *c <= BigRational::new(100.into(), 7.into()));
        }
    }

    #[test]
    fn q23_one_sparse_sweep() {
        let r = recovery_sweep(&matrix(2, 3), 1, &SweepOptions::default()).unwrap();
        assert_eq!(r.instances.len(), 6);
        assert_eq!(r.success_rate, 1.0);
        assert_eq!(r.failures().count(), 0);
    }

    #[test]
    fn q34_two_sparse_sweep() {
        let r = recovery_sweep(&matrix(3, 4), 2, &SweepOptions::default()).unwrap();
        assert_eq!(r.supports, 78);
        assert_eq!(r.successes, 78);
    }

    #[test]
    fn sweep_is_reproducible() {
        let opts = SweepOptions {
            trials_per_support: 2,
            seed: 9,
            ..SweepOptions::default()
        };
        let a = recovery_sweep(&matrix(2, 3), 1, &opts).unwrap();
        let b = recovery_sweep(&matrix(2, 3), 1, &opts).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.instances.len(), 12);
    }
}
