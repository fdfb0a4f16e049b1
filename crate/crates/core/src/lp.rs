//! Exact two-phase simplex for `min c·x  s.t.  A x = b, x >= 0`.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, lowest-index
//! basic variable among tied leaving rows), so the method cannot cycle. The
//! tableau is first run in `i128` rationals and rerun in big rationals only
//! if an intermediate value overflows.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ExactField, SmallRational};

/// `min c·x` subject to `A x = b`, `x >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    pub a: Vec<Vec<BigRational>>,
    pub b: Vec<BigRational>,
    pub c: Vec<BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    pub max_pivots: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { max_pivots: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Solution {
    #[serde(skip)]
    pub x: Vec<BigRational>,
    #[serde(skip)]
    pub value: BigRational,
    pub pivots: usize,
}

/// Farkas multipliers `u` with `Aᵀu >= 0` and `b·u < 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct InfeasibilityCertificate {
    pub multipliers: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(Solution),
    Infeasible(InfeasibilityCertificate),
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<Solution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(a: Vec<Vec<BigRational>>, b: Vec<BigRational>, c: Vec<BigRational>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Dimension {
                expected: a.len(),
                found: b.len(),
            });
        }
        for row in &a {
            if row.len() != c.len() {
                return Err(Error::Dimension {
                    expected: c.len(),
                    found: row.len(),
                });
            }
        }
        Ok(LinearProgram { a, b, c })
    }

    pub fn variables(&self) -> usize {
        self.c.len()
    }

    pub fn solve(&self, opts: SolverOptions) -> Result<LpOutcome> {
        if let Some(out) = Tableau::<SmallRational>::run(self, opts)? {
            return Ok(out);
        }
        log::debug!("simplex overflowed i128, retrying with big rationals");
        Ok(Tableau::<BigRational>::run(self, opts)?.expect("big rationals do not overflow"))
    }
}

impl InfeasibilityCertificate {
    /// Checks the Farkas conditions against `lp`.
    pub fn verify(&self, lp: &LinearProgram) -> bool {
        let u = &self.multipliers;
        if u.len() != lp.b.len() {
            return false;
        }
        let ub: BigRational = u.iter().zip(&lp.b).map(|(x, y)| x * y).sum();
        if !Signed::is_negative(&ub) {
            return false;
        }
        (0..lp.variables()).all(|j| {
            let col: BigRational = u.iter().zip(&lp.a).map(|(x, row)| x * &row[j]).sum();
            !Signed::is_negative(&col)
        })
    }
}

struct Tableau<F> {
    rows: Vec<Vec<F>>,
    /// Reduced costs, one per column.
    cost: Vec<F>,
    basis: Vec<usize>,
    pivots: usize,
    max_pivots: usize,
}

/// `Ok(None)` signals arithmetic overflow in the chosen field.
type Step<T> = Result<Option<T>>;

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Some(v) => v,
            None => return Ok(None),
        }
    };
}

enum Phase {
    Optimal,
    Unbounded,
}

impl<F: ExactField> Tableau<F> {
    fn run(lp: &LinearProgram, opts: SolverOptions) -> Step<LpOutcome> {
        let m = lp.b.len();
        let n = lp.variables();
        let width = n + m + 1;
        let mut signs = Vec::with_capacity(m);
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            let flip = Signed::is_negative(&lp.b[i]);
            signs.push(flip);
            let mut row = Vec::with_capacity(width);
            for j in 0..n {
                let v = tri!(F::from_big(&lp.a[i][j]));
                row.push(if flip { v.neg() } else { v });
            }
            for k in 0..m {
                row.push(if k == i { F::one() } else { F::zero() });
            }
            let rhs = tri!(F::from_big(&lp.b[i]));
            row.push(if flip { rhs.neg() } else { rhs });
            rows.push(row);
        }
        // Phase one minimises the sum of the artificials; its reduced cost for
        // a structural column is minus the column sum.
        let mut cost = vec![F::zero(); width];
        for row in &rows {
            for j in 0..n {
                cost[j] = tri!(cost[j].sub(&row[j]));
            }
            cost[width - 1] = tri!(cost[width - 1].sub(&row[width - 1]));
        }
        let mut t = Tableau {
            rows,
            cost,
            basis: (n..n + m).collect(),
            pivots: 0,
            max_pivots: opts.max_pivots,
        };

        tri!(t.iterate(n + m)?);
        let infeasibility = t.cost[width - 1].neg();
        if infeasibility.gt_zero() {
            let multipliers = (0..m)
                .map(|i| {
                    // w_i = 1 - r_{n+i}; u = -D w.
                    let w = F::one().to_big() - t.cost[n + i].to_big();
                    if signs[i] {
                        w
                    } else {
                        -w
                    }
                })
                .collect();
            return Ok(Some(LpOutcome::Infeasible(InfeasibilityCertificate {
                multipliers,
            })));
        }

        // Drive zero-level artificials out of the basis; rows where that is
        // impossible are redundant and dropped.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= n {
                match (0..n).find(|&j| !t.rows[i][j].eq_zero()) {
                    Some(j) => {
                        tri!(t.pivot(i, j)?);
                        i += 1;
                    }
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }

        // Phase two reduced costs: r_j = c_j - Σ c_B(i) T[i][j].
        let costs: Vec<F> = tri!(lp.c.iter().map(F::from_big).collect::<Option<Vec<_>>>());
        let mut cost = vec![F::zero(); width];
        cost[..n].clone_from_slice(&costs);
        for (row, &bv) in t.rows.iter().zip(&t.basis) {
            let cb = &costs[bv];
            if cb.eq_zero() {
                continue;
            }
            for j in 0..width {
                if row[j].eq_zero() {
                    continue;
                }
                let d = tri!(cb.mul(&row[j]));
                cost[j] = tri!(cost[j].sub(&d));
            }
        }
        t.cost = cost;

        match tri!(t.iterate(n)?) {
            Phase::Unbounded => Ok(Some(LpOutcome::Unbounded)),
            Phase::Optimal => {
                let mut x = vec![<BigRational as Zero>::zero(); n];
                for (row, &bv) in t.rows.iter().zip(&t.basis) {
                    x[bv] = row[width - 1].to_big();
                }
                let value = x.iter().zip(&lp.c).map(|(xi, ci)| xi * ci).sum();
                Ok(Some(LpOutcome::Optimal(Solution {
                    x,
                    value,
                    pivots: t.pivots,
                })))
            }
        }
    }

    /// Bland's rule over columns `0..allowed`.
    fn iterate(&mut self, allowed: usize) -> Step<Phase> {
        let rhs = self.cost.len() - 1;
        loop {
            let Some(q) = (0..allowed).find(|&j| self.cost[j].lt_zero()) else {
                return Ok(Some(Phase::Optimal));
            };
            let mut best: Option<(usize, F)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[q].gt_zero() {
                    continue;
                }
                let ratio = tri!(row[rhs].div(&row[q]));
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((p, _)) = best else {
                return Ok(Some(Phase::Unbounded));
            };
            tri!(self.pivot(p, q)?);
        }
    }

    fn pivot(&mut self, p: usize, q: usize) -> Step<()> {
        self.pivots += 1;
        if self.pivots > self.max_pivots {
            return Err(Error::PivotLimit(self.max_pivots));
        }
        let width = self.cost.len();
        let pv = self.rows[p][q].clone();
        for k in 0..width {
            if !self.rows[p][k].eq_zero() {
                self.rows[p][k] = tri!(self.rows[p][k].div(&pv));
            }
        }
        let pivot_row = self.rows[p].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == p || row[q].eq_zero() {
                continue;
            }
            let f = row[q].clone();
            for k in 0..width {
                if pivot_row[k].eq_zero() {
                    continue;
                }
                let d = tri!(f.mul(&pivot_row[k]));
                row[k] = tri!(row[k].sub(&d));
            }
        }
        if !self.cost[q].eq_zero() {
            let f = self.cost[q].clone();
            for k in 0..width {
                if pivot_row[k].eq_zero() {
                    continue;
                }
                let d = tri!(f.mul(&pivot_row[k]));
                self.cost[k] = tri!(self.cost[k].sub(&d));
            }
        }
        self.basis[p] = q;
        Ok(Some(()))
    }
}
