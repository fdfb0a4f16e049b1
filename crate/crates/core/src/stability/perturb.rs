use num_rational::BigRational;

use super::{GenericityMode, Limits, StabilityOracle};
use crate::error::{Error, Result};
use crate::quiver::{validate, Quiver};
use crate::weight::{rational, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PerturbOptions {
    /// Largest denominator tried.
    pub max_denominator: i64,
    /// Total number of candidate weights tested before giving up.
    pub max_candidates: usize,
}

impl Default for PerturbOptions {
    fn default() -> Self {
        PerturbOptions {
            max_denominator: 101,
            max_candidates: 200_000,
        }
    }
}

/// Finds a generic weight within ℓ1 distance `< 1` of `base`.
///
/// Returns `base` itself when it is already generic. Otherwise tries
/// `base + c / N` for `N = 2|Q0|+1, 2|Q0|+3, ...` and integer vectors `c`
/// with `Σ c = 0` and `Σ |c| < N`, ordered by `Σ |c|` and then
/// lexicographically, and returns the first one that passes the exhaustive
/// genericity test.
pub fn perturb_to_generic(
    q: &Quiver,
    base: &Weight,
    limits: &Limits,
    opts: &PerturbOptions,
) -> Result<Weight> {
    let diag = validate(q);
    if !diag.connected {
        return Err(Error::Disconnected);
    }
    if !diag.acyclic {
        return Err(Error::Cyclic);
    }
    if StabilityOracle::new(q, base, limits)?
        .is_generic(GenericityMode::Exhaustive)
        .generic
    {
        return Ok(base.clone());
    }

    let n = q.vertex_count();
    let mut tried = 0usize;
    let mut denom = 2 * n as i64 + 1;
    while denom <= opts.max_denominator {
        let scale = BigRational::new(1.into(), denom.into());
        let mut norm = 2;
        while norm < denom {
            let mut found = None;
            let mut exhausted = false;
            for_each_offset(n, norm, &mut |c| {
                if tried >= opts.max_candidates {
                    exhausted = true;
                    return false;
                }
                tried += 1;
                let values = base
                    .values()
                    .iter()
                    .zip(c)
                    .map(|(b, &ci)| b + rational(ci) * &scale)
                    .collect();
                let theta = Weight::new(values).expect("offset sums to zero");
                match StabilityOracle::new(q, &theta, limits) {
                    Ok(oracle) if oracle.is_generic(GenericityMode::Exhaustive).generic => {
                        found = Some(Ok(theta));
                        false
                    }
                    Ok(_) => true,
                    Err(e) => {
                        found = Some(Err(e));
                        false
                    }
                }
            });
            if let Some(result) = found {
                return result;
            }
            if exhausted {
                return Err(Error::NotFound(format!(
                    "no generic weight after {tried} candidates (denominator {denom}, offset norm {norm})"
                )));
            }
            norm += 2;
        }
        denom += 2;
    }
    Err(Error::NotFound(format!(
        "no generic weight with denominator <= {} ({tried} candidates)",
        opts.max_denominator
    )))
}

/// Visits every integer vector of length `n` with `Σ c = 0` and
/// `Σ |c| = norm` in lexicographic order. The visitor returns `false` to stop.
fn for_each_offset(n: usize, norm: i64, visit: &mut dyn FnMut(&[i64]) -> bool) {
    fn go(
        c: &mut Vec<i64>,
        n: usize,
        remaining_abs: i64,
        running_sum: i64,
        visit: &mut dyn FnMut(&[i64]) -> bool,
    ) -> bool {
        if c.len() == n {
            if remaining_abs == 0 && running_sum == 0 {
                return visit(c);
            }
            return true;
        }
        let slots_left = (n - c.len() - 1) as i64;
        for v in -remaining_abs..=remaining_abs {
            let rest = remaining_abs - v.abs();
            let sum = running_sum + v;
            // The remaining entries must cancel `sum` using exactly `rest`.
            if sum.abs() > rest || (slots_left == 0 && (rest != 0 || sum != 0)) {
                continue;
            }
            c.push(v);
            let keep_going = go(c, n, rest, sum, visit);
            c.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
    go(&mut Vec::with_capacity(n), n, norm, 0, visit);
}
