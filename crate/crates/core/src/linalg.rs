//! Exact dense linear algebra: rank and square solves.

use num_rational::BigRational;

use crate::field::{ExactField, SmallRational};

/// Row-reduces in place and returns the rank, or `None` on overflow.
fn reduce<F: ExactField>(m: &mut [Vec<F>]) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].eq_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..rows {
            if r == rank || m[r][c].eq_zero() {
                continue;
            }
            let factor = m[r][c].div(&pivot)?;
            for k in c..cols {
                let delta = factor.mul(&m[rank][k])?;
                m[r][k] = m[r][k].sub(&delta)?;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

pub fn rank_of<F: ExactField>(rows: &[Vec<F>]) -> Option<usize> {
    reduce(&mut rows.to_vec())
}

pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let small: Vec<Vec<SmallRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| SmallRational::from_i64(x)).collect())
        .collect();
    if let Some(r) = rank_of(&small) {
        return r;
    }
    let big: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_i64(x)).collect())
        .collect();
    rank_of(&big).expect("big rationals do not overflow")
}

/// Solves the square system `a x = b`. Outer `None` is overflow, inner `None`
/// means `a` is singular.
pub fn solve<F: ExactField>(a: &[Vec<F>], b: &[F]) -> Option<Option<Vec<F>>> {
    let n = a.len();
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].eq_zero()) else {
            return Some(None);
        };
        m.swap(c, p);
        let pivot = m[c][c].clone();
        for k in c..=n {
            m[c][k] = m[c][k].div(&pivot)?;
        }
        for r in 0..n {
            if r == c || m[r][c].eq_zero() {
                continue;
            }
            let factor = m[r][c].clone();
            for k in c..=n {
                let delta = factor.mul(&m[c][k])?;
                m[r][k] = m[r][k].sub(&delta)?;
            }
        }
    }
    Some(Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect()))
}
