//! The exact simplex solver on its own: an optimal problem and an infeasible
//! one with its Farkas certificate.

use num_rational::BigRational;
use quiverpoly::lp::{LinearProgram, LpOutcome, SolverOptions};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() -> quiverpoly::Result<()> {
    // min x0 + 2 x1 + 3 x2  s.t.  x0 + x1 + x2 = 1,  x0 - x2 = 1/3,  x >= 0
    let lp = LinearProgram::new(
        vec![vec![q(1, 1), q(1, 1), q(1, 1)], vec![q(1, 1), q(0, 1), q(-1, 1)]],
        vec![q(1, 1), q(1, 3)],
        vec![q(1, 1), q(2, 1), q(3, 1)],
    )?;
    match lp.solve(SolverOptions::default())? {
        LpOutcome::Optimal(s) => println!("optimal x = {:?}, value {} after {} pivots", s.x.iter().map(ToString::to_string).collect::<Vec<_>>(), s.value, s.pivots),
        other => println!("{other:?}"),
    }

    // x0 + x1 = -1 has no nonnegative solution.
    let infeasible = LinearProgram::new(vec![vec![q(1, 1), q(1, 1)]], vec![q(-1, 1)], vec![q(0, 1), q(0, 1)])?;
    if let LpOutcome::Infeasible(cert) = infeasible.solve(SolverOptions::default())? {
        println!("infeasible, multipliers {:?}, certificate checks: {}", cert.multipliers.iter().map(ToString::to_string).collect::<Vec<_>>(), cert.verify(&infeasible));
    }
    Ok(())
}
