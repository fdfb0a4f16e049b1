//! Nonnegative sparse recovery with the vertex matrix as sensing matrix:
//! every support of size at most `k` gets one random signal, recovered by exact
//! L1 minimization and checked for uniqueness.
//!
//! ```text
//! cargo run --release --example sensing_sweep -- 3 4 2
//! ```

use quiverpoly::sensing::{build_sensing_matrix, recovery_sweep, SweepOptions};
use quiverpoly::stability::Limits;
use quiverpoly::{CycleBasis, Quiver};

fn main() -> quiverpoly::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (p, q, k) = match args[..] {
        [p, q, k] => (p, q, k),
        _ => (3, 4, 2),
    };
    let quiver = Quiver::bipartite(p, q)?;
    let a = build_sensing_matrix(&quiver, &CycleBasis::new(&quiver, None)?, &Limits::default())?;
    println!("A is {} x {}, density {:.3}", a.rows, a.columns, a.density());

    let report = recovery_sweep(&a, k, &SweepOptions::default())?;
    println!(
        "k = {k}: {}/{} supports recovered uniquely, max pivots {}",
        report.successes, report.supports, report.max_pivots
    );
    for bad in report.failures().take(5) {
        println!("  failed on support {:?} (recovered {}, unique {})", bad.support, bad.recovered, bad.unique);
    }
    Ok(())
}
