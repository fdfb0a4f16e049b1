//! Maximal neighborliness by the three independent methods: stable
//! subquivers, unstable codimension, and direct face queries on the points.
//!
//! ```text
//! cargo run --release --example neighborliness -- 3 4
//! ```

use quiverpoly::polytope::{
    dual_vertices, max_neighborliness_hull, max_neighborliness_jow, max_neighborliness_subquiver,
};
use quiverpoly::stability::Limits;
use quiverpoly::{canonical_weight, CycleBasis, Quiver};

fn main() -> quiverpoly::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("side sizes are integers"));
    let (p, q) = (args.next().unwrap_or(3), args.next().unwrap_or(4));
    let quiver = Quiver::bipartite(p, q)?;
    let delta = canonical_weight(&quiver);
    let limits = Limits::default();

    let points = dual_vertices(&quiver, &CycleBasis::new(&quiver, None)?)?;
    let certificates = [
        max_neighborliness_subquiver(&quiver, &delta, &limits)?,
        max_neighborliness_jow(&quiver, &delta, &limits)?,
        max_neighborliness_hull(&points)?,
    ];
    for c in &certificates {
        println!("{:<16} k_max = {}  witness {:?}", format!("{:?}", c.method), c.k_max, c.failing_witness);
    }
    let k = certificates[0].k_max;
    assert!(certificates.iter().all(|c| c.k_max == k), "methods disagree");
    println!("\nQ_{p},{q} is {k}-neighborly and not {}-neighborly", k + 1);
    Ok(())
}
