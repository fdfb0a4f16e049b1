//! Edge connectivity against certified neighborliness for complete
//! multipartite quivers.

use quiverpoly::polytope::max_neighborliness_subquiver;
use quiverpoly::quiver::edge_connectivity;
use quiverpoly::report::EdgeConnectivityCheck;
use quiverpoly::stability::{perturb_to_generic, Limits, PerturbOptions};
use quiverpoly::{canonical_weight, Quiver};

fn main() -> quiverpoly::Result<()> {
    let limits = Limits::default();
    println!("{:<16} {:>3} {:>6} {:>6} {:>5}", "parts", "r", "bound", "k_max", "ok");
    for parts in [&[2, 3][..], &[3, 4], &[1, 2, 3], &[2, 2, 2], &[2, 3, 5], &[1, 1, 1, 1, 1]] {
        let q = Quiver::multipartite(parts)?;
        let theta = perturb_to_generic(&q, &canonical_weight(&q), &limits, &PerturbOptions::default())?;
        let k = max_neighborliness_subquiver(&q, &theta, &limits)?.k_max;
        let check = EdgeConnectivityCheck::new(edge_connectivity(&q), k);
        println!("{:<16} {:>3} {:>6} {:>6} {:>5}", format!("{parts:?}"), check.r, check.bound, k, check.ok);
    }
    Ok(())
}
