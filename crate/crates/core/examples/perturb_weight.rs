//! Q_{2,2} has a non-generic canonical weight. Find the nearest generic weight
//! in the search order and confirm it.

use quiverpoly::stability::{is_generic, perturb_to_generic, GenericityMode, Limits, PerturbOptions};
use quiverpoly::{canonical_weight, Quiver};

fn main() -> quiverpoly::Result<()> {
    let q = Quiver::bipartite(2, 2)?;
    let delta = canonical_weight(&q);
    let before = is_generic(&q, &delta, GenericityMode::Exhaustive)?;
    println!("delta = {delta}, generic: {}, zero-sum set {:?}", before.generic, before.zero_sum_set.map(|v| v.vertices()));

    let theta = perturb_to_generic(&q, &delta, &Limits::default(), &PerturbOptions::default())?;
    let after = is_generic(&q, &theta, GenericityMode::Exhaustive)?;
    println!("theta = {theta}, generic: {}, l1 distance {}", after.generic, theta.l1_distance(&delta));
    Ok(())
}
