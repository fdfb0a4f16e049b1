//! Successor-closed sets and King stability of every subquiver of Q_{2,2},
//! then the genericity verdict for the canonical weight.

use quiverpoly::stability::{
    is_generic, stability, successor_closed_sets, GenericityMode, Status, SubquiverMask,
};
use quiverpoly::{canonical_weight, Quiver};

fn main() -> quiverpoly::Result<()> {
    let q = Quiver::bipartite(2, 2)?;
    let delta = canonical_weight(&q);
    println!("canonical weight {delta}");

    let m = q.arrow_count();
    let mut tally = [0usize; 3];
    for bits in 0..1u128 << m {
        let mask = SubquiverMask::from_bits(bits, m);
        let closed: Vec<Vec<usize>> = successor_closed_sets(&q, mask)?.iter().map(|v| v.vertices()).collect();
        let verdict = stability(&q, mask, &delta)?;
        tally[verdict.status as usize] += 1;
        println!("kept {:<14} {:<20} closed {closed:?}", format!("{:?}", mask.kept()), format!("{:?}", verdict.status));
    }
    println!("\nstable {}, strictly semistable {}, unstable {}", tally[0], tally[1], tally[2]);

    let report = is_generic(&q, &delta, GenericityMode::Exhaustive)?;
    match report.witness {
        Some(w) => {
            let status = stability(&q, w, &delta)?.status;
            assert_eq!(status, Status::StrictlySemistable);
            println!("not generic: keeping arrows {:?} is strictly semistable", w.kept());
        }
        None => println!("generic"),
    }
    Ok(())
}
