//! Dual vertices and facet inequalities of the flow polytope of a complete
//! bipartite quiver.
//!
//! ```text
//! cargo run --example bipartite_vertices -- 2 3
//! ```

use quiverpoly::polytope::{dual_vertices, facet_presentation};
use quiverpoly::{CycleBasis, Quiver};

fn main() -> quiverpoly::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("side sizes are integers"));
    let (p, q) = (args.next().unwrap_or(2), args.next().unwrap_or(3));

    let quiver = Quiver::bipartite(p, q)?;
    let basis = CycleBasis::new(&quiver, None)?;
    println!("Q_{p},{q}: {} vertices, {} arrows", quiver.vertex_count(), quiver.arrow_count());
    println!("spanning tree arrows {:?}", basis.tree_arrows());

    for (b, f) in basis.non_tree_arrows().iter().zip(basis.circulations()) {
        println!("circulation through arrow {b:>2}: {:?}", f.values());
    }

    let v = dual_vertices(&quiver, &basis)?;
    println!("\n{} dual vertices in dimension {}", v.len(), v.dimension);
    for (i, point) in v.points.iter().enumerate() {
        let a = quiver.arrow(i);
        println!("  arrow {i:>2} ({} -> {}): {point:?}", a.tail, a.head);
    }

    let facets = facet_presentation(&quiver, &basis)?;
    println!("\nflow polytope = {{ x : A x <= 1 }} with A =");
    print!("{}", facets.to_csv());
    Ok(())
}
