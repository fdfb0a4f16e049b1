//! Recovers the facets of the hull of the dual vertices without using the
//! quiver, checks the polar is a lattice polytope, and counts low faces.

use quiverpoly::polytope::{dual_vertices, f_vector_oracle, hull_facets};
use quiverpoly::{CycleBasis, Quiver};

fn main() -> quiverpoly::Result<()> {
    for (p, q) in [(2, 3), (3, 4), (2, 5)] {
        let quiver = Quiver::bipartite(p, q)?;
        let v = dual_vertices(&quiver, &CycleBasis::new(&quiver, None)?)?;
        let hull = hull_facets(&v)?;
        let f = f_vector_oracle(&v, 2)?;
        println!(
            "Q_{p},{q}: {} points, {} facets of the hull, integral normals {}, rows are facets {}, f0..f1 {f:?}",
            v.len(),
            hull.normals.len(),
            hull.is_integral(),
            hull.rows_are_facets(v.dimension),
        );
    }
    Ok(())
}
