//! Candidate vertices for growing a minimal two-point tetrahedron, and the
//! polytopes they produce.

use polyclass::growth::{boundary_triangulation, candidate_vertices, expand, WeightTables};
use polyclass::polytope::conv;

fn main() -> polyclass::Result<()> {
    let p = conv(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [5, 5, 8]]);
    let tables = WeightTables::bundled(3, 2)?;
    println!("{p}: {} boundary faces", boundary_triangulation(&p)?.len());
    let c = candidate_vertices(&p, &tables)?;
    println!("{} candidate vertices", c.len());
    let grown = expand(&p, &tables)?;
    println!(
        "{} extensions with at most two interior points",
        grown.len()
    );
    for q in grown.iter().take(10) {
        println!("  {q}  interior {}", q.interior_lattice_points()?.len());
    }
    Ok(())
}
