//! Hull, lattice points, volumes, faces and the dual volume of a polytope.
//!
//! Usage: `cargo run --example polytope_basics ["x,y,z;x,y,z;..."]`

use polyclass::polytope::text::parse_polytopes;
use polyclass::Polytope;

fn main() -> polyclass::Result<()> {
    let line = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "-1,-1,-1;0,-1,-1;-1,0,-1;7,7,8".into());
    let (_, p): (usize, Polytope<3>) = parse_polytopes(&line)?.remove(0);
    println!("vertices        {p}");
    println!("f-vector        {:?}", p.f_vector()?);
    println!("lattice points  {}", p.lattice_points().len());
    println!("interior        {:?}", p.interior_lattice_points()?);
    println!("volume          {}", p.normalized_volume()?);
    println!("boundary volume {}", p.boundary_volume()?);
    println!("dual volume     {}", p.dual_volume()?);
    Ok(())
}
