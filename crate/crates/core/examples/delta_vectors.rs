//! δ-vectors, their basic identities and the volume inequalities for 3-polytopes.

use polyclass::ehrhart::{
    check_basic_identities, check_volume_conjectures, delta_vector, delta_vector_simplex,
    zpw_delta_formula, zpw_simplex3,
};
use polyclass::polytope::conv;

fn main() -> polyclass::Result<()> {
    for k in 1..=4 {
        let s = zpw_simplex3(k);
        println!(
            "S(3,{k}) = {s}: delta {} simplex method {} closed form {}",
            delta_vector(&s)?,
            delta_vector_simplex(&s)?,
            zpw_delta_formula(k as i64)
        );
    }
    let p = conv(&[[-1, -1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 3]]);
    println!("{p}: delta {}", delta_vector(&p)?);
    println!("  identities {:?}", check_basic_identities(&p)?);
    println!("  volume bounds {:?}", check_volume_conjectures(&p)?);
    Ok(())
}
