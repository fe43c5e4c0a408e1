//! Canonical keys are unchanged by random affine unimodular maps, and
//! distinguish inequivalent polytopes.

use polyclass::ehrhart::zpw_simplex3;
use polyclass::normal_form::{affine_normal_form, are_equivalent, random_unimodular_map};
use polyclass::polytope::conv;

fn main() -> polyclass::Result<()> {
    let p = zpw_simplex3(2);
    let key = affine_normal_form(&p)?;
    println!("{p}\n  key {key:?}\n  canonical matrix {:?}", key.matrix());
    for seed in 1..=5 {
        let (m, t) = random_unimodular_map(seed);
        let q = p.map_affine(&m, &t)?;
        println!(
            "image {seed}: {q}  same key: {}",
            affine_normal_form(&q)? == key
        );
    }
    let other = conv(&[[0, 0, 0], [2, 0, 0], [0, 6, 0], [0, 0, 6]]);
    println!("{other} equivalent: {}", are_equivalent(&p, &other));
    Ok(())
}
