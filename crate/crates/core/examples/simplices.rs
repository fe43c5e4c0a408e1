//! Classifies the one- and two-point triangles and tetrahedra and prints the
//! sizes of their weight tables.

use polyclass::weights::{
    classify_1point_triangles, classify_2point_tetrahedra, classify_2point_triangles,
    enumerate_1point_tetrahedra, filter_special,
};

fn main() {
    let t1 = classify_1point_triangles();
    let t2 = classify_2point_triangles();
    println!(
        "1-point triangles {}, weights {}",
        t1.len(),
        t1.weights.len()
    );
    println!(
        "2-point triangles {}, weights {}",
        t2.len(),
        t2.weights.len()
    );
    for p in &t2.classes {
        println!("  {p}");
    }
    let s1 = enumerate_1point_tetrahedra();
    println!(
        "1-point tetrahedra {}, weights {}, max volume {}, special {}",
        s1.len(),
        s1.weights.len(),
        s1.max_volume(),
        filter_special(&s1.classes).len()
    );
    let s2 = classify_2point_tetrahedra();
    println!(
        "2-point tetrahedra {} ({} from the cone construction, {} only from two triangles), weights {}",
        s2.all.len(),
        s2.from_a.len(),
        s2.b_only(),
        s2.all.weights.len()
    );
}
