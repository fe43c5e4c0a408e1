//! Regenerates the bundled weight tables and the 3-D seed bank.
//!
//! Usage: `cargo run --release --example generate_data [OUT_DIR]`

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use polyclass::weights::{
    classify_1point_triangles, classify_2point_tetrahedra, classify_2point_triangles,
    derive_minimal_1point_3d, enumerate_1point_tetrahedra, minimal_2point_tetrahedra,
    segment_weights, SeedBank, SeedSource, Weights,
};

fn section(out: &mut String, d: usize, k: usize, ws: &BTreeSet<Weights>) {
    writeln!(out, "[{d},{k}]").unwrap();
    for w in ws {
        writeln!(out, "{w}").unwrap();
    }
}

fn main() -> polyclass::Result<()> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "crates/core/data".into()),
    );
    std::fs::create_dir_all(&dir).map_err(|e| polyclass::Error::io(&dir, e))?;

    let one_tet = enumerate_1point_tetrahedra();
    let two_tet = classify_2point_tetrahedra();

    let mut w =
        String::from("# Barycentric weights of k-point d-simplices, one section per [d,k].\n");
    section(&mut w, 1, 1, &segment_weights(1));
    section(&mut w, 1, 2, &segment_weights(2));
    section(&mut w, 2, 1, &classify_1point_triangles().weights);
    section(&mut w, 2, 2, &classify_2point_triangles().weights);
    section(&mut w, 3, 1, &one_tet.weights);
    section(&mut w, 3, 2, &two_tet.all.weights);
    let path = dir.join("weights.txt");
    std::fs::write(&path, w).map_err(|e| polyclass::Error::io(&path, e))?;

    let mut bank = SeedBank::<3>::default();
    for p in derive_minimal_1point_3d(72) {
        bank.push(p, SeedSource::Bundled("minimal-1-point".into()))?;
    }
    for p in minimal_2point_tetrahedra(&two_tet.all) {
        bank.push(p, SeedSource::Bundled("minimal-2-point-tetrahedra".into()))?;
    }
    let path = dir.join("seeds_3d.txt");
    std::fs::write(
        &path,
        bank.to_text("Minimal 1-point 3-polytopes and minimal 2-point tetrahedra."),
    )
    .map_err(|e| polyclass::Error::io(&path, e))?;
    println!(
        "wrote {} seeds and weight tables to {}",
        bank.len(),
        dir.display()
    );
    Ok(())
}
