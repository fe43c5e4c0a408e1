//! Grows the planar one- and two-point polygons into an on-disk dataset,
//! then reads it back and summarizes it.
//!
//! Usage: `cargo run --example growth_2d [DIR]`

use std::path::PathBuf;

use polyclass::cli::compute_stats;
use polyclass::growth::{
    form_text, grow_closure, seed_bank_2d, Check, Dataset, DedupStore, GrowthOptions, WeightTables,
};

fn main() -> polyclass::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            std::env::temp_dir().join(format!("polyclass-growth-2d-{}", std::process::id()))
        });
    let store = DedupStore::create(&dir, 2)?;
    let opts = GrowthOptions {
        max_waves: None,
        progress: true,
    };
    let summary = grow_closure(
        &seed_bank_2d(2)?,
        &WeightTables::bundled(2, 2)?,
        &store,
        &opts,
    )?;
    println!("{summary:?} in {}", dir.display());

    let ds = Dataset::open(&dir)?;
    let checks = ds.verify(&Check::ALL)?;
    println!("violations {}", checks.total_violations());
    let stats = compute_stats(&ds, Some(2))?;
    println!(
        "2-point polygons {} by volume {:?}",
        stats.classes, stats.volume_histogram
    );
    for r in ds
        .records()?
        .iter()
        .filter(|r| r.simplex && r.invariants.interior_points == 2)
    {
        println!("  triangle {}  delta {:?}", form_text(r), r.delta);
    }
    Ok(())
}
