//! The bundled seed bank and a minimality check on each entry.

use polyclass::weights::{bundled_seed_bank, is_minimal, SeedSource};

fn main() -> polyclass::Result<()> {
    let bank = bundled_seed_bank()?;
    println!("{} seeds", bank.len());
    for e in &bank.entries {
        let label = match &e.source {
            SeedSource::Bundled(s) => s.as_str(),
            SeedSource::Computed => "computed",
        };
        let inv = e.key.invariants();
        println!(
            "{:<28} vol {:>3} interior {} minimal {}  {}",
            label,
            inv.volume,
            inv.interior_points,
            is_minimal(&e.polytope)?,
            e.polytope
        );
    }
    Ok(())
}
