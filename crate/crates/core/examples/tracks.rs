//! Stored track encodings: solved weights, faces of the ribbon surface, and symmetries.
//!
//! cargo run --example tracks

use agol::tracksim::{automorphisms, TrackLibrary};
use agol::QuadExt;

fn main() -> agol::Result<()> {
    let lib = TrackLibrary::from_env()?;
    let xyz = [2, 5, 1].map(QuadExt::from_int);
    for label in lib.labels() {
        let enc = lib.get(label)?;
        let weights: Vec<String> = (0..enc.coefficients.len())
            .map(|b| enc.describe(b))
            .collect();
        println!("{label:<5} {:?} {:?}", enc.surface, enc.role);
        println!("      weights {}", weights.join(", "));
        if let Ok(t) = enc.build(&xyz) {
            let (genus, faces) = t.surface_type();
            println!(
                "      at (2,5,1): genus {genus}, {faces} faces, large {:?}, {} automorphisms",
                t.large_branches(),
                automorphisms(&t).len()
            );
        }
    }
    Ok(())
}
