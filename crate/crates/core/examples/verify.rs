//! Closed forms checked against the simulator on seeded random words.
//!
//! cargo run --release --example verify -- 50 42

use agol::tracksim::{self, TrackLibrary};
use agol::{ParamWord, Surface};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> agol::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u64>().expect("numeric argument"));
    let count = args.next().unwrap_or(20);
    let mut rng = ChaCha8Rng::seed_from_u64(args.next().unwrap_or(0));
    let lib = TrackLibrary::builtin();
    let mut failures = 0;
    for _ in 0..count {
        let p = ParamWord::random(&mut rng, 3, 3);
        for s in Surface::ALL {
            let checks = tracksim::verify(&lib, s, &p)?;
            let ok = checks.iter().all(|c| c.pass);
            failures += !ok as usize;
            println!("{} {s:<6} {p}", if ok { "PASS" } else { "FAIL" });
        }
    }
    println!("{failures} failures");
    Ok(())
}
