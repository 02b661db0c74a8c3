//! Maximal splitting from the start track weighted by λv until it returns rescaled by λ⁻¹.
//!
//! cargo run --example simulate -- sphere "1,2,1"

use agol::tracksim::{self, TrackLibrary};
use agol::{cfrac, ParamWord, Surface};

fn main() -> agol::Result<()> {
    let mut args = std::env::args().skip(1);
    let surface: Surface = args.next().unwrap_or_else(|| "sphere".into()).parse()?;
    let p: ParamWord = args.next().unwrap_or_else(|| "1,2,1".into()).parse()?;
    let lib = TrackLibrary::from_env()?;
    let start = tracksim::start_track(&lib, surface, &p)?;
    println!(
        "start weights {:?}",
        start
            .weights()
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
    );
    let scale = cfrac::dilatation(&p).inverse()?;
    let cycle = tracksim::agol_cycle(&start, &scale, tracksim::default_max_steps(surface, &p))?;
    for r in &cycle.steps {
        println!(
            "{:>3} {} number {} max {}",
            r.step,
            r.kind.letter(),
            r.splitting_number,
            r.max_weight
        );
    }
    println!(
        "returned after {} steps at scale {}",
        cycle.length, cycle.scale
    );
    println!(
        "first return: {} steps at scale {}",
        cycle.primitive.length, cycle.primitive.scale
    );
    Ok(())
}
