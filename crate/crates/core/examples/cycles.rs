//! Closed-form Agol cycles on both surfaces, and additivity of the total splitting number.
//!
//! cargo run --example cycles -- "1,0,1;0,1,1"

use agol::cycles::{self, Surface};
use agol::ParamWord;

fn main() -> agol::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "1,0,1;0,1,1".into());
    let p: ParamWord = text.parse()?;
    for s in Surface::ALL {
        let d = cycles::cycle(s, &p);
        println!(
            "{s:<6} ℓ = {:<3} N = {:<3} {}",
            d.length,
            d.total,
            d.split_word.powers()
        );
    }
    let t: ParamWord = "1,2,1".parse()?;
    let pt = p.concatenate(&t);
    for s in Surface::ALL {
        let n = |w| cycles::total_splitting_number(s, w);
        println!("{s:<6} N({pt}) = {} = {} + {}", n(&pt), n(&p), n(&t));
    }
    Ok(())
}
