//! Exact dilatation, its minimal polynomial and the periodic continued fraction behind it.
//!
//! cargo run --example dilatation -- "1,0,1;0,1,1"

use agol::cfrac;
use agol::ParamWord;

fn main() -> agol::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "1,0,1;0,1,1".into());
    let p: ParamWord = text.parse()?;
    let cf = cfrac::height_expansion(&p);
    let h0 = cf.eval()?;
    let lambda = cfrac::dilatation(&p);
    println!("word        {p}");
    println!(
        "h_0         {h0}  (period {:?})",
        cf.period.iter().map(|x| x.to_string()).collect::<Vec<_>>()
    );
    println!("λ           {lambda}");
    println!(
        "min poly    {:?}",
        lambda.minimal_polynomial().map(|c| c.to_string())
    );
    println!("λ ≈         {} (approximate)", lambda.to_decimal(12));
    Ok(())
}
