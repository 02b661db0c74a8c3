//! Shift/flip classes of words, canonical forms, and split ratios separating same-profile words.
//!
//! cargo run --example conjugacy -- "3,1,1;1,2,1" "1,3,1;1,2,1"

use agol::{cfrac, cli, ParamWord};

fn main() -> agol::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: ParamWord = args
        .next()
        .unwrap_or_else(|| "3,1,1;1,2,1".into())
        .parse()?;
    let t: ParamWord = args
        .next()
        .unwrap_or_else(|| "1,3,1;1,2,1".into())
        .parse()?;
    println!("canonical {} ~ {}", p.canonical_form(), t.canonical_form());
    println!("profiles  {:?} {:?}", p.profile(), t.profile());
    println!(
        "λ         {} {}",
        cfrac::dilatation(&p),
        cfrac::dilatation(&t)
    );
    let v = cli::conjugate(&p, &t);
    println!("equivalent: {}", v.equivalent);
    if let Some((k, flip)) = v.certificate {
        println!(
            "T^{k} carries the first word to the second{}",
            if flip { " after a flip" } else { "" }
        );
    }
    for x in &v.witnesses {
        println!("shift {}: s = {} vs {}", x.shift, x.s1, x.s2);
    }
    Ok(())
}
