//! Rectangle recursion, split ratio and the exact Perron-Frobenius eigenpair of M_p.
//!
//! cargo run --example eigenvector -- "2,1,1;1,3,2"

use agol::{cfrac, matrices, ParamWord};

fn main() -> agol::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "2,1,1;1,3,2".into());
    let p: ParamWord = text.parse()?;
    let r = cfrac::rectangle_data(&p);
    for (j, (h, w)) in r.heights.iter().zip(&r.widths).enumerate() {
        println!("h_{j} = {h:<20} w_{j} = {w}");
    }
    let [x, y, z] = cfrac::eigenvector_of(&r);
    println!("v = ({x}, {y}, {z})");
    println!(
        "s = {} ≈ {:.12} (series)",
        r.split_ratio,
        cfrac::split_ratio_series(&p, 50 * p.n())
    );
    let m = matrices::word_matrix(&p);
    println!("M_p =\n{m}");
    println!("char poly  {}", matrices::char_poly(&m));
    println!("M_p v = λ v exactly: {}", matrices::verify_eigenpair(&p));
    Ok(())
}
