//! Invariant table for several words at once; bad lines are reported and skipped.
//!
//! cargo run --example batch

use agol::cli::{batch, BatchRow};

fn main() {
    let text = "1,1,1\n1,2,1\n2,1,1\n1,0,1;0,1,1\n1,1,0\n";
    let (rows, errors) = batch(text, false);
    println!("{}", BatchRow::HEADER.join("\t"));
    for r in rows {
        println!("{}", r.tsv());
    }
    for (line, e) in errors {
        eprintln!("line {line}: {e}");
    }
}
