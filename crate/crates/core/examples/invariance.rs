//! Homology does not see Reidemeister moves: compare diagrams of the same
//! link, and a pair of different knots as a control.
//!
//!     cargo run --example invariance

use khbn::complex::BnComplex;
use khbn::fixtures;
use khbn::verify::check_invariance_pair;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pairs = [
        ("unknot", "kink"),
        ("trefoil", "trefoil-r1"),
        ("trefoil", "trefoil-r2"),
        ("trefoil", "figure-eight"),
        ("granny", "square"),
    ];
    for (a, b) in pairs {
        let ca = BnComplex::new(&fixtures::diagram(a))?;
        let cb = BnComplex::new(&fixtures::diagram(b))?;
        let rep = check_invariance_pair(&ca, &cb);
        let verdict = if rep.passed() { "same" } else { "different" };
        println!("{a:>8} vs {b:<13} {verdict}");
    }
    Ok(())
}
