//! Jones polynomial from the state sum, next to the graded Euler
//! characteristic of Khovanov homology.
//!
//!     cargo run --example jones -- "O O"

use khbn::complex::BnComplex;
use khbn::diagram::parse_pd;
use khbn::fixtures;
use khbn::homology::khovanov;
use khbn::verify::jones_polynomial;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let names: Vec<String> = if args.is_empty() {
        fixtures::ALL.iter().map(|(n, _)| n.to_string()).collect()
    } else {
        args
    };
    for arg in names {
        let text = fixtures::by_name(&arg).unwrap_or(&arg);
        let d = parse_pd(text)?;
        let jones = jones_polynomial(&d)?;
        let chi = khovanov(&BnComplex::new(&d)?)?.euler_characteristic();
        let mark = if jones == chi { "==" } else { "!=" };
        println!("{arg:>14}: {jones}   {mark} chi(Kh)");
    }
    Ok(())
}
