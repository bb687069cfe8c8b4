//! Khovanov homology over F2 as a table (rows i, columns q).
//!
//!     cargo run --example khovanov -- figure-eight

use khbn::complex::BnComplex;
use khbn::diagram::parse_pd;
use khbn::fixtures;
use khbn::homology::khovanov;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let names: Vec<String> = std::env::args().skip(1).collect();
    let names = if names.is_empty() {
        vec![
            "unknot".into(),
            "hopf".into(),
            "trefoil".into(),
            "figure-eight".into(),
        ]
    } else {
        names
    };
    for arg in names {
        let text = fixtures::by_name(&arg).unwrap_or(&arg);
        let cx = BnComplex::new(&parse_pd(text)?)?;
        let kh = khovanov(&cx)?;
        println!("== {arg}\n{}", kh.to_table());
    }
    Ok(())
}
