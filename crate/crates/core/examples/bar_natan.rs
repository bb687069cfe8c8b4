//! Bar-Natan homology over F2[H]: free and torsion summands, reduced
//! theories, and the JSON report.
//!
//!     cargo run --example bar_natan -- trefoil

use khbn::complex::BnComplex;
use khbn::diagram::parse_pd;
use khbn::fixtures;
use khbn::homology::{bar_natan, PivotStrategy, Theory};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "trefoil".into());
    let text = fixtures::by_name(&arg).unwrap_or(&arg);
    let cx = BnComplex::new(&parse_pd(text)?)?;
    for theory in [Theory::Bn, Theory::ReducedX, Theory::Reduced1] {
        let m = bar_natan(&cx, theory, PivotStrategy::UnitsFirst)?;
        println!("{}", m.to_table());
        // The other pivot order must give the same module.
        assert_eq!(m, bar_natan(&cx, theory, PivotStrategy::LocalMinimum)?);
    }
    let bn = bar_natan(&cx, Theory::Bn, PivotStrategy::default())?;
    println!("{}", bn.to_json(&cx.diagram().to_string()));
    Ok(())
}
