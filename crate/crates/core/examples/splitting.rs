//! Bar-Natan homology splits along the basepoint: BN = H(C_x) + H(C_1), and
//! the two reduced pieces agree up to a q-shift of -2.
//!
//!     cargo run --example splitting -- hopf

use khbn::complex::BnComplex;
use khbn::diagram::parse_pd;
use khbn::fixtures;
use khbn::homology::{compute, Theory};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "figure-eight".into());
    let text = fixtures::by_name(&arg).unwrap_or(&arg);
    let cx = BnComplex::new(&parse_pd(text)?)?;
    let bn = compute(&cx, Theory::Bn)?;
    let rx = compute(&cx, Theory::ReducedX)?;
    let r1 = compute(&cx, Theory::Reduced1)?;

    println!("BN      free {:?} torsion {:?}", bn.free, bn.torsion);
    println!("H(C_x)  free {:?} torsion {:?}", rx.free, rx.torsion);
    println!("H(C_1)  free {:?} torsion {:?}", r1.free, r1.torsion);

    let sum = rx.direct_sum(&r1);
    let shifted = r1.q_shifted(-2);
    println!(
        "BN == H(C_x) + H(C_1): {}",
        bn.free == sum.free && bn.torsion == sum.torsion
    );
    println!(
        "H(C_x) == H(C_1){{-2}}: {}",
        rx.free == shifted.free && rx.torsion == shifted.torsion
    );
    Ok(())
}
