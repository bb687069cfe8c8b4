//! Every identity check on every shipped diagram, then the deliberately
//! broken maps to show the checks can fail.
//!
//!     cargo run --release --example verify_suite

use khbn::complex::{BnComplex, Fault};
use khbn::fixtures;
use khbn::verify::{run_check, run_checks, Check};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut all_ok = true;
    for (name, _) in fixtures::ALL {
        let cx = BnComplex::new(&fixtures::diagram(name))?;
        let reports = run_checks(&cx, &Check::ALL);
        let passed = reports.iter().filter(|r| r.passed()).count();
        all_ok &= passed == reports.len();
        println!("{name:>14}: {passed}/{} checks pass", reports.len());
    }

    println!("\nnegative controls:");
    let controls = [
        ("figure-eight", Fault::SplitDropsTerm, Check::DSquared),
        ("trefoil", Fault::KKeepsBasepoint, Check::K0),
        ("trefoil", Fault::KSubsetsWithRepetition, Check::Ladder),
        ("trefoil", Fault::IotaWithoutH, Check::Iota),
    ];
    for (name, fault, check) in controls {
        let cx = BnComplex::new(&fixtures::diagram(name))?.with_fault(fault);
        let rep = run_check(&cx, check);
        all_ok &= !rep.passed();
        println!("  {:<18} {}", fault.name(), rep.summary_line());
    }
    std::process::exit(if all_ok { 0 } else { 1 });
}
