//! The chain maps behind the splitting on a single generator: the connecting
//! map f, the nullhomotopy K = K_0 + H K_1 + ..., and iota = I + H K.
//!
//!     cargo run --example homotopy -- granny

use khbn::complex::{BnComplex, ChainBN};
use khbn::diagram::parse_pd;
use khbn::fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "granny".into());
    let text = fixtures::by_name(&arg).unwrap_or(&arg);
    let cx = BnComplex::new(&parse_pd(text)?)?;

    // A generator of C_1 with as many x labels as possible exercises the
    // higher K_i.
    let l = cx
        .basis_c1()
        .max_by_key(|l| (l.x_count(), std::cmp::Reverse(*l)))
        .expect("nonempty basis");
    let g = ChainBN::basis(l);
    let show = |name: &str, c: &ChainBN| println!("{name:>10} = {}", cx.format_chain(c));

    println!(
        "generator {} at {:?}",
        cx.format_labeling(&l),
        cx.grading(&l)
    );
    show("d+Hh", &cx.apply_dbn(&g));
    show("f", &cx.map_f(&g)?);
    for i in 0..=cx.k_bound() {
        let k = cx.map_k(i, &g);
        if !k.is_zero() {
            show(&format!("K_{i}"), &k);
        }
    }
    show("K", &cx.map_k_total(&g));
    show("iota", &cx.map_iota(&g)?);

    // f = K(d+Hh) + (d+Hh)K on this generator.
    let lhs = cx.f_extended(&g);
    let rhs = &cx.map_k_total(&cx.apply_dbn(&g)) + &cx.apply_dbn(&cx.map_k_total(&g));
    println!("f == [K, d+Hh]: {}", lhs == rhs);
    Ok(())
}
