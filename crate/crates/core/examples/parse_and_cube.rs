//! Parse a PD code, show inferred signs and the cube of resolutions.
//!
//!     cargo run --example parse_and_cube -- "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"

use khbn::cube::Cube;
use khbn::diagram::parse_pd;
use khbn::fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "trefoil".into());
    let text = fixtures::by_name(&arg).unwrap_or(&arg);
    let diagram = parse_pd(text)?;
    println!("canonical: {diagram}");
    println!(
        "crossings {}, n+ {}, n- {}, free loops {}, basepoint arc {}",
        diagram.crossing_count(),
        diagram.n_plus(),
        diagram.n_minus(),
        diagram.free_loops(),
        diagram.basepoint()
    );

    let cube = Cube::build(&diagram)?;
    println!(
        "{} vertices, {} edges, at most {} circles",
        cube.vertices().len(),
        cube.edge_count(),
        cube.max_circles()
    );
    for v in cube.vertices().iter().take(8) {
        let circles: Vec<String> = v
            .circles(&diagram)
            .iter()
            .map(|c| format!("{c:?}"))
            .collect();
        println!(
            "  {} -> {}",
            khbn::cube::alpha_string(v.alpha, cube.crossing_count()),
            circles.join(" ")
        );
    }
    println!("--- dump ---\n{}", cube.debug_dump());
    Ok(())
}
