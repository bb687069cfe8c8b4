//! Small diagrams shipped with the crate, in PD notation.

use crate::diagram::{parse_pd, LinkDiagram};

pub const UNKNOT: &str = include_str!("../data/unknot.pd");
pub const KINK: &str = include_str!("../data/kink.pd");
pub const TREFOIL: &str = include_str!("../data/trefoil.pd");
pub const TREFOIL_RIGHT: &str = include_str!("../data/trefoil_right.pd");
pub const HOPF: &str = include_str!("../data/hopf.pd");
pub const FIGURE_EIGHT: &str = include_str!("../data/figure_eight.pd");
pub const TREFOIL_R1: &str = include_str!("../data/trefoil_r1.pd");
pub const TREFOIL_R2: &str = include_str!("../data/trefoil_r2.pd");
pub const GRANNY: &str = include_str!("../data/granny.pd");
pub const SQUARE: &str = include_str!("../data/square.pd");
pub const T34: &str = include_str!("../data/t34.pd");

/// `(name, pd)` for every shipped diagram.
pub const ALL: [(&str, &str); 11] = [
    ("unknot", UNKNOT),
    ("kink", KINK),
    ("trefoil", TREFOIL),
    ("trefoil-right", TREFOIL_RIGHT),
    ("hopf", HOPF),
    ("figure-eight", FIGURE_EIGHT),
    ("trefoil-r1", TREFOIL_R1),
    ("trefoil-r2", TREFOIL_R2),
    ("granny", GRANNY),
    ("square", SQUARE),
    ("t34", T34),
];

/// Looks up a shipped diagram by name.
pub fn by_name(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, pd)| *pd)
}

/// Parses a shipped diagram; panics only if the shipped data is broken.
pub fn diagram(name: &str) -> LinkDiagram {
    let pd = by_name(name).unwrap_or_else(|| panic!("no fixture named {name}"));
    parse_pd(pd).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_parse_and_build() {
        for (name, _) in ALL {
            let d = diagram(name);
            crate::cube::Cube::build(&d).unwrap();
        }
    }

    #[test]
    fn fixture_signs() {
        let w = |n: &str| {
            let d = diagram(n);
            (d.n_plus(), d.n_minus())
        };
        assert_eq!(w("trefoil"), (0, 3));
        assert_eq!(w("trefoil-right"), (3, 0));
        assert_eq!(w("hopf"), (0, 2));
        assert_eq!(w("figure-eight"), (2, 2));
        assert_eq!(w("trefoil-r1"), (1, 3));
        assert_eq!(w("trefoil-r2"), (1, 4));
        assert_eq!(w("granny"), (6, 0));
        assert_eq!(w("square"), (3, 3));
        assert_eq!(w("t34"), (8, 0));
    }
}
