//! Khovanov homology over `F2`, Bar-Natan homology over `F2[H]`, the two
//! basepoint-reduced Bar-Natan theories, and machine checks of the chain-level
//! identities relating them.
//!
//! The pipeline is `diagram` (PD codes) -> `cube` (resolutions and surgeries)
//! -> `complex` (chain maps) -> `homology` (graded modules) and `verify`
//! (identity checks with counterexample reports).

pub mod complex;
pub mod cube;
pub mod diagram;
pub mod fixtures;
pub mod homology;
pub mod matrix;
pub mod poly;
pub mod verify;
