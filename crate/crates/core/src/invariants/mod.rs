//! Linking numbers and Conway coefficients read off a diagram.

mod alexander;
mod gauss;
mod linking;
mod skein;

pub use alexander::{a2_from_gauss, conway_a2};
pub use gauss::{gauss_code, GaussCode, Pass};
pub use linking::{linking_matrix, linking_number, mod2_linking, LinkingMatrix};
pub use skein::{conway_from_gauss, conway_skein, ConwayPolynomial, DEFAULT_ORACLE_CAP};
