//! Simplicial lattice fans with exact arithmetic: cones, stellar
//! subdivision, products and fan maps.

mod cone;
mod fan;
mod json;
pub mod linalg;
mod vector;

pub use cone::{is_smooth, Cone};
pub use fan::{induces_fan_map, product_fan, star_subdivide, DivisorLabel, Fan, LatticeMap};
pub use json::{FanJson, LabelJson};
pub use vector::LatticeVector;
