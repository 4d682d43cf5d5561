//! Log products as blow-up fans, log Hochschild homology tables and a
//! symbolic calculus of strong log Fourier-Mukai kernels.
//!
//! The crate is organised bottom-up:
//!
//! - [`lattice_fan`]: exact cones, fans and stellar subdivision.
//! - [`log_product`]: log pairs, building sets and log products.
//! - [`cohomology`]: cohomology of split bundles on `P^n` and curves.
//! - [`log_hkr`]: log cotangent models, log Serre functors, HKR tables.
//! - [`kernel`]: kernel expressions, composition, adjoints, Chern
//!   characters and the Euler pairing.
//! - [`cli`]: the `logfan` command line.

pub mod error;
pub mod lattice_fan;
pub mod log_product;
pub mod cohomology;
pub mod log_hkr;
pub mod kernel;
pub mod cli;

pub use error::{Error, Result};
