//! Polynomial link invariants computed from planar diagram codes.
//!
//! The crate is organized in layers. `scalar` and `poly` provide exact
//! Gaussian-rational arithmetic and Laurent polynomials over half-integer
//! exponents. `diagram` parses and manipulates planar diagram codes.
//! `skein` resolves diagrams recursively into the two-variable trace
//! polynomials and their one-variable specializations. `vassiliev` and
//! `hatops` build the finite-type analysis tooling on top: descriptor
//! evaluation, growth sequences, pointwise criteria, composition grids, and
//! rank computations.

pub mod diagram;
pub mod skein;
pub mod table;
pub mod error;
pub mod poly;
pub mod scalar;
pub mod hatops;
pub mod vassiliev;

pub use error::{Error, Result};
pub use scalar::Scalar;
