//! Exact logarithmic series solutions of codimension-one A-hypergeometric systems.
//!
//! A configuration `A = {a_1, ..., a_n}` in `Z^d` whose integer relations form
//! a rank-one lattice determines a system of one box operator and `d` Euler
//! operators. This crate computes the relation and volume, fake exponents and
//! their multiplicities, the Nilsson-type series solutions around `x0 = 0`
//! (polynomials in `log x0` with coefficients indexed by powers of `x0`), and
//! certifies each series by applying the operators symbolically.
//!
//! All arithmetic is over exact rationals. Column indices are 0-based and
//! follow the caller's order.

pub mod classify;
pub mod cli;
pub mod coefficients;
pub mod error;
pub mod exponents;
pub mod gauss;
pub mod lattice;
pub mod linalg;
pub mod rational;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{build_config, LatticeConfig, Parameter, PointConfig};
pub use rational::Rat;
pub use series::{LogSeries, Window};
