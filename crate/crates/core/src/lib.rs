//! Quantum particle on a tilted one- and two-dimensional tight-binding lattice.
//!
//! Units: `ħ = 1`. Energies (`J`, `F`) share one unit and time is measured in
//! its inverse, so with `J = 1` time is in units of `ħ/J`.

pub mod error;
pub mod special;
pub mod analytic1d;
pub mod lattice2d;
pub mod lissajous;
pub mod observables;
mod sum;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
