//! Special functions used by the closed-form propagators and observables.

mod bessel;
mod theta;

pub use bessel::{bessel_j, bessel_row, BesselRow};
pub use theta::{theta3, theta3_dnome, ThetaEval};
