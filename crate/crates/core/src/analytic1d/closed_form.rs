//! Theta-function expressions for the center and variance of an evolving
//! Gaussian packet.
//!
//! With nomes `q₁ = e^{-1/2σ²}` and `q₂ = e^{-2π²σ²}`, the nearest-neighbour
//! overlap of the initial packet is
//!
//! ```text
//! κ = √(2π) σ e^{-1/8σ²} ϑ3(π/2 + πX, q₂) / ϑ3(0, q₁)
//! ```
//!
//! and with `z(t) = (4J/F) sin(Ft/2)` (or `2Jt` at `F = 0`):
//!
//! ```text
//! ⟨x(t)⟩ = X + 𝒜 [cos(Ft - P) - cos P],        𝒜 = (2J/F) κ
//! s²(t)  = s²(0) + z² [1/2 - 𝒮(σ, t)]
//! s²(0)  = q₁ ϑ3'(0, q₁) / ϑ3(0, q₁)
//! 𝒮      = √(π/2) σ e^{-1/2σ²} ϑ3(0, q₂)/ϑ3(0, q₁) cos(Ft - 2P) + κ² sin²(Ft/2 - P)
//! ```
//!
//! The theta denominators assume an integer center `X`.

use std::f64::consts::PI;

use crate::analytic1d::params::{GaussianSpec1D, LatticeParams1D};
use crate::error::{Error, Result};
use crate::special::{theta3, ThetaEval};

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma <= crate::analytic1d::params::MAX_SIGMA {
        Ok(())
    } else {
        Err(Error::Domain(format!("width must lie in (0, 30], got {sigma}")))
    }
}

/// `κ = 𝒜 F / 2J`, the overlap `Σ ψ*_{x+1} ψ_x e^{iP}` of the initial packet.
pub fn hop_overlap(center: f64, sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    let near = (-0.5 / (sigma * sigma)).exp();
    let far = (-2.0 * PI * PI * sigma * sigma).exp();
    let num = theta3(0.5 * PI + PI * center, far)?;
    let den = theta3(0.0, near)?;
    Ok((2.0 * PI).sqrt() * sigma * (-0.125 / (sigma * sigma)).exp() * num / den)
}

/// Oscillation amplitude `𝒜(X, σ)` of the packet center.
pub fn amplitude_a(center: f64, sigma: f64, params: LatticeParams1D) -> Result<f64> {
    params.require_tilt("the oscillation amplitude")?;
    Ok(params.stark_length() * hop_overlap(center, sigma)?)
}

/// `⟨x(t)⟩` for a Gaussian initial state.
///
/// Also valid at zero tilt, where it reduces to `X + 2Jκt sin P`.
pub fn center_expectation(spec: &GaussianSpec1D, params: LatticeParams1D, time: f64) -> Result<f64> {
    let kappa = hop_overlap(spec.center, spec.sigma)?;
    let z = params.kernel_argument(time);
    // (2J/F)[cos(Ft - P) - cos P] = -z sin(Ft/2 - P)
    let swing = -z * (0.5 * params.tilt * time - spec.momentum).sin();
    Ok(spec.center + kappa * swing)
}

/// Initial variance `s²(0)` of the discrete Gaussian.
pub fn initial_variance(sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    let near = (-0.5 / (sigma * sigma)).exp();
    let t = ThetaEval::new(0.0, near)?;
    Ok(near * t.dq_value / t.value)
}

/// The shape factor `𝒮(σ, t)`.
pub fn shape_factor(spec: &GaussianSpec1D, params: LatticeParams1D, time: f64) -> Result<f64> {
    let sigma = spec.sigma;
    check_sigma(sigma)?;
    let near = (-0.5 / (sigma * sigma)).exp();
    let far = (-2.0 * PI * PI * sigma * sigma).exp();
    let den = theta3(0.0, near)?;
    let kappa = hop_overlap(spec.center, sigma)?;
    let ft = params.tilt * time;
    let p = spec.momentum;
    let first = (0.5 * PI).sqrt() * sigma * near * theta3(0.0, far)? / den * (ft - 2.0 * p).cos();
    let second = kappa * kappa * (0.5 * ft - p).sin().powi(2);
    Ok(first + second)
}

/// Variance `s²(t)` of the density.
pub fn variance(spec: &GaussianSpec1D, params: LatticeParams1D, time: f64) -> Result<f64> {
    let z = params.kernel_argument(time);
    Ok(initial_variance(spec.sigma)? + z * z * (0.5 - shape_factor(spec, params, time)?))
}

/// Variance of a particle started on a single site, `(8J²/F²) sin²(Ft/2)`.
pub fn localized_variance(params: LatticeParams1D, time: f64) -> f64 {
    let z = params.kernel_argument(time);
    0.5 * z * z
}
