//! Lattice parameters and initial packets whose center traces a Lissajous
//! curve `(A cos(Ω_x t + φ), B cos(Ω_y t))`.
//!
//! A wide packet's center obeys `Δ = X + (2J/F)[cos(Ft - P) - cos P]` on each
//! axis. Starting it at `X = (2J/F_x) cos P_x`, `Y = 2J/F_y`, `P_y = 0`
//! turns this into the curve above with
//! `A = 2J/F_x`, `B = 2J/F_y`, `Ω_{x,y} = F_{x,y}`, `φ = -P_x`.
//!
//! Amplitude and frequency are tied together through `F`, so a target fixes
//! them jointly: either both amplitudes, or the base frequency `Ω_y`, or both
//! as long as they agree.

use std::f64::consts::PI;

use crate::analytic1d::wrap_phase;
use crate::error::{Error, Result};
use crate::lattice2d::{GaussianSpec2D, LatticeParams2D};

/// Relative tolerance of the `F_x/F_y = p/q` consistency check.
pub const RATIO_TOLERANCE: f64 = 1e-12;

/// Desired curve shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LissajousTarget {
    /// Frequency ratio `Ω_x : Ω_y = p : q`, coprime.
    pub ratio_p: u32,
    pub ratio_q: u32,
    pub phase: f64,
    /// `(A, B)` in sites.
    pub amplitudes: Option<(f64, f64)>,
    /// `Ω_y`.
    pub base_frequency: Option<f64>,
}

/// Realization of a target on the lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LissajousPlan {
    pub params: LatticeParams2D,
    pub center_x: f64,
    pub center_y: f64,
    pub momentum_x: f64,
    pub momentum_y: f64,
    pub amp_a: f64,
    pub amp_b: f64,
    pub omega_x: f64,
    pub omega_y: f64,
    /// `φ` in `(-π, π]`.
    pub phase: f64,
    /// Smallest positive `T` with `Ω_x T` and `Ω_y T` both multiples of `2π`.
    pub period: f64,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive, got {v}")))
    }
}

/// Solve for tilts and initial state.
pub fn plan(target: &LissajousTarget, tunneling: f64) -> Result<LissajousPlan> {
    positive("tunneling", tunneling)?;
    let (p, q) = (target.ratio_p, target.ratio_q);
    if p == 0 || q == 0 {
        return Err(Error::Domain("frequency ratio terms must be positive".into()));
    }
    if gcd(p, q) != 1 {
        return Err(Error::Domain(format!("frequency ratio {p}:{q} is not in lowest terms")));
    }
    if !target.phase.is_finite() {
        return Err(Error::Domain("phase must be finite".into()));
    }
    let ratio = p as f64 / q as f64;

    let (tilt_x, tilt_y) = match (target.amplitudes, target.base_frequency) {
        (None, None) => {
            return Err(Error::Consistency(
                "either the amplitudes or the base frequency must be given".into(),
            ))
        }
        (Some((a, b)), freq) => {
            positive("amplitude A", a)?;
            positive("amplitude B", b)?;
            let fx = 2.0 * tunneling / a;
            let fy = 2.0 * tunneling / b;
            if ((fx / fy) / ratio - 1.0).abs() > RATIO_TOLERANCE {
                return Err(Error::Consistency(format!(
                    "amplitudes A = {a}, B = {b} give F_x/F_y = {}, but {p}:{q} needs A = {}",
                    fx / fy,
                    b / ratio
                )));
            }
            if let Some(w) = freq {
                positive("base frequency", w)?;
                if (fy / w - 1.0).abs() > RATIO_TOLERANCE {
                    return Err(Error::Consistency(format!(
                        "amplitude B = {b} implies Ω_y = {fy}, not {w}"
                    )));
                }
            }
            (fx, fy)
        }
        (None, Some(w)) => {
            positive("base frequency", w)?;
            (ratio * w, w)
        }
    };

    let params = LatticeParams2D::new(tunneling, tilt_x, tilt_y)?;
    let phase = wrap_phase(target.phase);
    let amp_a = 2.0 * tunneling / tilt_x;
    let amp_b = 2.0 * tunneling / tilt_y;
    let momentum_x = -phase;
    let common = tilt_y / q as f64;

    Ok(LissajousPlan {
        params,
        center_x: amp_a * momentum_x.cos(),
        center_y: amp_b,
        momentum_x,
        momentum_y: 0.0,
        amp_a,
        amp_b,
        omega_x: tilt_x,
        omega_y: tilt_y,
        phase,
        period: 2.0 * PI / common,
    })
}

impl LissajousPlan {
    /// Recipe-initialized Gaussian of width `sigma`.
    pub fn spec(&self, sigma: f64) -> Result<GaussianSpec2D> {
        GaussianSpec2D::new(
            self.center_x,
            self.center_y,
            self.momentum_x,
            self.momentum_y,
            sigma,
        )
    }
}

/// Point of the parametric curve at `time`.
pub fn curve_point(plan: &LissajousPlan, time: f64) -> (f64, f64) {
    (
        plan.amp_a * (plan.omega_x * time + plan.phase).cos(),
        plan.amp_b * (plan.omega_y * time).cos(),
    )
}
