//! Jacobi theta function `ϑ3(x, q) = 1 + 2 Σ_{n≥1} q^{n²} cos(2nx)` and its
//! derivative with respect to the nome `q`.
//!
//! Small nomes use the defining series directly. For `q ≥ 0.2` the series is
//! replaced by its Poisson dual, with `q = e^{-s}`:
//!
//! ```text
//! ϑ3(x, e^{-s}) = √(π/s) Σ_k exp(-(x - kπ)² / s)
//! ```
//!
//! whose terms are all positive, so values like `ϑ3(π/2, q → 1)` that are
//! exponentially small keep full relative accuracy instead of drowning in
//! cancellation.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Relative size below which further terms are dropped.
const TRUNCATION: f64 = 1e-17;

/// Nome at and above which the dual series is used.
const DUAL_ABOVE: f64 = 0.2;

/// `ϑ3` and `∂ϑ3/∂q` evaluated at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaEval {
    pub phase_arg: f64,
    pub nome: f64,
    pub value: f64,
    pub dq_value: f64,
}

impl ThetaEval {
    pub fn new(phase_arg: f64, nome: f64) -> Result<Self> {
        check(phase_arg, nome)?;
        let (value, dq_value) = if nome >= DUAL_ABOVE {
            dual(phase_arg, nome)
        } else {
            direct(phase_arg, nome)
        };
        Ok(Self {
            phase_arg,
            nome,
            value,
            dq_value,
        })
    }
}

/// `ϑ3(phase_arg, nome)` for `0 ≤ nome < 1`.
pub fn theta3(phase_arg: f64, nome: f64) -> Result<f64> {
    Ok(ThetaEval::new(phase_arg, nome)?.value)
}

/// `∂ϑ3(phase_arg, q)/∂q` at `q = nome`.
pub fn theta3_dnome(phase_arg: f64, nome: f64) -> Result<f64> {
    Ok(ThetaEval::new(phase_arg, nome)?.dq_value)
}

fn check(phase_arg: f64, nome: f64) -> Result<()> {
    if !phase_arg.is_finite() {
        return Err(Error::Domain(format!(
            "theta phase argument must be finite, got {phase_arg}"
        )));
    }
    if !(0.0..1.0).contains(&nome) {
        return Err(Error::Domain(format!(
            "theta nome must lie in [0, 1), got {nome}"
        )));
    }
    Ok(())
}

fn direct(x: f64, q: f64) -> (f64, f64) {
    if q == 0.0 {
        // only the n = 1 term of the derivative survives
        return (1.0, 2.0 * (2.0 * x).cos());
    }
    let mut value = 1.0;
    let mut scale_value = 1.0;
    let mut deriv = 0.0;
    let mut scale_deriv = 0.0;
    for n in 1u32.. {
        let nf = n as f64;
        let n2 = nf * nf;
        let power = q.powf(n2 - 1.0); // q^{n²-1}
        let c = (2.0 * nf * x).cos();
        let bound_value = 2.0 * power * q;
        let bound_deriv = 2.0 * n2 * power;
        value += bound_value * c;
        deriv += bound_deriv * c;
        scale_value += bound_value;
        scale_deriv += bound_deriv;
        if bound_value < TRUNCATION * scale_value && bound_deriv < TRUNCATION * scale_deriv {
            break;
        }
    }
    (value, deriv)
}

fn dual(x: f64, q: f64) -> (f64, f64) {
    let s = -q.ln();
    let centre = (x / PI).round() as i64;
    let term = |k: i64| {
        let u = x - k as f64 * PI;
        let w = (-u * u / s).exp();
        (w, u * u * w)
    };
    let (mut sum, mut moment) = term(centre); // Σ w, Σ u² w

    for step in 1i64.. {
        let (a, ma) = term(centre + step);
        let (b, mb) = term(centre - step);
        sum += a + b;
        moment += ma + mb;
        // past u² > s the u²-weighted terms decay too
        let u = (step as f64 - 0.5) * PI;
        if a + b <= TRUNCATION * sum && u * u > s {
            break;
        }
    }

    let root = (PI / s).sqrt();
    let value = root * sum;
    // dϑ/ds = √π [ -½ s^{-3/2} Σw + s^{-5/2} Σ u² w ], dq = -q ds
    let d_ds = root * (-0.5 * sum / s + moment / (s * s));
    (value, -d_ds / q)
}
