use rayon::prelude::*;

use crate::analytic1d::grid::{window_len, ComplexGrid1D, EDGE_TOLERANCE};
use crate::analytic1d::params::{normalized, GaussianSpec1D, LatticeParams1D};
use crate::error::{Error, Result};
use crate::special::bessel_row;
use crate::C64;

/// Orders kept beyond `|z|` in a Bessel kernel `J_m(z)`.
pub const KERNEL_MARGIN: i64 = 40;

/// Wannier–Stark eigenstate `|n⟩ = Σ_x J_{x-n}(2J/F) |x⟩` on `window`.
pub fn ws_eigenstate(
    quantum_number: i64,
    params: LatticeParams1D,
    window: std::ops::RangeInclusive<i64>,
) -> Result<ComplexGrid1D> {
    params.require_tilt("a Wannier–Stark eigenstate")?;
    window_len(&window)?;
    let (lo, hi) = (*window.start(), *window.end());
    let row = bessel_row(lo - quantum_number, hi - quantum_number, params.stark_length())?;
    let amps: Vec<C64> = row.values().iter().map(|&v| C64::new(v, 0.0)).collect();
    let state = ComplexGrid1D::new(lo, amps);
    if !state.is_window_converged() {
        return Err(Error::Window(format!(
            "window {lo}..={hi} truncates eigenstate n = {quantum_number}: edge amplitude {:.3e}",
            state.edge_magnitude()
        )));
    }
    Ok(state)
}

/// Exact evolution under a positive tilt:
///
/// ```text
/// ψ_x(t) = Σ_{x'} ψ_{x'}(0) J_{x-x'}[(4J/F) sin(Ft/2)] exp{(i/2)[π(x-x') - F(x+x')t]}
/// ```
///
/// The output window is the input window padded by `ceil|z| + 40` sites per
/// side, `z` being the kernel argument.
pub fn propagate_exact(
    initial: &ComplexGrid1D,
    params: LatticeParams1D,
    time: f64,
) -> Result<ComplexGrid1D> {
    params.require_tilt("the tilted propagator (use propagate_force_free)")?;
    convolve(
        initial,
        params.kernel_argument(time),
        0.5 * params.tilt * time,
    )
}

/// Exact evolution without tilt: convolution with `J_{x-x'}(2Jt) i^{x-x'}`.
pub fn propagate_force_free(
    initial: &ComplexGrid1D,
    params: LatticeParams1D,
    time: f64,
) -> Result<ComplexGrid1D> {
    convolve(initial, 2.0 * params.tunneling * time, 0.0)
}

/// Dispatches to [`propagate_exact`] or [`propagate_force_free`] on the tilt.
pub fn propagate(initial: &ComplexGrid1D, params: LatticeParams1D, time: f64) -> Result<ComplexGrid1D> {
    if params.tilt > 0.0 {
        propagate_exact(initial, params, time)
    } else {
        propagate_force_free(initial, params, time)
    }
}

/// `i^m`
fn i_pow(m: i64) -> C64 {
    match m.rem_euclid(4) {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

/// `out_x = e^{-ixθ} Σ_{x'} ψ_{x'} e^{-ix'θ} i^{x-x'} J_{x-x'}(z)`, summed in
/// ascending `x'` for every output site.
fn convolve(initial: &ComplexGrid1D, z: f64, theta: f64) -> Result<ComplexGrid1D> {
    if !z.is_finite() || !theta.is_finite() {
        return Err(Error::Domain("propagation time must be finite".into()));
    }
    let half = z.abs().ceil() as i64 + KERNEL_MARGIN;
    let out_lo = initial.offset() - half;
    let out_hi = initial.last() + half;
    let out_len = window_len(&(out_lo..=out_hi))?;

    let row = bessel_row(-half, half, z)?;
    let kernel: Vec<C64> = (-half..=half).map(|m| i_pow(m) * row.get(m)).collect();

    let phase = |x: i64| C64::from_polar(1.0, -(x as f64) * theta);
    let source: Vec<C64> = initial.iter().map(|(x, a)| a * phase(x)).collect();
    let in_lo = initial.offset();
    let in_len = source.len() as i64;

    let amps: Vec<C64> = (0..out_len)
        .into_par_iter()
        .map(|i| {
            let x = out_lo + i as i64;
            // x' ranges over the input window intersected with [x - half, x + half]
            let first = (x - half - in_lo).max(0);
            let last = (x + half - in_lo).min(in_len - 1);
            let mut acc = C64::new(0.0, 0.0);
            for j in first..=last {
                let m = x - (in_lo + j);
                acc += source[j as usize] * kernel[(m + half) as usize];
            }
            acc * phase(x)
        })
        .collect();

    Ok(ComplexGrid1D::new(out_lo, amps))
}

/// Center, quasi-momentum and global phase of a wide packet, `(Δ, Γ, Φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidePacketMotion {
    pub delta: f64,
    pub gamma: f64,
    pub phi: f64,
}

pub fn wide_packet_motion(
    spec: &GaussianSpec1D,
    params: LatticeParams1D,
    time: f64,
) -> Result<WidePacketMotion> {
    params.require_tilt("the wide-packet solution")?;
    let l = params.stark_length();
    let p = spec.momentum;
    let ft = params.tilt * time;
    Ok(WidePacketMotion {
        delta: spec.center + l * ((ft - p).cos() - p.cos()),
        gamma: p - ft,
        phi: l * ((ft - p).sin() + p.sin()),
    })
}

/// Shape-preserving approximation for wide packets:
/// `𝒩 exp[-(x - Δ)²/4σ² + ixΓ + iΦ]`, normalized by explicit summation.
pub fn wide_packet_solution(
    spec: &GaussianSpec1D,
    params: LatticeParams1D,
    time: f64,
) -> Result<ComplexGrid1D> {
    let motion = wide_packet_motion(spec, params, time)?;
    let pad = spec.padding();
    let lo = motion.delta.floor() as i64 - pad;
    let hi = motion.delta.ceil() as i64 + pad;
    window_len(&(lo..=hi))?;
    let four_var = 4.0 * spec.sigma * spec.sigma;
    let amps = (lo..=hi)
        .map(|x| {
            let d = x as f64 - motion.delta;
            C64::from_polar(
                (-d * d / four_var).exp(),
                x as f64 * motion.gamma + motion.phi,
            )
        })
        .collect();
    Ok(normalized(ComplexGrid1D::new(lo, amps)))
}

/// Drop leading and trailing sites whose magnitude is below the edge tolerance
/// scaled down by `1e-6`, leaving the state untouched otherwise.
pub fn trimmed(state: &ComplexGrid1D) -> ComplexGrid1D {
    let cut = EDGE_TOLERANCE * 1e-6;
    let amps = state.amplitudes();
    let first = amps.iter().position(|a| a.norm() > cut);
    let Some(first) = first else {
        return state.clone();
    };
    let last = amps.iter().rposition(|a| a.norm() > cut).unwrap_or(first);
    ComplexGrid1D::new(
        state.offset() + first as i64,
        amps[first..=last].to_vec(),
    )
}

/// `(Hψ)_x = -J(ψ_{x-1} + ψ_{x+1}) + xF ψ_x` on the state's own window, with
/// sites outside the window treated as absent.
pub fn apply_hamiltonian_1d(state: &ComplexGrid1D, params: LatticeParams1D) -> ComplexGrid1D {
    let j = params.tunneling;
    let amps = state.amplitudes();
    let n = amps.len();
    let out = (0..n)
        .map(|i| {
            let x = state.offset() + i as i64;
            let mut hop = C64::new(0.0, 0.0);
            if i > 0 {
                hop += amps[i - 1];
            }
            if i + 1 < n {
                hop += amps[i + 1];
            }
            -j * hop + amps[i] * (x as f64 * params.tilt)
        })
        .collect();
    ComplexGrid1D::new(state.offset(), out)
}
