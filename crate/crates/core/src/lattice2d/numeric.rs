//! Brute-force propagation of the lattice Schrödinger equation on a finite
//! hard-wall window, used as an oracle for the closed-form propagators.
//!
//! `exp(-iHt)` is expanded in Chebyshev polynomials of the rescaled operator
//! `H̃ = (H - c)/r`, whose spectrum lies in `[-1, 1]` by Gershgorin's bound:
//!
//! ```text
//! exp(-iHt) = e^{-ict} Σ_k c_k T_k(H̃),   c_k = (2 - δ_k0)/π ∫_0^π e^{-i r t cos θ} cos kθ dθ
//! ```
//!
//! The coefficients are computed by quadrature rather than through the Bessel
//! routines the closed-form propagators use, so the two paths share no code.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lattice2d::grid::ComplexGrid2D;
use crate::lattice2d::hamiltonian::apply_into;
use crate::lattice2d::params::LatticeParams2D;
use crate::C64;

/// Largest `r·dt` handled by one expansion; longer times are split.
const CHUNK_PHASE: f64 = 100.0;

/// Chebyshev coefficients of `e^{-i a u}` on `[-1, 1]`, truncated once the
/// remaining ones fall below `cutoff`.
fn coefficients(a: f64, cutoff: f64) -> Vec<C64> {
    let k_max = a.abs().ceil() as usize + 64;
    let nodes = 2 * k_max + 64;
    let cos_table: Vec<f64> = (0..nodes)
        .map(|m| (2.0 * PI * m as f64 / nodes as f64).cos())
        .collect();
    let samples: Vec<C64> = cos_table
        .iter()
        .map(|&c| C64::from_polar(1.0, -a * c))
        .collect();

    let mut coeffs: Vec<C64> = (0..=k_max)
        .map(|k| {
            let mut acc = C64::new(0.0, 0.0);
            for (j, s) in samples.iter().enumerate() {
                acc += s * cos_table[(k * j) % nodes];
            }
            let weight = if k == 0 { 1.0 } else { 2.0 };
            acc * (weight / nodes as f64)
        })
        .collect();

    let degree = coeffs
        .iter()
        .rposition(|c| c.norm() >= cutoff)
        .unwrap_or(0)
        .max(1);
    coeffs.truncate(degree + 1);
    coeffs
}

/// Largest magnitude next to a wall. An axis of extent 1 has no hopping and
/// hence no wall to reach.
fn wall_magnitude(state: &ComplexGrid2D) -> f64 {
    let (ex, ey) = (state.extent_x(), state.extent_y());
    let at = |i: usize, j: usize| state.amplitudes()[i * ey + j].norm();
    let mut m = 0.0f64;
    if ex > 1 {
        for j in 0..ey {
            m = m.max(at(0, j)).max(at(ex - 1, j));
        }
    }
    if ey > 1 {
        for i in 0..ex {
            m = m.max(at(i, 0)).max(at(i, ey - 1));
        }
    }
    m
}

/// Approximates `exp(-iHt) ψ` on the window of `initial` with hard walls.
///
/// Fails with [`Error::BoundaryReach`] if the edge amplitude exceeds
/// `10·tolerance` at any intermediate checkpoint.
pub fn propagate_numeric(
    initial: &ComplexGrid2D,
    params: LatticeParams2D,
    time: f64,
    tolerance: f64,
) -> Result<ComplexGrid2D> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tolerance}")));
    }
    if !time.is_finite() {
        return Err(Error::Domain("propagation time must be finite".into()));
    }
    let limit = 10.0 * tolerance;
    let edge = wall_magnitude(initial);
    if edge > limit {
        return Err(Error::BoundaryReach { edge, limit, time: 0.0 });
    }
    if time == 0.0 {
        return Ok(initial.clone());
    }

    let (xs, ys) = (initial.x_range(), initial.y_range());
    let corners = [
        (*xs.start(), *ys.start()),
        (*xs.start(), *ys.end()),
        (*xs.end(), *ys.start()),
        (*xs.end(), *ys.end()),
    ]
    .map(|(x, y)| x as f64 * params.tilt_x + y as f64 * params.tilt_y);
    let lo = corners.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = corners.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let shift = 0.5 * (lo + hi);
    let scale = (0.5 * (hi - lo) + 4.0 * params.tunneling) * (1.0 + 1e-10);

    let chunks = ((scale * time.abs()) / CHUNK_PHASE).ceil().max(1.0) as usize;
    let dt = time / chunks as f64;
    let coeffs = coefficients(scale * dt, 1e-2 * tolerance / chunks as f64);
    let global = C64::from_polar(1.0, -shift * dt);

    let mut state = initial.clone();
    let mut prev = initial.clone();
    let mut cur = initial.clone();
    let mut next = initial.clone();
    for chunk in 0..chunks {
        // T_0 ψ = ψ, T_1 ψ = H̃ψ
        prev.amplitudes_mut().copy_from_slice(state.amplitudes());
        apply_into(&prev, params, shift, scale, cur.amplitudes_mut());
        let mut acc: Vec<C64> = prev
            .amplitudes()
            .iter()
            .zip(cur.amplitudes())
            .map(|(t0, t1)| coeffs[0] * t0 + coeffs[1] * t1)
            .collect();
        for c in coeffs.iter().skip(2) {
            apply_into(&cur, params, shift, scale, next.amplitudes_mut());
            for ((n, p), a) in next
                .amplitudes_mut()
                .iter_mut()
                .zip(prev.amplitudes())
                .zip(acc.iter_mut())
            {
                *n = 2.0 * *n - p;
                *a += c * *n;
            }
            std::mem::swap(&mut prev, &mut cur);
            std::mem::swap(&mut cur, &mut next);
        }
        for (s, a) in state.amplitudes_mut().iter_mut().zip(acc) {
            *s = a * global;
        }

        let edge = wall_magnitude(&state);
        if edge > limit {
            return Err(Error::BoundaryReach {
                edge,
                limit,
                time: dt * (chunk + 1) as f64,
            });
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients_reproduce_exponential() {
        let a = 37.0;
        let c = coefficients(a, 1e-16);
        for &u in &[-1.0, -0.3, 0.0, 0.71, 1.0f64] {
            // Σ c_k T_k(u) with T_k(u) = cos(k arccos u)
            let theta = u.acos();
            let s: C64 = c
                .iter()
                .enumerate()
                .map(|(k, ck)| ck * (k as f64 * theta).cos())
                .sum();
            assert!((s - C64::from_polar(1.0, -a * u)).norm() < 1e-13);
        }
    }
}
