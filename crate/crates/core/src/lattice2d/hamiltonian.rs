use rayon::prelude::*;

use crate::lattice2d::grid::ComplexGrid2D;
use crate::lattice2d::params::LatticeParams2D;
use crate::C64;

/// `(Hψ)_{xy} = -J(ψ_{x±1,y} + ψ_{x,y±1}) + (xF_x + yF_y) ψ_{xy}` on the
/// state's window. Neighbours outside the window are absent (hard wall).
pub fn apply_hamiltonian(state: &ComplexGrid2D, params: LatticeParams2D) -> ComplexGrid2D {
    let mut out = state.clone();
    apply_into(state, params, 0.0, 1.0, out.amplitudes_mut());
    out
}

/// `dst = (H - shift) ψ / scale`, computed row by row.
pub(crate) fn apply_into(
    state: &ComplexGrid2D,
    params: LatticeParams2D,
    shift: f64,
    scale: f64,
    dst: &mut [C64],
) {
    let ey = state.extent_y();
    let ex = state.extent_x();
    let src = state.amplitudes();
    let j = params.tunneling;
    let inv = 1.0 / scale;
    dst.par_chunks_mut(ey).enumerate().for_each(|(i, row)| {
        let x = state.offset_x() + i as i64;
        let base = i * ey;
        for (k, out) in row.iter_mut().enumerate() {
            let y = state.offset_y() + k as i64;
            let mut hop = C64::new(0.0, 0.0);
            if i > 0 {
                hop += src[base - ey + k];
            }
            if i + 1 < ex {
                hop += src[base + ey + k];
            }
            if k > 0 {
                hop += src[base + k - 1];
            }
            if k + 1 < ey {
                hop += src[base + k + 1];
            }
            let onsite = x as f64 * params.tilt_x + y as f64 * params.tilt_y - shift;
            *out = (src[base + k] * onsite - hop * j) * inv;
        }
    });
}

/// `⟨ψ|H|ψ⟩`.
pub fn energy(state: &ComplexGrid2D, params: LatticeParams2D) -> f64 {
    state.inner(&apply_hamiltonian(state, params)).re
}
