//! Test-only oracles independent of the library's propagators.
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use tilted_lattice::C64;

/// Dense hard-wall chain `H = -J Σ(|x⟩⟨x+1| + h.c.) + F Σ x |x⟩⟨x|` on
/// `offset .. offset + len`, diagonalized once.
pub struct DenseChain {
    pub offset: i64,
    eigen: SymmetricEigen<f64, nalgebra::Dyn>,
}

impl DenseChain {
    pub fn new(offset: i64, len: usize, tunneling: f64, tilt: f64) -> Self {
        let mut h = DMatrix::<f64>::zeros(len, len);
        for i in 0..len {
            h[(i, i)] = (offset + i as i64) as f64 * tilt;
            if i + 1 < len {
                h[(i, i + 1)] = -tunneling;
                h[(i + 1, i)] = -tunneling;
            }
        }
        Self {
            offset,
            eigen: SymmetricEigen::new(h),
        }
    }

    pub fn len(&self) -> usize {
        self.eigen.eigenvalues.len()
    }

    /// `exp(-iHt) ψ` via the eigendecomposition.
    pub fn evolve(&self, psi: &[C64], time: f64) -> Vec<C64> {
        let n = self.len();
        assert_eq!(psi.len(), n);
        let v = &self.eigen.eigenvectors;
        let coeffs: Vec<C64> = (0..n)
            .map(|k| {
                let c: C64 = (0..n).map(|i| psi[i] * v[(i, k)]).sum();
                c * C64::from_polar(1.0, -self.eigen.eigenvalues[k] * time)
            })
            .collect();
        (0..n)
            .map(|i| (0..n).map(|k| coeffs[k] * v[(i, k)]).sum())
            .collect()
    }
}

/// Mean and variance of a density given as `(site, weight)` pairs.
pub fn moments(density: impl Iterator<Item = (i64, f64)>) -> (f64, f64) {
    let pts: Vec<(f64, f64)> = density.map(|(x, w)| (x as f64, w)).collect();
    let mean: f64 = pts.iter().map(|(x, w)| x * w).sum();
    let var: f64 = pts.iter().map(|(x, w)| (x - mean) * (x - mean) * w).sum();
    (mean, var)
}
