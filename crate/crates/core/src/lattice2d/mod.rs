//! Two-dimensional tilted lattice: states, the Hamiltonian, separable exact
//! evolution and the brute-force numeric propagator.

mod exact;
mod grid;
mod hamiltonian;
mod numeric;
mod params;

pub use exact::propagate_exact_2d;
pub use grid::{density_moments, ComplexGrid2D, DensityMoments, MAX_SITES_2D};
pub use hamiltonian::{apply_hamiltonian, energy};
pub use numeric::propagate_numeric;
pub use params::{build_gaussian_2d, GaussianSpec2D, LatticeParams2D};
