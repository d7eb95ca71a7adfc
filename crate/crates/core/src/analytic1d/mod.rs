//! Closed-form dynamics on a tilted chain: Wannier–Stark states, the Bessel
//! kernel propagator and its limits, and theta-function observables.

mod closed_form;
mod grid;
mod params;
mod propagate;

pub use closed_form::{
    amplitude_a, center_expectation, hop_overlap, initial_variance, localized_variance,
    shape_factor, variance,
};
pub use grid::{ComplexGrid1D, EDGE_TOLERANCE, MAX_WINDOW};
pub use params::{wrap_phase, GaussianSpec1D, LatticeParams1D, MAX_SIGMA};
pub use propagate::{
    apply_hamiltonian_1d, propagate, propagate_exact, propagate_force_free, trimmed, wide_packet_motion,
    wide_packet_solution, ws_eigenstate, WidePacketMotion, KERNEL_MARGIN,
};
