use crate::analytic1d::propagate;
use crate::error::Result;
use crate::lattice2d::grid::ComplexGrid2D;
use crate::lattice2d::params::{GaussianSpec2D, LatticeParams2D};

/// Exact evolution of a separable Gaussian: the tensor product of the two 1D
/// Bessel-kernel propagations. A zero tilt on an axis selects the force-free
/// kernel there.
pub fn propagate_exact_2d(
    initial: &GaussianSpec2D,
    params: LatticeParams2D,
    time: f64,
) -> Result<ComplexGrid2D> {
    let along_x = propagate(&initial.axis_x().state(), params.axis_x(), time)?;
    let along_y = propagate(&initial.axis_y().state(), params.axis_y(), time)?;
    ComplexGrid2D::outer(&along_x, &along_y)
}
