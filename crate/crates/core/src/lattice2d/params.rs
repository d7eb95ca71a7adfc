use std::ops::RangeInclusive;

use crate::analytic1d::{GaussianSpec1D, LatticeParams1D};
use crate::error::Result;
use crate::lattice2d::grid::ComplexGrid2D;

/// Tunneling `J` (equal along both axes) and tilts `(F_x, F_y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeParams2D {
    pub tunneling: f64,
    pub tilt_x: f64,
    pub tilt_y: f64,
}

impl LatticeParams2D {
    pub fn new(tunneling: f64, tilt_x: f64, tilt_y: f64) -> Result<Self> {
        // reuse the 1D checks per axis
        LatticeParams1D::new(tunneling, tilt_x)?;
        LatticeParams1D::new(tunneling, tilt_y)?;
        Ok(Self {
            tunneling,
            tilt_x,
            tilt_y,
        })
    }

    pub fn axis_x(&self) -> LatticeParams1D {
        LatticeParams1D {
            tunneling: self.tunneling,
            tilt: self.tilt_x,
        }
    }

    pub fn axis_y(&self) -> LatticeParams1D {
        LatticeParams1D {
            tunneling: self.tunneling,
            tilt: self.tilt_y,
        }
    }
}

/// Separable Gaussian packet centered at `(X, Y)` with momenta `(P_x, P_y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpec2D {
    pub center_x: f64,
    pub center_y: f64,
    pub momentum_x: f64,
    pub momentum_y: f64,
    pub sigma: f64,
}

impl GaussianSpec2D {
    pub fn new(
        center_x: f64,
        center_y: f64,
        momentum_x: f64,
        momentum_y: f64,
        sigma: f64,
    ) -> Result<Self> {
        let x = GaussianSpec1D::new(center_x, momentum_x, sigma)?;
        let y = GaussianSpec1D::new(center_y, momentum_y, sigma)?;
        Ok(Self {
            center_x: x.center,
            center_y: y.center,
            momentum_x: x.momentum,
            momentum_y: y.momentum,
            sigma,
        })
    }

    pub fn axis_x(&self) -> GaussianSpec1D {
        GaussianSpec1D {
            center: self.center_x,
            momentum: self.momentum_x,
            sigma: self.sigma,
        }
    }

    pub fn axis_y(&self) -> GaussianSpec1D {
        GaussianSpec1D {
            center: self.center_y,
            momentum: self.momentum_y,
            sigma: self.sigma,
        }
    }

    /// Normalized packet on the default per-axis windows.
    pub fn state(&self) -> ComplexGrid2D {
        ComplexGrid2D::outer(&self.axis_x().state(), &self.axis_y().state())
            .expect("default Gaussian windows are small")
    }
}

/// The Gaussian packet on an explicit window, which must pad the center by at
/// least `8σ` on every side.
pub fn build_gaussian_2d(
    spec: &GaussianSpec2D,
    xs: RangeInclusive<i64>,
    ys: RangeInclusive<i64>,
) -> Result<ComplexGrid2D> {
    let gx = spec.axis_x().state_on(xs)?;
    let gy = spec.axis_y().state_on(ys)?;
    ComplexGrid2D::outer(&gx, &gy)
}
