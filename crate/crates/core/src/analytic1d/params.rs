use std::f64::consts::PI;
use std::ops::RangeInclusive;

use crate::analytic1d::grid::{window_len, ComplexGrid1D};
use crate::error::{Error, Result};
use crate::sum::NeumaierSum;
use crate::C64;

/// Widest Gaussian accepted; keeps theta nomes away from 1.
pub const MAX_SIGMA: f64 = 30.0;

/// Tunneling `J` and tilt `F` of a 1D chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeParams1D {
    pub tunneling: f64,
    pub tilt: f64,
}

impl LatticeParams1D {
    pub fn new(tunneling: f64, tilt: f64) -> Result<Self> {
        if !(tunneling.is_finite() && tunneling > 0.0) {
            return Err(Error::Domain(format!(
                "tunneling must be positive, got {tunneling}"
            )));
        }
        if !(tilt.is_finite() && tilt >= 0.0) {
            return Err(Error::Domain(format!("tilt must be non-negative, got {tilt}")));
        }
        Ok(Self { tunneling, tilt })
    }

    /// Tilt in units of `J`.
    pub fn tilt_over_j(tilt_over_j: f64) -> Result<Self> {
        Self::new(1.0, tilt_over_j)
    }

    /// Bloch period `2π/F`, infinite without a tilt.
    pub fn bloch_period(&self) -> f64 {
        if self.tilt > 0.0 {
            2.0 * PI / self.tilt
        } else {
            f64::INFINITY
        }
    }

    /// Wannier–Stark localization scale `2J/F`.
    pub fn stark_length(&self) -> f64 {
        2.0 * self.tunneling / self.tilt
    }

    /// Argument of the propagation kernel: `(4J/F) sin(Ft/2)`, or `2Jt`
    /// without a tilt.
    pub fn kernel_argument(&self, time: f64) -> f64 {
        if self.tilt > 0.0 {
            4.0 * self.tunneling / self.tilt * (0.5 * self.tilt * time).sin()
        } else {
            2.0 * self.tunneling * time
        }
    }

    pub(crate) fn require_tilt(&self, what: &str) -> Result<()> {
        if self.tilt > 0.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!("{what} requires a positive tilt")))
        }
    }
}

/// Reduce an angle to `(-π, π]`.
pub fn wrap_phase(angle: f64) -> f64 {
    let r = angle.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Gaussian wave packet `exp[-(x-X)²/4σ² + iPx]` on the integer lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpec1D {
    pub center: f64,
    /// Stored reduced to `(-π, π]`.
    pub momentum: f64,
    pub sigma: f64,
}

impl GaussianSpec1D {
    pub fn new(center: f64, momentum: f64, sigma: f64) -> Result<Self> {
        if !center.is_finite() || !momentum.is_finite() {
            return Err(Error::Domain("Gaussian center and momentum must be finite".into()));
        }
        if !(sigma > 0.0 && sigma <= MAX_SIGMA) {
            return Err(Error::Domain(format!(
                "Gaussian width must lie in (0, {MAX_SIGMA}], got {sigma}"
            )));
        }
        Ok(Self {
            center,
            momentum: wrap_phase(momentum),
            sigma,
        })
    }

    /// Sites added on each side of the center by [`Self::state`].
    pub fn padding(&self) -> i64 {
        (10.0 * self.sigma).ceil() as i64 + 40
    }

    pub fn default_window(&self) -> RangeInclusive<i64> {
        let pad = self.padding();
        (self.center.floor() as i64 - pad)..=(self.center.ceil() as i64 + pad)
    }

    /// Normalized packet on its default window.
    pub fn state(&self) -> ComplexGrid1D {
        self.sample(self.default_window())
            .expect("default Gaussian window is always valid")
    }

    /// Normalized packet on `sites`, which must reach at least `8σ` past the
    /// center on both sides.
    pub fn state_on(&self, sites: RangeInclusive<i64>) -> Result<ComplexGrid1D> {
        let reach = 8.0 * self.sigma;
        if (*sites.start() as f64) > self.center - reach || (*sites.end() as f64) < self.center + reach {
            return Err(Error::Window(format!(
                "window {}..={} does not cover {} ± 8σ (σ = {})",
                sites.start(),
                sites.end(),
                self.center,
                self.sigma
            )));
        }
        self.sample(sites)
    }

    fn sample(&self, sites: RangeInclusive<i64>) -> Result<ComplexGrid1D> {
        window_len(&sites)?;
        let offset = *sites.start();
        let four_var = 4.0 * self.sigma * self.sigma;
        let amps: Vec<C64> = sites
            .map(|x| {
                let d = x as f64 - self.center;
                C64::from_polar((-d * d / four_var).exp(), x as f64 * self.momentum)
            })
            .collect();
        Ok(normalized(ComplexGrid1D::new(offset, amps)))
    }
}

/// Rescale a grid to unit norm by explicit summation.
pub(crate) fn normalized(mut grid: ComplexGrid1D) -> ComplexGrid1D {
    let mut s = NeumaierSum::default();
    for a in grid.amplitudes() {
        s.add(a.norm_sqr());
    }
    let n = s.total();
    if n > 0.0 {
        grid.scale(1.0 / n.sqrt());
    }
    grid
}
