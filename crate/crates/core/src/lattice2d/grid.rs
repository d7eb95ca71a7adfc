use std::ops::RangeInclusive;

use crate::analytic1d::{ComplexGrid1D, EDGE_TOLERANCE};
use crate::error::{Error, Result};
use crate::sum::NeumaierSum;
use crate::C64;

/// Largest number of sites in a 2D window.
pub const MAX_SITES_2D: usize = 1 << 26;

/// Complex amplitudes on a rectangular window. Site `(x, y)` lives at index
/// `(x - offset_x) * extent_y + (y - offset_y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGrid2D {
    offset_x: i64,
    offset_y: i64,
    extent_x: usize,
    extent_y: usize,
    amplitudes: Vec<C64>,
}

/// Discrete moments of `|ψ|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMoments {
    pub center_x: f64,
    pub center_y: f64,
    pub var_x: f64,
    pub var_y: f64,
    pub cov_xy: f64,
}

impl ComplexGrid2D {
    pub fn new(
        offset_x: i64,
        offset_y: i64,
        extent_x: usize,
        extent_y: usize,
        amplitudes: Vec<C64>,
    ) -> Result<Self> {
        if extent_x == 0 || extent_y == 0 {
            return Err(Error::Window("2D window must be non-empty".into()));
        }
        if amplitudes.len() != extent_x * extent_y {
            return Err(Error::Window(format!(
                "{} amplitudes do not fill a {extent_x}×{extent_y} window",
                amplitudes.len()
            )));
        }
        Ok(Self {
            offset_x,
            offset_y,
            extent_x,
            extent_y,
            amplitudes,
        })
    }

    pub fn zeros(xs: RangeInclusive<i64>, ys: RangeInclusive<i64>) -> Result<Self> {
        let (ex, ey) = (extent(&xs)?, extent(&ys)?);
        if ex.saturating_mul(ey) > MAX_SITES_2D {
            return Err(Error::Window(format!(
                "{ex}×{ey} window exceeds {MAX_SITES_2D} sites"
            )));
        }
        Self::new(*xs.start(), *ys.start(), ex, ey, vec![C64::new(0.0, 0.0); ex * ey])
    }

    /// Product state `ψ_x φ_y`.
    pub fn outer(along_x: &ComplexGrid1D, along_y: &ComplexGrid1D) -> Result<Self> {
        let (ex, ey) = (along_x.len(), along_y.len());
        if ex.saturating_mul(ey) > MAX_SITES_2D {
            return Err(Error::Window(format!(
                "{ex}×{ey} window exceeds {MAX_SITES_2D} sites"
            )));
        }
        let mut amps = Vec::with_capacity(ex * ey);
        for &a in along_x.amplitudes() {
            amps.extend(along_y.amplitudes().iter().map(|&b| a * b));
        }
        Self::new(along_x.offset(), along_y.offset(), ex, ey, amps)
    }

    pub fn offset_x(&self) -> i64 {
        self.offset_x
    }

    pub fn offset_y(&self) -> i64 {
        self.offset_y
    }

    pub fn extent_x(&self) -> usize {
        self.extent_x
    }

    pub fn extent_y(&self) -> usize {
        self.extent_y
    }

    pub fn x_range(&self) -> RangeInclusive<i64> {
        self.offset_x..=self.offset_x + self.extent_x as i64 - 1
    }

    pub fn y_range(&self) -> RangeInclusive<i64> {
        self.offset_y..=self.offset_y + self.extent_y as i64 - 1
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amplitudes
    }

    /// Row of fixed `x`, indexed by `y - offset_y`.
    pub fn row(&self, x: i64) -> &[C64] {
        let i = (x - self.offset_x) as usize;
        &self.amplitudes[i * self.extent_y..(i + 1) * self.extent_y]
    }

    /// Amplitude at `(x, y)`; zero outside the window.
    pub fn get(&self, x: i64, y: i64) -> C64 {
        let i = x - self.offset_x;
        let j = y - self.offset_y;
        if i < 0 || j < 0 || i >= self.extent_x as i64 || j >= self.extent_y as i64 {
            C64::new(0.0, 0.0)
        } else {
            self.amplitudes[i as usize * self.extent_y + j as usize]
        }
    }

    /// `((x, y), amplitude)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), C64)> + '_ {
        let ey = self.extent_y;
        self.amplitudes.iter().enumerate().map(move |(k, &a)| {
            (
                (self.offset_x + (k / ey) as i64, self.offset_y + (k % ey) as i64),
                a,
            )
        })
    }

    pub fn norm_sqr(&self) -> f64 {
        let mut s = NeumaierSum::default();
        for a in &self.amplitudes {
            s.add(a.norm_sqr());
        }
        s.total()
    }

    /// Largest magnitude on the outer rows and columns.
    pub fn edge_magnitude(&self) -> f64 {
        let (ex, ey) = (self.extent_x, self.extent_y);
        let at = |i: usize, j: usize| self.amplitudes[i * ey + j].norm();
        let mut m = 0.0f64;
        for j in 0..ey {
            m = m.max(at(0, j)).max(at(ex - 1, j));
        }
        for i in 0..ex {
            m = m.max(at(i, 0)).max(at(i, ey - 1));
        }
        m
    }

    pub fn is_window_converged(&self) -> bool {
        self.edge_magnitude() <= EDGE_TOLERANCE
    }

    /// `⟨self|other⟩` over the overlap of the two windows.
    pub fn inner(&self, other: &Self) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for ((x, y), a) in self.iter() {
            acc += a.conj() * other.get(x, y);
        }
        acc
    }

    /// Copy onto another window, dropping amplitudes outside it.
    pub fn resampled(&self, xs: RangeInclusive<i64>, ys: RangeInclusive<i64>) -> Result<Self> {
        let mut out = Self::zeros(xs, ys)?;
        let ey = out.extent_y;
        for i in 0..out.extent_x {
            let x = out.offset_x + i as i64;
            for j in 0..ey {
                out.amplitudes[i * ey + j] = self.get(x, out.offset_y + j as i64);
            }
        }
        Ok(out)
    }

    /// `Σ_y |ψ_{xy}|²` for each `x` of the window.
    pub fn marginal_x(&self) -> Vec<f64> {
        self.amplitudes
            .chunks(self.extent_y)
            .map(|row| row.iter().map(|a| a.norm_sqr()).sum())
            .collect()
    }

    /// `Σ_x |ψ_{xy}|²` for each `y` of the window.
    pub fn marginal_y(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.extent_y];
        for row in self.amplitudes.chunks(self.extent_y) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a.norm_sqr();
            }
        }
        out
    }
}

fn extent(r: &RangeInclusive<i64>) -> Result<usize> {
    if r.end() < r.start() {
        return Err(Error::Window(format!("empty range {}..={}", r.start(), r.end())));
    }
    Ok((r.end() - r.start() + 1) as usize)
}

/// Center, variances and covariance of `|ψ|²`, with compensated sums.
pub fn density_moments(state: &ComplexGrid2D) -> DensityMoments {
    let (mut sx, mut sy) = (NeumaierSum::default(), NeumaierSum::default());
    for ((x, y), a) in state.iter() {
        let w = a.norm_sqr();
        sx.add(x as f64 * w);
        sy.add(y as f64 * w);
    }
    let (cx, cy) = (sx.total(), sy.total());
    let (mut vx, mut vy, mut cv) = (
        NeumaierSum::default(),
        NeumaierSum::default(),
        NeumaierSum::default(),
    );
    for ((x, y), a) in state.iter() {
        let w = a.norm_sqr();
        let (dx, dy) = (x as f64 - cx, y as f64 - cy);
        vx.add(dx * dx * w);
        vy.add(dy * dy * w);
        cv.add(dx * dy * w);
    }
    DensityMoments {
        center_x: cx,
        center_y: cy,
        var_x: vx.total(),
        var_y: vy.total(),
        cov_xy: cv.total(),
    }
}
