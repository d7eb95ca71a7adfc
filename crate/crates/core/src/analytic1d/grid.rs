use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::sum::NeumaierSum;
use crate::C64;

/// Edge magnitude below which a state counts as converged in its window.
pub const EDGE_TOLERANCE: f64 = 1e-12;

/// Largest window (in sites) any propagation may produce.
pub const MAX_WINDOW: usize = 1 << 22;

/// Complex amplitudes on the contiguous sites `offset .. offset + len`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGrid1D {
    offset: i64,
    amplitudes: Vec<C64>,
}

impl ComplexGrid1D {
    pub fn new(offset: i64, amplitudes: Vec<C64>) -> Self {
        Self { offset, amplitudes }
    }

    pub fn zeros(sites: RangeInclusive<i64>) -> Result<Self> {
        let len = window_len(&sites)?;
        Ok(Self::new(*sites.start(), vec![C64::new(0.0, 0.0); len]))
    }

    /// Particle sitting on a single site.
    pub fn localized(site: i64) -> Self {
        Self::new(site, vec![C64::new(1.0, 0.0)])
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Last covered site.
    pub fn last(&self) -> i64 {
        self.offset + self.amplitudes.len() as i64 - 1
    }

    pub fn sites(&self) -> RangeInclusive<i64> {
        self.offset..=self.last()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    /// Amplitude at `site`; zero outside the window.
    pub fn get(&self, site: i64) -> C64 {
        let i = site - self.offset;
        if i < 0 || i >= self.amplitudes.len() as i64 {
            C64::new(0.0, 0.0)
        } else {
            self.amplitudes[i as usize]
        }
    }

    /// `(site, amplitude)` pairs in ascending site order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        self.amplitudes
            .iter()
            .enumerate()
            .map(move |(i, &a)| (self.offset + i as i64, a))
    }

    pub fn density(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        let mut s = NeumaierSum::default();
        for a in &self.amplitudes {
            s.add(a.norm_sqr());
        }
        s.total()
    }

    /// Larger of the two edge magnitudes.
    pub fn edge_magnitude(&self) -> f64 {
        match (self.amplitudes.first(), self.amplitudes.last()) {
            (Some(a), Some(b)) => a.norm().max(b.norm()),
            _ => 0.0,
        }
    }

    pub fn is_window_converged(&self) -> bool {
        self.edge_magnitude() <= EDGE_TOLERANCE
    }

    /// Mean and variance of `|ψ|²` (assumed normalized).
    pub fn moments(&self) -> (f64, f64) {
        let mut first = NeumaierSum::default();
        for (x, a) in self.iter() {
            first.add(x as f64 * a.norm_sqr());
        }
        let mean = first.total();
        let mut second = NeumaierSum::default();
        for (x, a) in self.iter() {
            let d = x as f64 - mean;
            second.add(d * d * a.norm_sqr());
        }
        (mean, second.total())
    }

    /// Copy onto another window, dropping amplitudes outside it.
    pub fn resampled(&self, sites: RangeInclusive<i64>) -> Result<Self> {
        let mut out = Self::zeros(sites)?;
        let offset = out.offset;
        for (x, a) in self.iter() {
            let i = x - offset;
            if i >= 0 && (i as usize) < out.amplitudes.len() {
                out.amplitudes[i as usize] = a;
            }
        }
        Ok(out)
    }

    /// Overlap `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> C64 {
        let lo = self.offset.max(other.offset);
        let hi = self.last().min(other.last());
        (lo..=hi).fold(C64::new(0.0, 0.0), |acc, x| {
            acc + self.get(x).conj() * other.get(x)
        })
    }

    pub(crate) fn scale(&mut self, factor: f64) {
        for a in &mut self.amplitudes {
            *a *= factor;
        }
    }
}

pub(crate) fn window_len(sites: &RangeInclusive<i64>) -> Result<usize> {
    let (lo, hi) = (*sites.start(), *sites.end());
    if hi < lo {
        return Err(Error::Window(format!("empty window {lo}..={hi}")));
    }
    let len = (hi - lo + 1) as u64;
    if len > MAX_WINDOW as u64 {
        return Err(Error::Window(format!(
            "window of {len} sites exceeds the limit of {MAX_WINDOW}"
        )));
    }
    Ok(len as usize)
}
