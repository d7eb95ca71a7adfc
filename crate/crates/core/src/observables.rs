//! Trajectories, breathing profiles and oscillation amplitudes extracted from
//! evolving states, side by side with their closed-form predictions.

use rayon::prelude::*;

use crate::analytic1d::{
    center_expectation, propagate, ComplexGrid1D, GaussianSpec1D, LatticeParams1D, KERNEL_MARGIN,
};
use crate::error::{Error, Result};
use crate::lattice2d::{
    density_moments, propagate_exact_2d, ComplexGrid2D, GaussianSpec2D, LatticeParams2D,
};
use crate::lissajous::{curve_point, LissajousPlan};
use crate::special::bessel_row;
use crate::sum::NeumaierSum;

/// Recorded times may span at most this many periods.
pub const MAX_PERIODS: f64 = 10.0;

/// Samples per Bloch period used by [`oscillation_amplitude`].
pub const AMPLITUDE_SAMPLES: usize = 256;

/// Density center and spread at one time, with the predicted center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub time: f64,
    pub center_x: f64,
    pub center_y: f64,
    pub var_x: f64,
    pub var_y: f64,
    pub predicted_x: f64,
    pub predicted_y: f64,
    /// Euclidean distance between center and prediction.
    pub deviation: f64,
}

/// Latest time [`record_trajectory`] accepts: ten plan periods, or ten of the
/// slower axis' Bloch periods. Unbounded without any tilt.
pub fn time_limit(params: LatticeParams2D, predictor: Option<&LissajousPlan>) -> f64 {
    if let Some(plan) = predictor {
        return MAX_PERIODS * plan.period;
    }
    let periods = [params.axis_x().bloch_period(), params.axis_y().bloch_period()];
    let finite = periods.iter().copied().filter(|p| p.is_finite()).fold(0.0, f64::max);
    if finite > 0.0 {
        MAX_PERIODS * finite
    } else {
        f64::INFINITY
    }
}

fn check_times(times: &[f64], limit: f64) -> Result<()> {
    if times.is_empty() {
        return Err(Error::Domain("time list is empty".into()));
    }
    for (i, &t) in times.iter().enumerate() {
        if !t.is_finite() || t < 0.0 || t > limit {
            return Err(Error::Domain(format!("time {t} lies outside [0, {limit}]")));
        }
        if i > 0 && t < times[i - 1] {
            return Err(Error::Domain(format!(
                "times must ascend: {t} follows {}",
                times[i - 1]
            )));
        }
    }
    Ok(())
}

/// Evolve `spec` exactly to every time in `times` and record its moments.
///
/// The prediction is `curve_point` of the plan when one is given, otherwise
/// the closed-form `⟨x(t)⟩`, `⟨y(t)⟩` of each axis (which reduces to the
/// wide-packet motion as `σ` grows). Samples are computed in parallel and
/// returned in the order of `times`.
pub fn record_trajectory(
    spec: &GaussianSpec2D,
    params: LatticeParams2D,
    times: &[f64],
    predictor: Option<&LissajousPlan>,
) -> Result<Vec<TrajectorySample>> {
    let pairs = record_trajectory_with(spec, params, times, predictor, |_| ())?;
    Ok(pairs.into_iter().map(|(s, ())| s).collect())
}

/// [`record_trajectory`], additionally handing each evolved state to `visit`.
pub fn record_trajectory_with<T, V>(
    spec: &GaussianSpec2D,
    params: LatticeParams2D,
    times: &[f64],
    predictor: Option<&LissajousPlan>,
    visit: V,
) -> Result<Vec<(TrajectorySample, T)>>
where
    T: Send,
    V: Fn(&ComplexGrid2D) -> T + Sync,
{
    check_times(times, time_limit(params, predictor))?;
    let (sx, sy) = (spec.axis_x(), spec.axis_y());
    let (px, py) = (params.axis_x(), params.axis_y());
    times
        .par_iter()
        .map(|&time| {
            let state = propagate_exact_2d(spec, params, time)?;
            let m = density_moments(&state);
            let (predicted_x, predicted_y) = match predictor {
                Some(plan) => curve_point(plan, time),
                None => (
                    center_expectation(&sx, px, time)?,
                    center_expectation(&sy, py, time)?,
                ),
            };
            let sample = TrajectorySample {
                time,
                center_x: m.center_x,
                center_y: m.center_y,
                var_x: m.var_x.max(0.0),
                var_y: m.var_y.max(0.0),
                predicted_x,
                predicted_y,
                deviation: (m.center_x - predicted_x).hypot(m.center_y - predicted_y),
            };
            Ok((sample, visit(&state)))
        })
        .collect()
}

/// Largest center deviation of a trajectory.
pub fn max_deviation(samples: &[TrajectorySample]) -> f64 {
    samples.iter().map(|s| s.deviation).fold(0.0, f64::max)
}

/// Variance of `|J_{x-x₀}(z)|²` at each time, `z = (4J/F) sin(Ft/2)`: the
/// breathing of a particle started on site `x₀`. Independent of `x₀`.
pub fn breathing_profile(_x0: i64, params: LatticeParams1D, times: &[f64]) -> Result<Vec<(f64, f64)>> {
    params.require_tilt("the breathing profile")?;
    times
        .iter()
        .map(|&t| {
            if !t.is_finite() {
                return Err(Error::Domain(format!("time must be finite, got {t}")));
            }
            let z = params.kernel_argument(t);
            let half = z.abs().ceil() as i64 + KERNEL_MARGIN;
            let row = bessel_row(-half, half, z)?;
            let (mut norm, mut first, mut second) =
                (NeumaierSum::default(), NeumaierSum::default(), NeumaierSum::default());
            for m in -half..=half {
                let w = row.get(m).powi(2);
                let mf = m as f64;
                norm.add(w);
                first.add(mf * w);
                second.add(mf * mf * w);
            }
            let mean = first.total() / norm.total();
            Ok((t, (second.total() / norm.total() - mean * mean).max(0.0)))
        })
        .collect()
}

/// Oscillation amplitude of the packet center, `(max - min)/2` of `⟨x⟩` over
/// one Bloch period sampled at 256 evenly spaced times.
pub fn oscillation_amplitude(spec: &GaussianSpec1D, params: LatticeParams1D) -> Result<f64> {
    params.require_tilt("an oscillation amplitude")?;
    let initial: ComplexGrid1D = spec.state();
    let period = params.bloch_period();
    let centers: Vec<f64> = (0..AMPLITUDE_SAMPLES)
        .into_par_iter()
        .map(|k| {
            let t = period * k as f64 / AMPLITUDE_SAMPLES as f64;
            Ok(propagate(&initial, params, t)?.moments().0)
        })
        .collect::<Result<_>>()?;
    let max = centers.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = centers.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(0.5 * (max - min))
}
