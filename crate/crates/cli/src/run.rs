//! Running a scenario and writing its files.
//!
//! Each run directory receives, depending on `outputs`:
//!
//! - `trajectory.csv`: `t,cx,cy,vx,vy,px,py,dev`, one row per sample
//!   (1D runs leave the `y` columns at 0);
//! - `density.csv`: one row per sample, `t` followed by the density on every
//!   site of a window fixed for the whole run; 2D runs write the `x` and `y`
//!   marginals instead of the full grid;
//! - `frames/frame_NNNN.pgm`: binary graymaps of the density, scaled so that
//!   the brightest site of each frame is 255 (1D frames are one pixel high,
//!   2D frames put `x` left to right and `y` bottom to top);
//! - `manifest.txt`, always: the resolved config, parseable as input.
//!
//! Everything is computed before the first file of a run is written.

use std::fs;
use std::io::{BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use tilted_lattice::analytic1d::{
    center_expectation, propagate, ComplexGrid1D, GaussianSpec1D, LatticeParams1D, KERNEL_MARGIN,
};
use tilted_lattice::lattice2d::{ComplexGrid2D, GaussianSpec2D, LatticeParams2D};
use tilted_lattice::lissajous::LissajousPlan;
use tilted_lattice::observables::record_trajectory_with;

use crate::config::{OutputKind, Scenario, ScenarioConfig, TimeGrid};
use crate::error::CliError;
use crate::format::float;
use crate::presets;

pub const TRAJECTORY_FILE: &str = "trajectory.csv";
pub const DENSITY_FILE: &str = "density.csv";
pub const FRAMES_DIR: &str = "frames";
pub const MANIFEST_FILE: &str = "manifest.txt";
pub const TRAJECTORY_HEADER: &str = "t,cx,cy,vx,vy,px,py,dev";

/// What one run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub name: String,
    pub dir: PathBuf,
    pub samples: usize,
    pub max_deviation: f64,
    pub files: Vec<PathBuf>,
}

/// `[t, cx, cy, vx, vy, px, py, dev]`
type Row = [f64; 8];

enum Density {
    OneD {
        sites: RangeInclusive<i64>,
        rows: Vec<Vec<f64>>,
    },
    TwoD {
        xs: RangeInclusive<i64>,
        ys: RangeInclusive<i64>,
        rows: Vec<(Vec<f64>, Vec<f64>)>,
        frames: Vec<Vec<u8>>,
    },
}

struct Computed {
    rows: Vec<Row>,
    density: Density,
}

/// Run `config`; figure presets run each of their sub-scenarios in turn.
pub fn run_scenario(config: &ScenarioConfig) -> Result<Vec<RunSummary>, CliError> {
    if let Scenario::FigurePreset { .. } = config.scenario {
        let mut summaries = Vec::new();
        for (name, sub) in presets::expand(config) {
            summaries.push(run_single(&name, &sub)?);
        }
        write_manifest(config)?;
        return Ok(summaries);
    }
    let name = config
        .output_dir
        .file_name()
        .map_or_else(|| "run".to_string(), |n| n.to_string_lossy().into_owned());
    Ok(vec![run_single(&name, config)?])
}

fn run_single(name: &str, config: &ScenarioConfig) -> Result<RunSummary, CliError> {
    let computed = compute(config)?;
    let dir = &config.output_dir;
    fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    let mut files = Vec::new();
    if config.outputs.contains(&OutputKind::TrajectoryCsv) {
        files.push(write_trajectory(dir, &computed.rows)?);
    }
    if config.outputs.contains(&OutputKind::DensityCsv) {
        files.push(write_density(dir, &computed)?);
    }
    if config.outputs.contains(&OutputKind::DensityFrames) {
        files.extend(write_frames(dir, &computed.density)?);
    }
    files.push(write_manifest(config)?);
    Ok(RunSummary {
        name: name.to_string(),
        dir: dir.clone(),
        samples: computed.rows.len(),
        max_deviation: computed.rows.iter().map(|r| r[7]).fold(0.0, f64::max),
        files,
    })
}

fn compute(config: &ScenarioConfig) -> Result<Computed, CliError> {
    let j = config.tunneling;
    let densities = config.outputs.contains(&OutputKind::DensityCsv)
        || config.outputs.contains(&OutputKind::DensityFrames);
    let frames = config.outputs.contains(&OutputKind::DensityFrames);
    match &config.scenario {
        Scenario::Evolve1d {
            grid,
            tilt_over_j,
            sigma,
            center,
            momentum,
        } => {
            let spec = GaussianSpec1D::new(*center, *momentum, *sigma)?;
            let params = LatticeParams1D::new(j, tilt_over_j * j)?;
            let predict = |t: f64| center_expectation(&spec, params, t);
            compute_1d(&spec.state(), params, grid, densities, predict)
        }
        Scenario::Breathing {
            grid,
            tilt_over_j,
            x0,
        } => {
            let params = LatticeParams1D::new(j, tilt_over_j * j)?;
            let start = *x0 as f64;
            compute_1d(&ComplexGrid1D::localized(*x0), params, grid, densities, |_| Ok(start))
        }
        Scenario::Evolve2d {
            grid,
            tilt_x_over_j,
            tilt_y_over_j,
            sigma,
            center_x,
            center_y,
            momentum_x,
            momentum_y,
        } => {
            let spec = GaussianSpec2D::new(*center_x, *center_y, *momentum_x, *momentum_y, *sigma)?;
            let params = LatticeParams2D::new(j, tilt_x_over_j * j, tilt_y_over_j * j)?;
            compute_2d(&spec, params, grid, None, densities, frames)
        }
        Scenario::Lissajous { grid, sigma, .. } => {
            let plan = config
                .plan()
                .expect("lissajous configs are validated against the planner");
            let spec = plan.spec(*sigma)?;
            compute_2d(&spec, plan.params, grid, Some(&plan), densities, frames)
        }
        Scenario::FigurePreset { .. } => unreachable!("presets are expanded before computing"),
    }
}

/// Sites reached by the kernel from `window` at any of `times`.
fn reach(window: RangeInclusive<i64>, params: LatticeParams1D, times: &[f64]) -> RangeInclusive<i64> {
    let widest = times
        .iter()
        .map(|&t| params.kernel_argument(t).abs().ceil() as i64)
        .max()
        .unwrap_or(0);
    let pad = widest + KERNEL_MARGIN;
    (window.start() - pad)..=(window.end() + pad)
}

fn compute_1d(
    initial: &ComplexGrid1D,
    params: LatticeParams1D,
    grid: &TimeGrid,
    densities: bool,
    predict: impl Fn(f64) -> tilted_lattice::Result<f64> + Sync,
) -> Result<Computed, CliError> {
    let times = grid.times();
    let sites = reach(initial.sites(), params, &times);
    let samples: Vec<(Row, Vec<f64>)> = times
        .par_iter()
        .map(|&t| {
            let state = propagate(initial, params, t)?;
            let (cx, vx) = state.moments();
            let px = predict(t)?;
            let density = if densities {
                state.resampled(sites.clone())?.density()
            } else {
                Vec::new()
            };
            Ok(([t, cx, 0.0, vx.max(0.0), 0.0, px, 0.0, (cx - px).abs()], density))
        })
        .collect::<tilted_lattice::Result<_>>()?;
    let (rows, densities) = samples.into_iter().unzip();
    Ok(Computed {
        rows,
        density: Density::OneD {
            sites,
            rows: densities,
        },
    })
}

fn compute_2d(
    spec: &GaussianSpec2D,
    params: LatticeParams2D,
    grid: &TimeGrid,
    plan: Option<&LissajousPlan>,
    densities: bool,
    frames: bool,
) -> Result<Computed, CliError> {
    let times = grid.times();
    let xs = reach(spec.axis_x().default_window(), params.axis_x(), &times);
    let ys = reach(spec.axis_y().default_window(), params.axis_y(), &times);
    let pairs = record_trajectory_with(spec, params, &times, plan, |state| {
        if !densities {
            return ((Vec::new(), Vec::new()), Vec::new());
        }
        let marginals = (
            placed(state.marginal_x(), *state.x_range().start(), &xs),
            placed(state.marginal_y(), *state.y_range().start(), &ys),
        );
        let image = if frames { frame_2d(state, &xs, &ys) } else { Vec::new() };
        (marginals, image)
    })?;
    let mut rows = Vec::with_capacity(pairs.len());
    let mut marginals = Vec::with_capacity(pairs.len());
    let mut images = Vec::new();
    for (s, (m, image)) in pairs {
        rows.push([
            s.time,
            s.center_x,
            s.center_y,
            s.var_x,
            s.var_y,
            s.predicted_x,
            s.predicted_y,
            s.deviation,
        ]);
        marginals.push(m);
        if frames {
            images.push(image);
        }
    }
    Ok(Computed {
        rows,
        density: Density::TwoD {
            xs,
            ys,
            rows: marginals,
            frames: images,
        },
    })
}

/// Copy `values` (starting at site `offset`) into the fixed window `sites`.
fn placed(values: Vec<f64>, offset: i64, sites: &RangeInclusive<i64>) -> Vec<f64> {
    let mut out = vec![0.0; (sites.end() - sites.start() + 1) as usize];
    for (i, v) in values.into_iter().enumerate() {
        let k = offset + i as i64 - sites.start();
        if k >= 0 && (k as usize) < out.len() {
            out[k as usize] = v;
        }
    }
    out
}

fn gray(values: impl Iterator<Item = f64> + Clone) -> Vec<u8> {
    let max = values.clone().fold(0.0, f64::max);
    values
        .map(|v| if max > 0.0 { (255.0 * v / max).round() as u8 } else { 0 })
        .collect()
}

fn frame_2d(state: &ComplexGrid2D, xs: &RangeInclusive<i64>, ys: &RangeInclusive<i64>) -> Vec<u8> {
    let pixels = ys
        .clone()
        .rev()
        .flat_map(|y| xs.clone().map(move |x| (x, y)))
        .map(|(x, y)| state.get(x, y).norm_sqr());
    gray(pixels)
}

fn create(path: &Path) -> Result<BufWriter<fs::File>, CliError> {
    Ok(BufWriter::new(
        fs::File::create(path).map_err(CliError::io(path))?,
    ))
}

fn finish(mut w: BufWriter<fs::File>, path: &Path) -> Result<PathBuf, CliError> {
    w.flush().map_err(CliError::io(path))?;
    Ok(path.to_path_buf())
}

fn csv_line(values: impl IntoIterator<Item = f64>) -> String {
    let mut line = values.into_iter().map(float).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

fn write_trajectory(dir: &Path, rows: &[Row]) -> Result<PathBuf, CliError> {
    let path = dir.join(TRAJECTORY_FILE);
    let mut w = create(&path)?;
    let mut text = format!("{TRAJECTORY_HEADER}\n");
    for row in rows {
        text.push_str(&csv_line(row.iter().copied()));
    }
    w.write_all(text.as_bytes()).map_err(CliError::io(&path))?;
    finish(w, &path)
}

fn write_density(dir: &Path, computed: &Computed) -> Result<PathBuf, CliError> {
    let path = dir.join(DENSITY_FILE);
    let mut w = create(&path)?;
    let err = CliError::io(&path);
    let mut text = String::from("t");
    match &computed.density {
        Density::OneD { sites, rows } => {
            for x in sites.clone() {
                text.push_str(&format!(",x={x}"));
            }
            text.push('\n');
            for (row, d) in computed.rows.iter().zip(rows) {
                text.push_str(&csv_line(std::iter::once(row[0]).chain(d.iter().copied())));
            }
        }
        Density::TwoD { xs, ys, rows, .. } => {
            for x in xs.clone() {
                text.push_str(&format!(",x={x}"));
            }
            for y in ys.clone() {
                text.push_str(&format!(",y={y}"));
            }
            text.push('\n');
            for (row, (mx, my)) in computed.rows.iter().zip(rows) {
                let values = std::iter::once(row[0]).chain(mx.iter().copied()).chain(my.iter().copied());
                text.push_str(&csv_line(values));
            }
        }
    }
    w.write_all(text.as_bytes()).map_err(err)?;
    finish(w, &path)
}

fn write_pgm(path: &Path, width: usize, height: usize, pixels: &[u8]) -> Result<PathBuf, CliError> {
    let mut w = create(path)?;
    let err = CliError::io(path);
    let header = format!("P5\n{width} {height}\n255\n");
    w.write_all(header.as_bytes())
        .and_then(|_| w.write_all(pixels))
        .map_err(err)?;
    finish(w, path)
}

fn write_frames(dir: &Path, density: &Density) -> Result<Vec<PathBuf>, CliError> {
    let frames_dir = dir.join(FRAMES_DIR);
    fs::create_dir_all(&frames_dir).map_err(CliError::io(&frames_dir))?;
    let name = |k: usize| frames_dir.join(format!("frame_{k:04}.pgm"));
    let mut files = Vec::new();
    match density {
        Density::OneD { sites, rows } => {
            let width = (sites.end() - sites.start() + 1) as usize;
            for (k, d) in rows.iter().enumerate() {
                files.push(write_pgm(&name(k), width, 1, &gray(d.iter().copied()))?);
            }
        }
        Density::TwoD { xs, ys, frames, .. } => {
            let width = (xs.end() - xs.start() + 1) as usize;
            let height = (ys.end() - ys.start() + 1) as usize;
            for (k, image) in frames.iter().enumerate() {
                files.push(write_pgm(&name(k), width, height, image)?);
            }
        }
    }
    Ok(files)
}

fn write_manifest(config: &ScenarioConfig) -> Result<PathBuf, CliError> {
    let dir = &config.output_dir;
    fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    let path = dir.join(MANIFEST_FILE);
    let mut w = create(&path)?;
    w.write_all(config.to_text().as_bytes())
        .map_err(CliError::io(&path))?;
    finish(w, &path)
}
