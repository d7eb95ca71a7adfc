//! Presets: fixed scenario sets, one named sub-run per panel.
//!
//! | preset | runs |
//! |--------|------|
//! | fig1 | particle on site 0, `F/J ∈ {0.5, 0.2, 0.05}` over one Bloch period, plus `F = 0` |
//! | fig2 | `σ = 10` at `P = 0` for each force, and at `F/J = 0.1` for each momentum |
//! | fig3 | `F/J = 0.1`, `σ ∈ {0.1, 0.5, 1, 2, 5, 10}` |
//! | fig4 | circle with `2J/F = 25`, `P_x = π/2`, `σ ∈ {1, 5}` (64 samples per period) |
//! | fig5 | `p:q ∈ {1:2, 2:3, 3:4}` × `φ ∈ {0, π/4, π/2}`, `σ = 5`, larger amplitude 25 |

use std::f64::consts::PI;

use tilted_lattice::lissajous::{plan, LissajousTarget};

use crate::config::{Preset, Scenario, ScenarioConfig, TimeGrid};

/// Samples per Bloch period of the 1D presets.
pub const SAMPLES_1D: usize = 129;
/// Samples per curve period of the circle preset.
pub const SAMPLES_CIRCLE: usize = 64;
/// Samples per curve period of the gallery preset.
pub const SAMPLES_GALLERY: usize = 128;

/// `fig1` forces.
pub const FIG1_TILTS: [f64; 3] = [0.5, 0.2, 0.05];
/// Duration of the force-free `fig1` run, `ħ/J`.
pub const FIG1_FREE_TIME: f64 = 10.0 * PI;
/// `fig3` widths.
pub const FIG3_WIDTHS: [f64; 6] = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0];
/// `fig4` circle radius `2J/F`.
pub const FIG4_RADIUS: f64 = 25.0;
/// `fig5` ratios and phases.
pub const FIG5_RATIOS: [(u32, u32); 3] = [(1, 2), (2, 3), (3, 4)];
pub const FIG5_PHASES: [f64; 3] = [0.0, PI / 4.0, PI / 2.0];
/// Width of the `fig5` packets.
pub const FIG5_SIGMA: f64 = 5.0;

/// `[0, period]` inclusive.
fn closed(period: f64, samples: usize) -> TimeGrid {
    TimeGrid {
        start: 0.0,
        end: period,
        samples,
    }
}

/// `samples` points over one period with the endpoint (a repeat of `t = 0`) left out.
fn open(period: f64, samples: usize) -> TimeGrid {
    TimeGrid {
        start: 0.0,
        end: period * (samples - 1) as f64 / samples as f64,
        samples,
    }
}

fn period_of(target: &LissajousTarget, tunneling: f64) -> f64 {
    plan(target, tunneling)
        .expect("preset curves are consistent by construction")
        .period
}

fn tag(v: f64) -> String {
    crate::format::float(v)
}

/// Named sub-runs of a preset, each writing into `<output_dir>/<name>`.
pub fn expand(config: &ScenarioConfig) -> Vec<(String, ScenarioConfig)> {
    let Scenario::FigurePreset {
        preset,
        fig2_tilts,
        fig2_momenta,
    } = &config.scenario
    else {
        return Vec::new();
    };
    let j = config.tunneling;
    let run = |name: String, scenario: Scenario| {
        let sub = ScenarioConfig {
            tunneling: j,
            output_dir: config.output_dir.join(&name),
            outputs: config.outputs.clone(),
            scenario,
        };
        (name, sub)
    };
    let bloch = |f_over_j: f64| 2.0 * PI / (f_over_j * j);
    let gaussian = |name: String, f: f64, sigma: f64, p: f64| {
        run(
            name,
            Scenario::Evolve1d {
                grid: closed(bloch(f), SAMPLES_1D),
                tilt_over_j: f,
                sigma,
                center: 0.0,
                momentum: p,
            },
        )
    };

    match preset {
        Preset::Fig1 => {
            let mut runs: Vec<_> = FIG1_TILTS
                .iter()
                .map(|&f| {
                    run(
                        format!("fig1-F{}", tag(f)),
                        Scenario::Breathing {
                            grid: closed(bloch(f), SAMPLES_1D),
                            tilt_over_j: f,
                            x0: 0,
                        },
                    )
                })
                .collect();
            runs.push(run(
                "fig1-F0".into(),
                Scenario::Breathing {
                    grid: closed(FIG1_FREE_TIME / j, SAMPLES_1D),
                    tilt_over_j: 0.0,
                    x0: 0,
                },
            ));
            runs
        }
        Preset::Fig2 => {
            let mut runs: Vec<_> = fig2_tilts
                .iter()
                .enumerate()
                .map(|(k, &f)| gaussian(format!("fig2-force-{}", k + 1), f, 10.0, 0.0))
                .collect();
            runs.extend(
                fig2_momenta
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| gaussian(format!("fig2-momentum-{}", k + 1), 0.1, 10.0, p)),
            );
            runs
        }
        Preset::Fig3 => FIG3_WIDTHS
            .iter()
            .map(|&s| gaussian(format!("fig3-sigma{}", tag(s)), 0.1, s, 0.0))
            .collect(),
        Preset::Fig4 => [("fig4-narrow", 1.0), ("fig4-wide", 5.0)]
            .into_iter()
            .map(|(name, sigma)| {
                // P_x = π/2, i.e. φ = -π/2
                let target = LissajousTarget {
                    ratio_p: 1,
                    ratio_q: 1,
                    phase: -PI / 2.0,
                    amplitudes: Some((FIG4_RADIUS, FIG4_RADIUS)),
                    base_frequency: None,
                };
                let period = period_of(&target, j);
                run(
                    name.into(),
                    Scenario::Lissajous {
                        grid: open(period, SAMPLES_CIRCLE),
                        target,
                        sigma,
                    },
                )
            })
            .collect(),
        Preset::Fig5 => {
            let mut runs = Vec::new();
            for &(p, q) in &FIG5_RATIOS {
                for (k, &phase) in FIG5_PHASES.iter().enumerate() {
                    // the slower axis gets the larger amplitude
                    let (a, b) = if p <= q {
                        (FIG4_RADIUS, FIG4_RADIUS * p as f64 / q as f64)
                    } else {
                        (FIG4_RADIUS * q as f64 / p as f64, FIG4_RADIUS)
                    };
                    let target = LissajousTarget {
                        ratio_p: p,
                        ratio_q: q,
                        phase,
                        amplitudes: Some((a, b)),
                        base_frequency: None,
                    };
                    let period = period_of(&target, j);
                    runs.push(run(
                        format!("fig5-{p}x{q}-phase{}", k + 1),
                        Scenario::Lissajous {
                            grid: open(period, SAMPLES_GALLERY),
                            target,
                            sigma: FIG5_SIGMA,
                        },
                    ));
                }
            }
            runs
        }
    }
}
