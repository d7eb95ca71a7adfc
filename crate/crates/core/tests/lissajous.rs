use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tilted_lattice::lattice2d::{density_moments, propagate_exact_2d};
use tilted_lattice::lissajous::*;

fn target(p: u32, q: u32, phase: f64, w: f64) -> LissajousTarget {
    LissajousTarget {
        ratio_p: p,
        ratio_q: q,
        phase,
        amplitudes: None,
        base_frequency: Some(w),
    }
}

/// `𝒳 + (2J/F)[cos(Ft - 𝒫) - cos 𝒫]` on one axis.
fn general_delta(start: f64, momentum: f64, tunneling: f64, tilt: f64, t: f64) -> f64 {
    start + 2.0 * tunneling / tilt * ((tilt * t - momentum).cos() - momentum.cos())
}

#[test]
fn recipe_reproduces_general_center_motion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for &(p, q) in &[(1, 1), (1, 2), (2, 3), (3, 4), (5, 2)] {
        for &phi in &[0.0, PI / 4.0, PI / 2.0, PI, -2.0] {
            let plan = plan(&target(p, q, phi, 0.08), 1.3).unwrap();
            let j = plan.params.tunneling;
            for _ in 0..1000 {
                let t = rng.gen_range(0.0..plan.period);
                let (cx, cy) = curve_point(&plan, t);
                let dx = general_delta(plan.center_x, plan.momentum_x, j, plan.params.tilt_x, t);
                let dy = general_delta(plan.center_y, plan.momentum_y, j, plan.params.tilt_y, t);
                assert!((cx - dx).abs() < 1e-12 && (cy - dy).abs() < 1e-12, "{p}:{q} φ={phi} t={t}");
            }
        }
    }
}

#[test]
fn curves_close_after_one_period() {
    for &(p, q) in &[(1, 1), (1, 2), (2, 3), (3, 4), (7, 5)] {
        let plan = plan(&target(p, q, 0.7, 0.05), 1.0).unwrap();
        let (x0, y0) = curve_point(&plan, 0.0);
        let (x1, y1) = curve_point(&plan, plan.period);
        assert!((x1 - x0).abs() < 1e-12 && (y1 - y0).abs() < 1e-12, "{p}:{q}");
        // p and q full turns respectively
        assert!((plan.omega_y * plan.period / (2.0 * PI) - q as f64).abs() < 1e-12);
        assert!((plan.omega_x * plan.period / (2.0 * PI) - p as f64).abs() < 1e-12);
    }
}

#[test]
fn amplitudes_and_frequency_round_trip() {
    let by_freq = plan(&target(2, 3, 0.3, 0.06), 1.0).unwrap();
    let by_amp = plan(
        &LissajousTarget {
            amplitudes: Some((by_freq.amp_a, by_freq.amp_b)),
            base_frequency: None,
            ..target(2, 3, 0.3, 0.06)
        },
        1.0,
    )
    .unwrap();
    assert!((by_amp.params.tilt_x - by_freq.params.tilt_x).abs() < 1e-15);
    assert!((by_amp.period - by_freq.period).abs() < 1e-9);
    assert_eq!(curve_point(&by_freq, 0.0), (by_freq.amp_a * 0.3f64.cos(), by_freq.amp_b));
}

#[test]
fn wide_packet_follows_planned_curve() {
    let plan = plan(
        &LissajousTarget {
            ratio_p: 1,
            ratio_q: 2,
            phase: PI / 2.0,
            amplitudes: Some((25.0, 12.5)),
            base_frequency: None,
        },
        1.0,
    )
    .unwrap();
    let spec = plan.spec(5.0).unwrap();
    for k in 0..=16 {
        let t = plan.period * k as f64 / 16.0;
        let m = density_moments(&propagate_exact_2d(&spec, plan.params, t).unwrap());
        let (x, y) = curve_point(&plan, t);
        assert!((m.center_x - x).hypot(m.center_y - y) < 1.0, "t={t}");
    }
}
