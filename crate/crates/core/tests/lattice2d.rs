mod common;

use std::f64::consts::PI;

use common::DenseChain;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tilted_lattice::analytic1d::{initial_variance, GaussianSpec1D};
use tilted_lattice::lattice2d::*;
use tilted_lattice::{Error, C64};

fn params(fx: f64, fy: f64) -> LatticeParams2D {
    LatticeParams2D::new(1.0, fx, fy).unwrap()
}

fn spec(x: f64, y: f64, px: f64, py: f64, sigma: f64) -> GaussianSpec2D {
    GaussianSpec2D::new(x, y, px, py, sigma).unwrap()
}

fn max_diff(a: &ComplexGrid2D, b: &ComplexGrid2D) -> f64 {
    let mut m = 0.0f64;
    for ((x, y), v) in a.iter() {
        m = m.max((v - b.get(x, y)).norm());
    }
    for ((x, y), v) in b.iter() {
        m = m.max((v - a.get(x, y)).norm());
    }
    m
}

fn random_state(rng: &mut ChaCha8Rng, xs: std::ops::RangeInclusive<i64>, ys: std::ops::RangeInclusive<i64>) -> ComplexGrid2D {
    let mut g = ComplexGrid2D::zeros(xs.clone(), ys.clone()).unwrap();
    let amps: Vec<C64> = g
        .amplitudes()
        .iter()
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    g = ComplexGrid2D::new(*xs.start(), *ys.start(), g.extent_x(), g.extent_y(), amps).unwrap();
    g
}

#[test]
fn symmetric_gaussian_is_real_positive_and_normalized() {
    let s = spec(0.0, 0.0, 0.0, 0.0, 5.0);
    let g = build_gaussian_2d(&s, -45..=45, -45..=45).unwrap();
    assert!((g.norm_sqr() - 1.0).abs() < 1e-12);
    for ((x, y), a) in g.iter() {
        assert!(a.re > 0.0 && a.im == 0.0);
        assert!((a - g.get(-x, y)).norm() < 1e-16);
        assert!((a - g.get(x, -y)).norm() < 1e-16);
    }
    let m = density_moments(&g);
    assert!(m.center_x.abs() < 1e-12 && m.center_y.abs() < 1e-12);
}

#[test]
fn gaussian_window_must_cover_eight_sigma() {
    let s = spec(0.0, 0.0, 0.0, 0.0, 5.0);
    assert!(matches!(
        build_gaussian_2d(&s, -30..=30, -45..=45),
        Err(Error::Window(_))
    ));
}

#[test]
fn marginal_reproduces_1d_gaussian() {
    let s = spec(1.3, -2.0, 0.4, 1.0, 2.5);
    let g = s.state();
    let one = GaussianSpec1D::new(1.3, 0.4, 2.5).unwrap().state();
    let marginal = g.marginal_x();
    for (i, x) in g.x_range().enumerate() {
        assert!((marginal[i] - one.get(x).norm_sqr()).abs() < 1e-12);
    }
}

#[test]
fn moments_of_separable_gaussian() {
    let g = spec(0.0, 0.0, 0.3, -0.2, 5.0).state();
    let m = density_moments(&g);
    let s0 = initial_variance(5.0).unwrap();
    assert!((m.var_x - s0).abs() < 1e-10);
    assert!((m.var_y - s0).abs() < 1e-10);
    assert!(m.cov_xy.abs() < 1e-12);
}

#[test]
fn hamiltonian_on_delta() {
    let mut g = ComplexGrid2D::zeros(-3..=3, -3..=3).unwrap();
    let delta = ComplexGrid2D::new(
        -3,
        -3,
        7,
        7,
        g.amplitudes()
            .iter()
            .enumerate()
            .map(|(k, _)| if k == 3 * 7 + 3 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
            .collect(),
    )
    .unwrap();
    let h = apply_hamiltonian(&delta, params(0.0, 0.0));
    for ((x, y), a) in h.iter() {
        let expect = if (x.abs() + y.abs()) == 1 { -1.0 } else { 0.0 };
        assert_eq!(a, C64::new(expect, 0.0), "({x},{y})");
    }

    g = ComplexGrid2D::zeros(0..=6, -5..=1).unwrap();
    let mut amps = g.amplitudes().to_vec();
    amps[3 * 7 + 3] = C64::new(1.0, 0.0); // site (3, -2)
    let delta = ComplexGrid2D::new(0, -5, 7, 7, amps).unwrap();
    let h = apply_hamiltonian(&delta, params(0.3, 0.7));
    assert!((h.get(3, -2) - C64::new(3.0 * 0.3 - 2.0 * 0.7, 0.0)).norm() < 1e-15);
}

#[test]
fn hamiltonian_is_hermitian() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = params(0.37, 0.81);
    for _ in 0..100 {
        let phi = random_state(&mut rng, -6..=5, 2..=10);
        let psi = random_state(&mut rng, -6..=5, 2..=10);
        let a = phi.inner(&apply_hamiltonian(&psi, p));
        let b = psi.inner(&apply_hamiltonian(&phi, p)).conj();
        assert!((a - b).norm() < 1e-12);
    }
}

#[test]
fn exact_2d_at_zero_time_is_initial_state() {
    let s = spec(2.0, -1.0, 0.5, -0.3, 3.0);
    let g = propagate_exact_2d(&s, params(0.2, 0.4), 0.0).unwrap();
    assert!(max_diff(&g, &s.state()) < 1e-16);
}

#[test]
fn exact_2d_revives_after_common_period() {
    let s = spec(0.0, 0.0, 0.4, 1.2, 2.0);
    let f = 0.3;
    let p = params(f, f);
    let g = propagate_exact_2d(&s, p, 2.0 * PI / f).unwrap();
    let g0 = s.state();
    for ((x, y), a) in g.iter() {
        assert!((a.norm_sqr() - g0.get(x, y).norm_sqr()).abs() < 1e-10);
    }
    assert!((g.norm_sqr() - 1.0).abs() < 1e-10);
}

#[test]
fn exact_2d_traces_circle() {
    // 2J/F = 25 on both axes, recipe start (0, 25) with P_x = π/2
    let f = 2.0 / 25.0;
    let s = spec(25.0 * (PI / 2.0).cos(), 25.0, PI / 2.0, 0.0, 5.0);
    let p = params(f, f);
    for k in 0..16 {
        let t = 2.0 * PI / f * k as f64 / 16.0;
        let m = density_moments(&propagate_exact_2d(&s, p, t).unwrap());
        let r = m.center_x.hypot(m.center_y);
        assert!((r - 25.0).abs() < 1.0, "t={t}: radius {r}");
    }
}

#[test]
fn numeric_at_zero_time_is_identity() {
    let g = build_gaussian_2d(&spec(0.0, 0.0, 0.0, 0.0, 2.0), -25..=25, -25..=25).unwrap();
    assert_eq!(propagate_numeric(&g, params(0.5, 0.5), 0.0, 1e-10).unwrap(), g);
}

#[test]
fn numeric_matches_exact_2d() {
    let s = spec(0.0, 0.0, 0.0, 0.0, 3.0);
    let p = params(0.5, 0.5);
    let t = PI / 0.5;
    let g = build_gaussian_2d(&s, -60..=60, -60..=60).unwrap();
    let numeric = propagate_numeric(&g, p, t, 1e-11).unwrap();
    let exact = propagate_exact_2d(&s, p, t).unwrap();
    assert!(max_diff(&numeric, &exact) < 1e-8);
}

#[test]
fn numeric_single_row_matches_dense_chain() {
    let chain = DenseChain::new(-30, 61, 1.0, 0.5);
    let one = GaussianSpec1D::new(0.0, 0.8, 1.5).unwrap().state_on(-30..=30).unwrap();
    let row = ComplexGrid2D::new(-30, 0, 61, 1, one.amplitudes().to_vec()).unwrap();
    let t = 4.0;
    let numeric = propagate_numeric(&row, params(0.5, 0.0), t, 1e-12).unwrap();
    let oracle = chain.evolve(one.amplitudes(), t);
    for (i, o) in oracle.iter().enumerate() {
        assert!((numeric.amplitudes()[i] - o).norm() < 1e-9);
    }
}

#[test]
fn numeric_conserves_norm_and_energy() {
    let s = spec(0.0, 0.0, 0.7, -0.4, 3.0);
    let p = params(0.5, 0.5);
    let g = build_gaussian_2d(&s, -50..=50, -50..=50).unwrap();
    let e0 = energy(&g, p);
    let mut state = g.clone();
    let dt = 2.0 * PI / 0.5 / 8.0;
    for _ in 0..8 {
        state = propagate_numeric(&state, p, dt, 1e-11).unwrap();
        assert!((state.norm_sqr() - 1.0).abs() < 1e-10);
        let e = energy(&state, p);
        assert!(((e - e0) / e0.abs().max(1.0)).abs() < 1e-8);
    }
}

#[test]
fn numeric_time_reversal() {
    let s = spec(0.0, 0.0, 0.2, 0.9, 2.0);
    let p = params(0.4, 0.7);
    let g = build_gaussian_2d(&s, -40..=40, -40..=40).unwrap();
    let tol = 1e-10;
    let forward = propagate_numeric(&g, p, 5.5, tol).unwrap();
    let back = propagate_numeric(&forward, p, -5.5, tol).unwrap();
    assert!(max_diff(&back, &g) < 2.0 * tol);
}

#[test]
fn numeric_reports_boundary_reach() {
    let s = spec(0.0, 0.0, 0.0, 0.0, 2.0);
    let g = build_gaussian_2d(&s, -17..=17, -17..=17).unwrap();
    let err = propagate_numeric(&g, params(0.05, 0.05), 30.0, 1e-10).unwrap_err();
    assert!(matches!(err, Error::BoundaryReach { .. }), "{err}");
    assert!(propagate_numeric(&g, params(0.05, 0.05), 1.0, -1.0).is_err());
}
