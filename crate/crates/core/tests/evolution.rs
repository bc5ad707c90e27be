mod common;

use boussinesq::evolution::{rk4_step, BoussinesqRhs, SpectralState};
use boussinesq::{
    evolve, EvolutionConfig, Forcing, Grid, Integrator, PhysicalParams, SpongeProfile, Topography,
    Transform, WaveState,
};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_field(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn linear_params(beta: f64, froude: f64) -> PhysicalParams<f64> {
    PhysicalParams::linearised(beta, 0.01, froude).unwrap()
}

#[test]
fn rhs_matches_per_mode_matrix() {
    let (n, dx, beta, froude) = (64, 0.5, 0.3, -0.7);
    let g = grid(n, dx);
    let t = Transform::new(g.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let state = SpectralState {
        eta_hat: t.forward_real(&random_field(n, &mut rng)),
        u_hat: t.forward_real(&random_field(n, &mut rng)),
    };
    let p = linear_params(beta, froude);
    let mut rhs = BoussinesqRhs::new(&p, g.clone(), None, &Forcing::none(&g), false);
    let mut out = SpectralState::zeros(n);
    rhs.eval(&state, &mut out, 0.0).unwrap();
    for j in 0..n {
        let m = mode_matrix(wavenumber(j, n, dx), froude, beta);
        let [de, du] = mat_vec(&m, [state.eta_hat[j], state.u_hat[j]]);
        let scale = 1.0 + de.norm().max(du.norm());
        assert!((out.eta_hat[j] - de).norm() < 1e-12 * scale, "eta mode {j}");
        assert!((out.u_hat[j] - du).norm() < 1e-12 * scale, "u mode {j}");
    }
}

#[test]
fn stationary_wave_is_a_fixed_point() {
    let sol = reference_wave();
    let p = PhysicalParams::reference().with_froude(sol.froude);
    let g = sol.grid.clone();
    let (eta_hat, u_hat) = sol.spectra();
    let state = SpectralState { eta_hat, u_hat };
    let mut rhs = BoussinesqRhs::new(&p, g.clone(), None, &Forcing::none(&g), false);
    let mut out = SpectralState::zeros(g.len());
    rhs.eval(&state, &mut out, 0.0).unwrap();
    let norm = out
        .eta_hat
        .iter()
        .chain(&out.u_hat)
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    assert!(norm < 1e-8, "max |rhs| = {norm:e}");

    let next = rk4_step(&state, 0.01, &mut rhs).unwrap();
    let t = Transform::new(g);
    let eta1 = t.inverse_real(&next.eta_hat).values;
    let change = max_diff(&eta1, &sol.eta);
    assert!(change < 1e-10, "one-step change {change:e}");
}

/// Linear system with a topography moving at speed `F`, solved per mode in the
/// rest frame (forcing phase `e^{ikFt}`) and shifted back to the moving frame.
#[test]
fn moving_frame_matches_translated_forcing() {
    let (n, dx, beta, froude, eps) = (256, 0.2, 0.01, 1.5, 0.01);
    let g = grid(n, dx);
    let p = linear_params(beta, froude);
    let forcing = Forcing::new(&Topography::Gaussian { scale: eps }, &g).unwrap();
    let eta0: Vec<f64> = g
        .points()
        .iter()
        .map(|&x| 0.01 * (-(x - 3.0) * (x - 3.0) / 4.0).exp())
        .collect();
    let u0: Vec<f64> = g
        .points()
        .iter()
        .map(|&x| 0.005 * (-x * x / 2.0).exp())
        .collect();
    let mut cfg = EvolutionConfig::new(
        p,
        g.clone(),
        0.01,
        5.0,
        5.0,
        WaveState::new(eta0.clone(), u0.clone(), 0.0),
    );
    cfg.forcing = forcing.clone();
    let last = evolve(&cfg).unwrap().pop().unwrap();

    let t_end = 5.0;
    let (e0, v0, h) = (dft(&eta0), dft(&u0), dft(&forcing.topography));
    let mut eta_hat = vec![C::new(0.0, 0.0); n];
    let mut u_hat = vec![C::new(0.0, 0.0); n];
    for j in 0..n {
        let k = wavenumber(j, n, dx);
        let ik = C::new(0.0, k);
        let d = 1.0 + beta * k * k / 3.0;
        let rest = mode_matrix(k, 0.0, beta);
        let c = [
            ik * froude * h[j],
            -(ik * ik * ik) * (beta / 2.0 * froude * froude) * h[j] / d,
        ];
        let omega = C::new(0.0, k * froude);
        let r = resolvent(&rest, omega, c);
        let prop = expm(&rest, t_end);
        let y = mat_vec(&prop, [e0[j] - r[0], v0[j] - r[1]]);
        let phase = (omega * t_end).exp();
        let shift = (-omega * t_end).exp();
        eta_hat[j] = (y[0] + r[0] * phase) * shift;
        u_hat[j] = (y[1] + r[1] * phase) * shift;
    }
    let t = Transform::new(g);
    let eta = t.inverse_real(&eta_hat).values;
    let u = t.inverse_real(&u_hat).values;
    let err = max_diff(&eta, &last.eta).max(max_diff(&u, &last.u));
    assert!(err < 1e-11, "frame mismatch {err:e}");
}

fn kdv_pulse(g: &Grid<f64>) -> WaveState<f64> {
    let eta: Vec<f64> = g
        .points()
        .iter()
        .map(|&x| 0.4 / (0.5 * x).cosh().powi(2))
        .collect();
    WaveState::new(eta.clone(), eta, 0.0)
}

fn final_eta(cfg: &EvolutionConfig<f64>, dt: f64) -> Vec<f64> {
    let mut c = cfg.clone();
    c.dt = dt;
    evolve(&c).unwrap().pop().unwrap().eta
}

fn convergence_ratio(cfg: &EvolutionConfig<f64>, dt: f64) -> f64 {
    let a = final_eta(cfg, dt);
    let b = final_eta(cfg, dt / 2.0);
    let c = final_eta(cfg, dt / 4.0);
    max_diff(&a, &b) / max_diff(&b, &c)
}

#[test]
fn fourth_order_in_time_linear() {
    let g = grid(256, 0.2);
    let p = linear_params(0.01, 0.3);
    let cfg = EvolutionConfig::new(p, g.clone(), 0.1, 4.0, 4.0, kdv_pulse(&g));
    let ratio = convergence_ratio(&cfg, 0.1);
    assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn fourth_order_in_time_nonlinear() {
    let g = grid(256, 0.2);
    let p = PhysicalParams::new(0.5, 0.5, 0.01, 0.0).unwrap();
    let cfg = EvolutionConfig::new(p, g.clone(), 0.1, 4.0, 4.0, kdv_pulse(&g));
    let ratio = convergence_ratio(&cfg, 0.1);
    assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn mean_elevation_is_conserved_without_sponge() {
    let g = grid(512, 0.2);
    let p = PhysicalParams::reference().with_froude(-0.5);
    let init = kdv_pulse(&g);
    let m0 = init.mean_eta();
    let cfg = EvolutionConfig::new(p, g.clone(), 0.01, 10.0, 2.0, init.clone());
    for s in evolve(&cfg).unwrap() {
        assert!((s.mean_eta() - m0).abs() < 1e-12, "t = {}", s.time);
        assert!(s.discarded_imaginary < 1e-10);
    }

    // the sponge term is the only one that touches the mean
    let mut damped = cfg.clone();
    damped.sponge = Some(SpongeProfile::uniform(0.2, &g).unwrap());
    let last = evolve(&damped).unwrap().pop().unwrap();
    assert!(last.mean_eta() < 0.5 * m0);
}

/// Zero-mass packet centred inside the sponge, `u = 0`.
fn packet_in_sponge(g: &Grid<f64>) -> WaveState<f64> {
    let eta = g
        .points()
        .iter()
        .map(|&x| {
            let y = x - 98.0;
            0.1 * y * (-y * y / 4.0).exp()
        })
        .collect();
    WaveState::new(eta, vec![0.0; g.len()], 0.0)
}

fn sponge_energy(a1: f64, t_final: f64, interval: f64) -> Vec<f64> {
    let g = grid(1024, 0.2);
    let mut cfg = EvolutionConfig::new(
        PhysicalParams::reference(),
        g.clone(),
        0.01,
        t_final,
        interval,
        packet_in_sponge(&g),
    );
    cfg.sponge = Some(SpongeProfile::with_margin(a1, 12.4, &g).unwrap());
    evolve(&cfg)
        .unwrap()
        .iter()
        .map(|s| s.energy(g.dx()))
        .collect()
}

#[test]
fn gentle_sponge_dissipates_monotonically() {
    for a1 in [0.05, 0.2, 0.5] {
        let e = sponge_energy(a1, 40.0, 0.5);
        for w in e.windows(2) {
            assert!(w[1] <= w[0], "a1 = {a1}: {} -> {}", w[0], w[1]);
        }
        assert!(e[e.len() - 1] < 0.5 * e[0]);
    }
}

#[test]
fn strong_sponge_dissipates_after_transient() {
    // the s²η antiderivative first pumps energy into u, then both decay
    let e = sponge_energy(10.0, 2.0, 0.05);
    let (peak_at, peak) = e.iter().enumerate().fold(
        (0, 0.0),
        |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc },
    );
    assert!(peak_at <= 4);
    for w in e[peak_at..].windows(2) {
        assert!(w[1] <= w[0], "{} -> {}", w[0], w[1]);
    }
    assert!(e[e.len() - 1] < 1e-5 * peak);
}

#[test]
fn topography_in_a_current_generates_waves() {
    let eps = 0.01;
    let g = grid(4096, 0.1);
    let p = PhysicalParams::new(0.01, 0.01, eps, 1.0).unwrap();
    let mut cfg = EvolutionConfig::new(p, g.clone(), 0.01, 100.0, 100.0, WaveState::zero(&g));
    cfg.forcing = Forcing::new(&Topography::Gaussian { scale: eps }, &g).unwrap();
    let coarse = final_eta(&cfg, 0.01);
    let fine = final_eta(&cfg, 0.005);
    assert!(
        max_diff(&coarse, &fine) < 1e-8,
        "dt sensitivity {:e}",
        max_diff(&coarse, &fine)
    );
    let region = |lo: f64, hi: f64| {
        g.points()
            .iter()
            .zip(&fine)
            .filter(|(x, _)| **x > lo && **x < hi)
            .map(|(_, e)| e.abs())
            .fold(0.0, f64::max)
    };
    // characteristic speeds in the frame are F ± 1: the upstream train stays
    // near the obstacle and the downstream front has travelled about 2t
    assert!(
        region(-30.0, -2.0) > 1e-3,
        "upstream {:e}",
        region(-30.0, -2.0)
    );
    assert!(
        region(150.0, 205.0) > 1e-4,
        "downstream {:e}",
        region(150.0, 205.0)
    );
    assert!(region(-200.0, -30.0) < 1e-10);
}

#[test]
fn integrator_is_deterministic_and_resumable() {
    let g = grid(128, 0.3);
    let p = PhysicalParams::new(0.1, 0.1, 0.01, -0.3).unwrap();
    let cfg = EvolutionConfig::new(p, g.clone(), 0.01, 1.0, 0.5, kdv_pulse(&g));
    let a = evolve(&cfg).unwrap();
    let b = evolve(&cfg).unwrap();
    assert_eq!(a, b);
    let mut it = Integrator::new(&cfg).unwrap();
    it.advance(100).unwrap();
    assert_eq!(it.snapshot().eta, a[2].eta);
    assert!((it.time() - 1.0).abs() < 1e-15);
}
