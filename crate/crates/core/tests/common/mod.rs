#![allow(dead_code)]

use std::sync::Arc;

use boussinesq::stationary::solve_solitary_wave;
use boussinesq::{Grid, NewtonOptions, PhysicalParams, StationarySolution};
use num_complex::Complex64;

pub type C = Complex64;
pub type Mat2 = [[C; 2]; 2];

pub fn grid(n: usize, dx: f64) -> Arc<Grid<f64>> {
    Arc::new(Grid::new(n, dx).unwrap())
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Stationary solitary wave at the reference parameters (n = 1024, dx = 0.2, A = 0.44).
pub fn reference_wave() -> StationarySolution<f64> {
    solve_solitary_wave(
        0.44,
        &PhysicalParams::reference(),
        grid(1024, 0.2),
        &NewtonOptions::default(),
    )
    .unwrap()
}

/// Naive DFT with the unnormalized forward convention.
pub fn dft(values: &[f64]) -> Vec<C> {
    let n = values.len();
    (0..n)
        .map(|m| {
            values
                .iter()
                .enumerate()
                .fold(C::new(0.0, 0.0), |acc, (j, &v)| {
                    let th = -2.0 * std::f64::consts::PI * (m * j % n) as f64 / n as f64;
                    acc + C::from_polar(v, th)
                })
        })
        .collect()
}

/// Wavenumber of DFT slot `j`, with the Nyquist slot set to zero.
pub fn wavenumber(j: usize, n: usize, dx: f64) -> f64 {
    let m = if j < n / 2 {
        j as f64
    } else if j == n / 2 {
        0.0
    } else {
        j as f64 - n as f64
    };
    2.0 * std::f64::consts::PI * m / (n as f64 * dx)
}

/// Linearised flat-bottom mode matrix (`α = 0`, no sponge):
/// `η' = −ikFη − iku`, `(1 + βk²/3)u' = −ikFu − ikη − (β/3)F(ik)³u`.
pub fn mode_matrix(k: f64, froude: f64, beta: f64) -> Mat2 {
    let ik = C::new(0.0, k);
    let d = 1.0 + beta * k * k / 3.0;
    [
        [-ik * froude, -ik],
        [
            -ik / d,
            (-ik * froude + ik * ik * ik * (beta / 3.0 * froude)) / d,
        ],
    ]
}

pub fn mat_vec(m: &Mat2, v: [C; 2]) -> [C; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[C::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// `e^{Mt}` by scaling and squaring of a truncated Taylor series.
pub fn expm(m: &Mat2, t: f64) -> Mat2 {
    let norm = m.iter().flatten().map(|c| c.norm()).sum::<f64>() * t.abs();
    let squarings = (norm.max(1.0).log2().ceil() as i32 + 4).max(0);
    let h = t / 2f64.powi(squarings);
    let a = [[m[0][0] * h, m[0][1] * h], [m[1][0] * h, m[1][1] * h]];
    let one = C::new(1.0, 0.0);
    let zero = C::new(0.0, 0.0);
    let mut result = [[one, zero], [zero, one]];
    let mut term = result;
    for p in 1..30 {
        term = mat_mul(&term, &a);
        for row in term.iter_mut() {
            for c in row.iter_mut() {
                *c /= p as f64;
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = mat_mul(&result, &result);
    }
    result
}

/// Solves `(λI − M)y = c` for a 2×2 system.
pub fn resolvent(m: &Mat2, lambda: C, c: [C; 2]) -> [C; 2] {
    let a = lambda - m[0][0];
    let b = -m[0][1];
    let cc = -m[1][0];
    let d = lambda - m[1][1];
    let det = a * d - b * cc;
    [(d * c[0] - b * c[1]) / det, (a * c[1] - cc * c[0]) / det]
}
