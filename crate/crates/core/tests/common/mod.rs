//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use qwalk_core::{CoinAngles, InitialState};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type M2 = [[Complex64; 2]; 2];
pub type M4 = [[Complex64; 4]; 4];

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn mul2(a: &M2, b: &M2) -> M2 {
    let mut out = [[c(0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn kron(a: &M2, b: &M2) -> M4 {
    let mut out = [[c(0.0); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn real_coin(theta: f64) -> M2 {
    let (s, co) = theta.sin_cos();
    [[c(co), c(s)], [c(s), c(-co)]]
}

/// Spectral projectors of a 2×2 matrix with distinct eigenvalues.
fn projectors2(a: &M2) -> [M2; 2] {
    let tr = a[0][0] + a[1][1];
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let disc = (tr * tr - 4.0 * det).sqrt();
    let l = [(tr + disc) / 2.0, (tr - disc) / 2.0];
    let proj = |j: usize| {
        let other = l[1 - j];
        let d = l[j] - other;
        let mut p = *a;
        p[0][0] -= other;
        p[1][1] -= other;
        for row in p.iter_mut() {
            for v in row.iter_mut() {
                *v /= d;
            }
        }
        p
    };
    [proj(0), proj(1)]
}

/// Projector onto the eigenvalue-one subspace of the one-step operator in
/// momentum space. With `D(k) = diag(e^{ik/2}, e^{-ik/2})` on each qubit the
/// step is `(D U₁ D U₂) ⊗ (D U₂ D U₁)`; its eigenvalues are `λ_aλ_b`, and the
/// products `λ₁λ₂ = 1` do not depend on `k`.
pub fn stationary_projector(theta1: f64, theta2: f64, k: f64) -> M4 {
    let u1 = real_coin(theta1);
    let u2 = real_coin(theta2);
    let d: M2 = [
        [Complex64::from_polar(1.0, k / 2.0), c(0.0)],
        [c(0.0), Complex64::from_polar(1.0, -k / 2.0)],
    ];
    let a = mul2(&mul2(&mul2(&d, &u1), &d), &u2);
    let b = mul2(&mul2(&mul2(&d, &u2), &d), &u1);
    let pa = projectors2(&a);
    let pb = projectors2(&b);
    // A and B are conjugate, so they share eigenvalues; match them up by
    // checking which pairing of projectors gives eigenvalue one.
    let lam = |m: &M2, p: &M2| {
        // eigenvalue of m on the range of p: tr(m p) since p has rank one.
        let mp = mul2(m, p);
        mp[0][0] + mp[1][1]
    };
    let la = [lam(&a, &pa[0]), lam(&a, &pa[1])];
    let lb = [lam(&b, &pb[0]), lam(&b, &pb[1])];
    let mut out = [[c(0.0); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            if (la[i] * lb[j] - 1.0).norm() < 1e-6 {
                let t = kron(&pa[i], &pb[j]);
                for r in 0..4 {
                    for s in 0..4 {
                        out[r][s] += t[r][s];
                    }
                }
            }
        }
    }
    out
}

/// `∫ e^{ikx} P(k) dk/2π` by the midpoint rule on `K` nodes; the integrand is
/// smooth and periodic, so the rule converges geometrically.
pub fn stationary_kernels(theta1: f64, theta2: f64, xs: &[i64], nodes: usize) -> Vec<M4> {
    let mut out = vec![[[c(0.0); 4]; 4]; xs.len()];
    for i in 0..nodes {
        let k = -PI + 2.0 * PI * (i as f64 + 0.5) / nodes as f64;
        let p = stationary_projector(theta1, theta2, k);
        for (slot, &x) in out.iter_mut().zip(xs) {
            let phase = Complex64::from_polar(1.0, k * x as f64) / nodes as f64;
            for r in 0..4 {
                for s in 0..4 {
                    slot[r][s] += phase * p[r][s];
                }
            }
        }
    }
    out
}

pub fn apply4(m: &M4, q: &[Complex64; 4]) -> [Complex64; 4] {
    let mut out = [c(0.0); 4];
    for r in 0..4 {
        for s in 0..4 {
            out[r] += m[r][s] * q[s];
        }
    }
    out
}

/// `Σ_k ⟨q|P(k)|q⟩ / K`: the total localized mass.
pub fn localized_mass(theta1: f64, theta2: f64, q: &[Complex64; 4], nodes: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..nodes {
        let k = -PI + 2.0 * PI * (i as f64 + 0.5) / nodes as f64;
        let p = stationary_projector(theta1, theta2, k);
        let pq = apply4(&p, q);
        acc += (0..4).map(|j| (q[j].conj() * pq[j]).re).sum::<f64>();
    }
    acc / nodes as f64
}

/// Angle in multiples of π, uniformly in a random quadrant and at least
/// `margin` away from its edges.
pub fn random_angle(rng: &mut ChaCha8Rng, margin: f64) -> f64 {
    let quadrant = rng.gen_range(0..4) as f64;
    0.5 * quadrant + rng.gen_range(margin..0.5 - margin)
}

pub fn random_coins(rng: &mut ChaCha8Rng, margin: f64) -> CoinAngles {
    CoinAngles::from_pi_multiples(random_angle(rng, margin), random_angle(rng, margin)).unwrap()
}

pub fn random_state(rng: &mut ChaCha8Rng) -> InitialState {
    let raw: Vec<Complex64> = (0..4)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let n = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    InitialState::new(raw[0] / n, raw[1] / n, raw[2] / n, raw[3] / n).unwrap()
}

pub fn fig12_state() -> InitialState {
    InitialState::phi_family(5.0 / 6.0)
}

pub fn half_state() -> InitialState {
    InitialState::real(0.5, 0.5, 0.5, 0.5).unwrap()
}

/// The four coin pairs used throughout the figures, as multiples of π.
pub const FIGURE_COINS: [(f64, f64); 4] = [
    (1.0 / 6.0, 1.0 / 6.0),
    (0.25, 0.25),
    (1.0 / 6.0, 0.25),
    (0.25, 1.0 / 6.0),
];
