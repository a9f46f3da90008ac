#![allow(dead_code)]

use nmwitness_core::matrix::{ComplexMatrix, HermitianMatrix, C64};
use nmwitness_core::models::DephasingParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box-Muller
    let u: f64 = rng.random_range(f64::EPSILON..1.0);
    let v: f64 = rng.random();
    (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
}

pub fn random_complex_vec(d: usize, rng: &mut impl Rng) -> Vec<C64> {
    (0..d)
        .map(|_| C64::new(gaussian(rng), gaussian(rng)))
        .collect()
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Haar-ish unitary from Gram-Schmidt on Gaussian columns; columns are returned.
pub fn random_unitary_columns(d: usize, rng: &mut impl Rng) -> Vec<Vec<C64>> {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v = random_complex_vec(d, rng);
        for c in &cols {
            let p = dot(c, &v);
            for (vi, ci) in v.iter_mut().zip(c) {
                *vi -= p * ci;
            }
        }
        let n = dot(&v, &v).re.sqrt();
        if n < 1e-6 {
            continue;
        }
        cols.push(v.into_iter().map(|x| x / n).collect());
    }
    cols
}

/// `Σ λₖ |uₖ⟩⟨uₖ|`
pub fn from_spectrum(evals: &[f64], cols: &[Vec<C64>]) -> HermitianMatrix {
    let d = evals.len();
    let mut m = ComplexMatrix::zeros(d);
    for (lam, u) in evals.iter().zip(cols) {
        m.add_scaled(C64::new(*lam, 0.0), &ComplexMatrix::outer(u, u));
    }
    HermitianMatrix::symmetrized(&m)
}

pub fn random_hermitian(d: usize, rng: &mut impl Rng) -> HermitianMatrix {
    let mut m = ComplexMatrix::zeros(d);
    for i in 0..d {
        m[(i, i)] = C64::new(gaussian(rng), 0.0);
        for j in i + 1..d {
            let z = C64::new(gaussian(rng), gaussian(rng));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianMatrix::new(m).unwrap()
}

pub fn random_density(d: usize, rng: &mut impl Rng) -> HermitianMatrix {
    let mut p: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
    let s: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= s);
    from_spectrum(&p, &random_unitary_columns(d, rng))
}

pub fn random_unit3(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v = [gaussian(rng), gaussian(rng), gaussian(rng)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-6 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

pub fn random_bloch(rng: &mut impl Rng) -> [f64; 3] {
    let u = random_unit3(rng);
    let r: f64 = rng.random::<f64>().cbrt();
    [r * u[0], r * u[1], r * u[2]]
}

/// `Tr(AB)`
pub fn tr_prod(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    let d = a.dim();
    let mut s = C64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            s += a[(i, j)] * b[(j, i)];
        }
    }
    s
}

/// Closed-form antiderivative factor for the dephasing rate:
/// `∫ₐᵇ γ = −2 ln(G(b)/G(a))` with `G(t) = e^{−λt/2}(cos(wt/2) + (λ/w) sin(wt/2))`,
/// `w = √(2γ₀λ − λ²)`, continued to `cosh`/`sinh` when `2γ₀ < λ`.
pub fn dephasing_g(p: &DephasingParams, t: f64) -> f64 {
    let (l, g0) = (p.lambda(), p.gamma0());
    let disc = 2.0 * g0 * l - l * l;
    let osc = if disc > 0.0 {
        let w = disc.sqrt();
        (w * t / 2.0).cos() + l / w * (w * t / 2.0).sin()
    } else if disc < 0.0 {
        let w = (-disc).sqrt();
        (w * t / 2.0).cosh() + l / w * (w * t / 2.0).sinh()
    } else {
        1.0 + l * t / 2.0
    };
    (-l * t / 2.0).exp() * osc
}

/// Coherence factor `q = exp(−2∫γ) = (G(b)/G(a))⁴` over `[t, t+ε]`.
pub fn dephasing_q(p: &DephasingParams, t: f64, eps: f64) -> f64 {
    (dephasing_g(p, t + eps) / dephasing_g(p, t)).powi(4)
}

/// `½[[1,0,0,q],[0,0,0,0],[0,0,0,0],[q,0,0,1]]`
pub fn choi_from_q(q: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    m[(0, 0)] = C64::new(0.5, 0.0);
    m[(3, 3)] = C64::new(0.5, 0.0);
    m[(0, 3)] = C64::new(q / 2.0, 0.0);
    m[(3, 0)] = C64::new(q / 2.0, 0.0);
    m
}
