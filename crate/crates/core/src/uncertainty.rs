//! Uncertainty functionals over unit-trace Hermitian matrices.
//!
//! None of these functions require the state to be positive semidefinite:
//! evaluating them on non-positive Choi matrices is how indivisibility is
//! detected. Use [`DensityMatrix::new`] where a physical state is required.

use crate::dynamics::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::{anticommutator, commutator, pauli, ComplexMatrix, HermitianMatrix};

/// Relations count as violated only below this margin.
pub const VIOLATION_TOL: f64 = 1e-9;

const STATE_TRACE_TOL: f64 = 1e-8;
const IMAG_RESIDUE_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct ObservablePair {
    pub a: HermitianMatrix,
    pub b: HermitianMatrix,
}

impl ObservablePair {
    pub fn new(a: HermitianMatrix, b: HermitianMatrix) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        Ok(Self { a, b })
    }

    /// Two-qubit Pauli products given by labels such as `"xy"`, `"xx"`.
    pub fn from_pauli_labels(a: &str, b: &str) -> Result<Self> {
        Self::new(
            HermitianMatrix::new(pauli::from_label(a)?)?,
            HermitianMatrix::new(pauli::from_label(b)?)?,
        )
    }

    /// `S_x = σx⊗σy`, `S_y = σx⊗σx`.
    pub fn default_choi_pair() -> Self {
        Self::from_pauli_labels("xy", "xx").expect("static labels")
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

/// Unit Bloch directions `r̂`, `t̂` selecting `A = r̂·σ`, `B = t̂·σ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochDirections {
    r: [f64; 3],
    t: [f64; 3],
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

impl BlochDirections {
    pub fn new(r: [f64; 3], t: [f64; 3]) -> Result<Self> {
        for (name, v) in [("r", r), ("t", t)] {
            if (norm3(v) - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidArgument(format!(
                    "direction {name} has norm {}, expected 1",
                    norm3(v)
                )));
            }
        }
        Ok(Self { r, t })
    }

    /// Normalizes both vectors first.
    pub fn normalized(r: [f64; 3], t: [f64; 3]) -> Result<Self> {
        let unit = |v: [f64; 3]| -> Result<[f64; 3]> {
            let n = norm3(v);
            if !(n > 0.0) || !n.is_finite() {
                return Err(Error::InvalidArgument("zero direction vector".into()));
            }
            Ok([v[0] / n, v[1] / n, v[2] / n])
        };
        Ok(Self {
            r: unit(r)?,
            t: unit(t)?,
        })
    }

    /// `r̂ = x̂`, `t̂ = ŷ`.
    pub fn orthogonal_xy() -> Self {
        Self {
            r: [1.0, 0.0, 0.0],
            t: [0.0, 1.0, 0.0],
        }
    }

    pub fn r(&self) -> [f64; 3] {
        self.r
    }

    pub fn t(&self) -> [f64; 3] {
        self.t
    }

    pub fn overlap(&self) -> f64 {
        self.r.iter().zip(&self.t).map(|(a, b)| a * b).sum()
    }

    pub fn observables(&self) -> ObservablePair {
        let a = HermitianMatrix::symmetrized(&pauli::dot(self.r));
        let b = HermitianMatrix::symmetrized(&pauli::dot(self.t));
        ObservablePair { a, b }
    }
}

fn check_state(m: &ComplexMatrix, state: &HermitianMatrix) -> Result<()> {
    if m.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            found: m.dim(),
        });
    }
    let tr = state.trace();
    if (tr - 1.0).abs() > STATE_TRACE_TOL {
        return Err(Error::NotUnitTrace(tr));
    }
    Ok(())
}

/// `Tr[state · M]` for an arbitrary (not necessarily Hermitian) operator.
fn complex_expectation(m: &ComplexMatrix, state: &HermitianMatrix) -> num_complex::Complex64 {
    let s = state.matrix();
    let n = m.dim();
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += s[(i, k)] * m[(k, i)];
        }
    }
    acc
}

pub fn expectation(m: &HermitianMatrix, state: &HermitianMatrix) -> Result<f64> {
    check_state(m.matrix(), state)?;
    let z = complex_expectation(m.matrix(), state);
    if z.im.abs() > IMAG_RESIDUE_TOL * z.re.abs().max(1.0) {
        return Err(Error::Numerical(format!(
            "expectation has imaginary residue {:e}",
            z.im
        )));
    }
    Ok(z.re)
}

/// `⟨M²⟩ − ⟨M⟩²`; negative values are possible on non-positive inputs.
pub fn variance(m: &HermitianMatrix, state: &HermitianMatrix) -> Result<f64> {
    let mean = expectation(m, state)?;
    let sq = HermitianMatrix::symmetrized(&(m.matrix() * m.matrix()));
    Ok(expectation(&sq, state)? - mean * mean)
}

/// Left-hand side of the Robertson–Schrödinger relation,
/// `Δ²A Δ²B − ¼|⟨[A,B]⟩|² − ¼|⟨{A,B}⟩ − 2⟨A⟩⟨B⟩|²`.
pub fn rs_lhs(pair: &ObservablePair, state: &HermitianMatrix) -> Result<f64> {
    let (a, b) = (&pair.a, &pair.b);
    let mean_a = expectation(a, state)?;
    let mean_b = expectation(b, state)?;
    let var_a = variance(a, state)?;
    let var_b = variance(b, state)?;
    let comm = complex_expectation(&commutator(a.matrix(), b.matrix())?, state);
    let anti = complex_expectation(&anticommutator(a.matrix(), b.matrix())?, state);
    let cov = anti - 2.0 * mean_a * mean_b;
    Ok(var_a * var_b - 0.25 * comm.norm_sqr() - 0.25 * cov.norm_sqr())
}

/// Both sides of `Δ²A + Δ²B ≥ |⟨[A,B]⟩|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumUncertainty {
    pub lhs: f64,
    pub rhs: f64,
}

impl SumUncertainty {
    pub fn margin(&self) -> f64 {
        self.lhs - self.rhs
    }

    pub fn is_violated(&self, tol: f64) -> bool {
        self.margin() < -tol
    }
}

pub fn sum_uncertainty(pair: &ObservablePair, state: &HermitianMatrix) -> Result<SumUncertainty> {
    let lhs = variance(&pair.a, state)? + variance(&pair.b, state)?;
    let comm = commutator(pair.a.matrix(), pair.b.matrix())?;
    check_state(&comm, state)?;
    let rhs = complex_expectation(&comm, state).norm();
    Ok(SumUncertainty { lhs, rhs })
}

/// `Σᵢ Δ²(Aᵢ)_C − Σₖ pₖ Σᵢ Δ²(Aᵢ)_{Cₖ}` with `C = Σₖ pₖ Cₖ`.
pub fn variance_convexity_gap(
    observables: &[HermitianMatrix],
    components: &[HermitianMatrix],
    weights: &[f64],
) -> Result<f64> {
    if components.is_empty() || components.len() != weights.len() {
        return Err(Error::InvalidArgument(format!(
            "{} components but {} weights",
            components.len(),
            weights.len()
        )));
    }
    if weights.iter().any(|&w| !(w >= 0.0)) {
        return Err(Error::InvalidArgument("weights must be nonnegative".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "weights sum to {total}, not 1"
        )));
    }
    let dim = components[0].dim();
    let mut mix = ComplexMatrix::zeros(dim);
    for (c, &w) in components.iter().zip(weights) {
        if c.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.dim(),
            });
        }
        mix.add_scaled(num_complex::Complex64::new(w, 0.0), c.matrix());
    }
    let mix = HermitianMatrix::symmetrized(&mix);

    let mut gap = 0.0;
    for a in observables {
        gap += variance(a, &mix)?;
        for (c, &w) in components.iter().zip(weights) {
            gap -= w * variance(a, c)?;
        }
    }
    Ok(gap)
}

/// `(d/(d−1))(1 − Tr ρ²)`
pub fn linear_entropy(rho: &DensityMatrix) -> Result<f64> {
    let d = rho.dim();
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "linear entropy needs d >= 2, got {d}"
        )));
    }
    let d = d as f64;
    Ok(d / (d - 1.0) * (1.0 - rho.purity()))
}

/// `[1 − (r̂·t̂)²] S_l(ρ)` for a qubit.
pub fn rs_factorized(dirs: &BlochDirections, rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: rho.dim(),
        });
    }
    let overlap = dirs.overlap();
    Ok((1.0 - overlap * overlap) * linear_entropy(rho)?)
}
