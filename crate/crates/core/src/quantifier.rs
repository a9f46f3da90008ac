//! RS uncertainty of time-evolving qubit states under unital dynamics, and
//! the accumulated-decrease quantifier `N = −∫_{dℜ/dt<0} dℜ/dt dt`.

use crate::dynamics::{propagate_trajectory, step_count, DensityMatrix, LindbladGenerator};
use crate::error::{Error, Result};
use crate::matrix::{commutator, hs_norm_sq, ComplexMatrix};
use crate::uncertainty::{linear_entropy, rs_lhs, BlochDirections};

const UNITALITY_TOL: f64 = 1e-10;

/// Sampled curve with provenance metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    times: Vec<f64>,
    values: Vec<f64>,
    pub metadata: Vec<(String, String)>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        if let Some(i) = times.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::UnorderedGrid(i + 1));
        }
        Ok(Self {
            times,
            values,
            metadata: Vec::new(),
        })
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.metadata.push((key.into(), value.into()));
        self
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// `‖[V, ρ]‖²_HS`
pub fn quantumness(v: &ComplexMatrix, rho: &DensityMatrix) -> Result<f64> {
    Ok(hs_norm_sq(&commutator(v, rho.matrix())?))
}

fn check_unital_at(gen: &LindbladGenerator, t: f64) -> Result<()> {
    let residual = gen.unitality_residual(t);
    if !(residual <= UNITALITY_TOL) {
        return Err(Error::NonUnital { t, residual });
    }
    Ok(())
}

/// Checks `𝓛_t(𝕀/d) = 0` on every grid time.
pub fn check_unital(gen: &LindbladGenerator, times: &[f64]) -> Result<()> {
    times.iter().try_for_each(|&t| check_unital_at(gen, t))
}

fn check_qubit(gen: &LindbladGenerator) -> Result<()> {
    if gen.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: gen.dim(),
        });
    }
    Ok(())
}

/// Uniform grid `0, h, ..., t_max` with `h ≤ dt`.
pub fn time_grid(t_max: f64, dt: f64) -> Result<(Vec<f64>, f64)> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "t_max = {t_max} must be positive"
        )));
    }
    if !(dt > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "dt = {dt} must be positive"
        )));
    }
    let n = step_count(t_max, dt);
    let h = t_max / n as f64;
    Ok(((0..=n).map(|k| k as f64 * h).collect(), h))
}

/// States `ρ(t)` on the grid of [`time_grid`], after verifying unitality.
pub fn unital_trajectory(
    gen: &LindbladGenerator,
    rho0: &DensityMatrix,
    t_max: f64,
    dt: f64,
) -> Result<(Vec<f64>, Vec<DensityMatrix>)> {
    check_qubit(gen)?;
    let (times, h) = time_grid(t_max, dt)?;
    check_unital(gen, &times)?;
    let states = propagate_trajectory(gen, rho0, 0.0, h, times.len() - 1)?;
    Ok((times, states))
}

/// `ℜ(r̂·σ, t̂·σ, ρ(t))` along the trajectory from `ρ0`.
pub fn rs_trajectory(
    gen: &LindbladGenerator,
    rho0: &DensityMatrix,
    dirs: &BlochDirections,
    t_max: f64,
    dt: f64,
) -> Result<TimeSeries> {
    let (times, states) = unital_trajectory(gen, rho0, t_max, dt)?;
    let pair = dirs.observables();
    let values = states
        .iter()
        .map(|rho| rs_lhs(&pair, rho.as_hermitian()))
        .collect::<Result<Vec<_>>>()?;
    Ok(TimeSeries::new(times, values)?
        .with_meta("quantity", "R")
        .with_meta("r", format!("{:?}", dirs.r()))
        .with_meta("t_dir", format!("{:?}", dirs.t())))
}

/// `dℜ/dt = (d/(d−1))[1 − (r̂·t̂)²] Σᵢ Γᵢ(t) Qᵢ(t)` with `d = 2`.
pub fn rs_rate_analytic(
    gen: &LindbladGenerator,
    rho: &DensityMatrix,
    dirs: &BlochDirections,
    t: f64,
) -> Result<f64> {
    check_qubit(gen)?;
    check_unital_at(gen, t)?;
    let mut sum = 0.0;
    for ch in gen.channels() {
        let g = ch.rate().eval(t);
        if g != 0.0 {
            sum += g * quantumness(ch.operator(), rho)?;
        }
    }
    let overlap = dirs.overlap();
    Ok(2.0 * (1.0 - overlap * overlap) * sum)
}

/// Sum of all decreases `−Δℜ` between consecutive samples.
pub fn nm_quantifier(series: &TimeSeries) -> Result<f64> {
    if series.len() < 2 {
        return Err(Error::InvalidArgument(
            "quantifier needs at least two samples".into(),
        ));
    }
    Ok(series
        .values()
        .windows(2)
        .map(|w| w[1] - w[0])
        .filter(|&d| d < 0.0)
        .map(|d| -d)
        .sum())
}

/// Linear-entropy trajectory `S_l(ρ(t))`.
pub fn linear_entropy_series(
    gen: &LindbladGenerator,
    rho0: &DensityMatrix,
    t_max: f64,
    dt: f64,
) -> Result<TimeSeries> {
    let (times, states) = unital_trajectory(gen, rho0, t_max, dt)?;
    let values = states
        .iter()
        .map(linear_entropy)
        .collect::<Result<Vec<_>>>()?;
    Ok(TimeSeries::new(times, values)?.with_meta("quantity", "S_l"))
}

/// `−∫_{Ṡ_l<0} Ṡ_l dt` on the same grid as [`rs_trajectory`].
pub fn purity_quantifier(
    gen: &LindbladGenerator,
    rho0: &DensityMatrix,
    t_max: f64,
    dt: f64,
) -> Result<f64> {
    nm_quantifier(&linear_entropy_series(gen, rho0, t_max, dt)?)
}
