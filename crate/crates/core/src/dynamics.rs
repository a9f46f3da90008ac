//! Time-local Lindblad evolution of states and of intermediate-interval Choi
//! states `C(t+ε, t) = (𝕀⊗Λ(t+ε, t))(|φ><φ|)`.

use crate::error::{Error, Result};
use crate::matrix::{
    hermitian_eig, kron, pauli, ComplexMatrix, HermitianMatrix, C64, I, ONE, ZERO,
};
use crate::rate::RateFunction;

/// Default RK4 step for state trajectories.
pub const DEFAULT_STATE_DT: f64 = 1e-3;
/// Default width of the intermediate interval.
pub const DEFAULT_EPSILON: f64 = 0.01;
/// Default number of RK4 steps across one intermediate interval.
pub const DEFAULT_CHOI_STEPS: usize = 100;

const BLOWUP_TOL: f64 = 1e-6;
const STATE_TRACE_TOL: f64 = 1e-10;
const STATE_PSD_TOL: f64 = 1e-10;
const CHOI_TRACE_TOL: f64 = 1e-8;

/// One dissipative channel `Γ(t)(L ρ L† − ½{L†L, ρ})`.
#[derive(Clone, Debug)]
pub struct Channel {
    operator: ComplexMatrix,
    ldag_l: ComplexMatrix,
    rate: RateFunction,
    label: String,
}

impl Channel {
    pub fn operator(&self) -> &ComplexMatrix {
        &self.operator
    }

    pub fn rate(&self) -> &RateFunction {
        &self.rate
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// `f(t) · H` contribution to the Hamiltonian.
#[derive(Clone, Debug)]
pub struct HamiltonianTerm {
    pub coefficient: RateFunction,
    pub operator: HermitianMatrix,
}

/// `ρ̇ = −i[H(t), ρ] + Σᵢ Γᵢ(t)(Lᵢ ρ Lᵢ† − ½{Lᵢ†Lᵢ, ρ})` with `ħ = 1`.
#[derive(Clone, Debug)]
pub struct LindbladGenerator {
    dim: usize,
    hamiltonian: Vec<HamiltonianTerm>,
    channels: Vec<Channel>,
}

impl LindbladGenerator {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            hamiltonian: Vec::new(),
            channels: Vec::new(),
        }
    }

    pub fn with_hamiltonian(
        mut self,
        coefficient: RateFunction,
        operator: HermitianMatrix,
    ) -> Result<Self> {
        if operator.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: operator.dim(),
            });
        }
        self.hamiltonian.push(HamiltonianTerm {
            coefficient,
            operator,
        });
        Ok(self)
    }

    pub fn with_channel(
        mut self,
        label: impl Into<String>,
        operator: ComplexMatrix,
        rate: RateFunction,
    ) -> Result<Self> {
        if operator.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: operator.dim(),
            });
        }
        let ldag_l = &operator.adjoint() * &operator;
        self.channels.push(Channel {
            operator,
            ldag_l,
            rate,
            label: label.into(),
        });
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    pub fn hamiltonian_terms(&self) -> &[HamiltonianTerm] {
        &self.hamiltonian
    }

    pub fn rates_at(&self, t: f64) -> Vec<f64> {
        self.channels.iter().map(|c| c.rate.eval(t)).collect()
    }

    pub fn hamiltonian_at(&self, t: f64) -> HermitianMatrix {
        let mut h = ComplexMatrix::zeros(self.dim);
        for term in &self.hamiltonian {
            let c = term.coefficient.eval(t);
            if c != 0.0 {
                h.add_scaled(C64::new(c, 0.0), term.operator.matrix());
            }
        }
        HermitianMatrix::symmetrized(&h)
    }

    /// The generator `𝕀 ⊗ 𝓛_t` acting on a `d² × d²` bipartite operator.
    pub fn lift_identity(&self) -> Result<LindbladGenerator> {
        let id = ComplexMatrix::identity(self.dim);
        let mut lifted = LindbladGenerator::new(self.dim * self.dim);
        for term in &self.hamiltonian {
            let op = HermitianMatrix::symmetrized(&kron(&id, term.operator.matrix())?);
            lifted = lifted.with_hamiltonian(term.coefficient.clone(), op)?;
        }
        for ch in &self.channels {
            lifted =
                lifted.with_channel(ch.label.clone(), kron(&id, &ch.operator)?, ch.rate.clone())?;
        }
        Ok(lifted)
    }

    /// Applies the generator without dimension checks or symmetrization.
    pub(crate) fn apply(&self, t: f64, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim);
        for term in &self.hamiltonian {
            let c = term.coefficient.eval(t);
            if c == 0.0 {
                continue;
            }
            let h = term.operator.matrix();
            // −i c [H, ρ]
            let comm = &(h * rho) - &(rho * h);
            out.add_scaled(-I * c, &comm);
        }
        for ch in &self.channels {
            let g = ch.rate.eval(t);
            if g == 0.0 {
                continue;
            }
            let l = &ch.operator;
            let jump = &(l * rho) * &l.adjoint();
            let anti = &(&ch.ldag_l * rho) + &(rho * &ch.ldag_l);
            out.add_scaled(C64::new(g, 0.0), &jump);
            out.add_scaled(C64::new(-0.5 * g, 0.0), &anti);
        }
        out
    }

    /// `‖𝓛_t(𝕀/d)‖_F`; zero for unital dynamics.
    pub fn unitality_residual(&self, t: f64) -> f64 {
        let mixed = ComplexMatrix::identity(self.dim).scale_real(1.0 / self.dim as f64);
        let out = self.apply(t, &mixed);
        out.hs_norm_sq().sqrt()
    }
}

/// Unit-trace positive semidefinite Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(HermitianMatrix);

impl DensityMatrix {
    pub fn new(m: HermitianMatrix) -> Result<Self> {
        let tr = m.trace();
        if (tr - 1.0).abs() > STATE_TRACE_TOL {
            return Err(Error::NotUnitTrace(tr));
        }
        let min = hermitian_eig(&m)?.min_eigenvalue();
        if min < -STATE_PSD_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(Self(m))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(HermitianMatrix::symmetrized(
            &ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        ))
    }

    /// `|ψ><ψ|` for a normalized copy of `psi`.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        let v: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        Ok(Self(HermitianMatrix::projector(&v)))
    }

    /// Qubit state `(𝕀 + n·σ)/2` with `|n| ≤ 1`.
    pub fn from_bloch(n: [f64; 3]) -> Result<Self> {
        let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if len > 1.0 + 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "Bloch vector length {len} exceeds 1"
            )));
        }
        let mut m = ComplexMatrix::identity(2);
        m.add_scaled(ONE, &pauli::dot(n));
        Ok(Self(HermitianMatrix::symmetrized(&m.scale_real(0.5))))
    }

    /// `|+><+|`
    pub fn plus() -> Self {
        Self::from_bloch([1.0, 0.0, 0.0]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.0.matrix()
    }

    pub fn purity(&self) -> f64 {
        let m = self.0.matrix();
        (m * m).trace().re
    }

    /// `(⟨σx⟩, ⟨σy⟩, ⟨σz⟩)` for a qubit.
    pub fn bloch_vector(&self) -> Result<[f64; 3]> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.dim(),
            });
        }
        let m = self.0.matrix();
        Ok([
            2.0 * m[(0, 1)].re,
            -2.0 * m[(0, 1)].im,
            (m[(0, 0)] - m[(1, 1)]).re,
        ])
    }
}

impl AsRef<HermitianMatrix> for DensityMatrix {
    fn as_ref(&self) -> &HermitianMatrix {
        &self.0
    }
}

/// Choi matrix of the intermediate map over `[t, t+ε]`. Unit trace, but not
/// necessarily positive.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiState {
    matrix: HermitianMatrix,
    t: f64,
    epsilon: f64,
}

impl ChoiState {
    pub fn new(matrix: HermitianMatrix, t: f64, epsilon: f64) -> Result<Self> {
        let tr = matrix.trace();
        if (tr - 1.0).abs() > CHOI_TRACE_TOL {
            return Err(Error::NotUnitTrace(tr));
        }
        let d = (matrix.dim() as f64).sqrt().round() as usize;
        if d * d != matrix.dim() {
            return Err(Error::InvalidArgument(format!(
                "Choi matrix dimension {} is not a perfect square",
                matrix.dim()
            )));
        }
        Ok(Self { matrix, t, epsilon })
    }

    /// `|φ><φ|` with `|φ> = (1/√d) Σᵢ |ii>`.
    pub fn maximally_entangled(d: usize) -> Self {
        Self {
            matrix: HermitianMatrix::symmetrized(&maximally_entangled_projector(d)),
            t: 0.0,
            epsilon: 0.0,
        }
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.matrix.matrix()
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.t, self.epsilon)
    }

    /// Dimension of the system the channel acts on.
    pub fn system_dim(&self) -> usize {
        (self.matrix.dim() as f64).sqrt().round() as usize
    }
}

impl AsRef<HermitianMatrix> for ChoiState {
    fn as_ref(&self) -> &HermitianMatrix {
        &self.matrix
    }
}

fn maximally_entangled_projector(d: usize) -> ComplexMatrix {
    let n = d * d;
    let mut phi = vec![ZERO; n];
    let amp = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    for i in 0..d {
        phi[i * d + i] = amp;
    }
    ComplexMatrix::outer(&phi, &phi)
}

pub fn lindblad_rhs(
    gen: &LindbladGenerator,
    t: f64,
    rho: &HermitianMatrix,
) -> Result<HermitianMatrix> {
    if rho.dim() != gen.dim() {
        return Err(Error::DimensionMismatch {
            expected: gen.dim(),
            found: rho.dim(),
        });
    }
    Ok(HermitianMatrix::symmetrized(&gen.apply(t, rho.matrix())))
}

fn rk4_step(gen: &LindbladGenerator, t: f64, h: f64, y: &ComplexMatrix) -> ComplexMatrix {
    let half = C64::new(0.5 * h, 0.0);
    let k1 = gen.apply(t, y);
    let mut y2 = y.clone();
    y2.add_scaled(half, &k1);
    let k2 = gen.apply(t + 0.5 * h, &y2);
    let mut y3 = y.clone();
    y3.add_scaled(half, &k2);
    let k3 = gen.apply(t + 0.5 * h, &y3);
    let mut y4 = y.clone();
    y4.add_scaled(C64::new(h, 0.0), &k3);
    let k4 = gen.apply(t + h, &y4);

    let mut out = y.clone();
    let sixth = C64::new(h / 6.0, 0.0);
    let third = C64::new(h / 3.0, 0.0);
    out.add_scaled(sixth, &k1);
    out.add_scaled(third, &k2);
    out.add_scaled(third, &k3);
    out.add_scaled(sixth, &k4);
    out
}

/// Number of uniform steps covering `span` with steps no longer than `dt`.
pub(crate) fn step_count(span: f64, dt: f64) -> usize {
    ((span / dt) - 1e-9).ceil().max(1.0) as usize
}

fn check_step(dt: f64) -> Result<()> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "step dt = {dt} must be positive"
        )));
    }
    Ok(())
}

/// One RK4 step followed by re-symmetrization and trace renormalization.
fn state_step(gen: &LindbladGenerator, t: f64, h: f64, rho: &ComplexMatrix) -> ComplexMatrix {
    let next = rk4_step(gen, t, h, rho).hermitian_part();
    let tr = next.trace().re;
    next.scale_real(1.0 / tr)
}

fn validate_state(t: f64, m: ComplexMatrix) -> Result<DensityMatrix> {
    let h = HermitianMatrix::symmetrized(&m);
    let min = hermitian_eig(&h)?.min_eigenvalue();
    if min < -BLOWUP_TOL || !min.is_finite() {
        return Err(Error::IntegrationBlowUp {
            t,
            min_eigenvalue: min,
        });
    }
    Ok(DensityMatrix(h))
}

/// Integrates `ρ(t0) → ρ(t1)` with classical RK4 on a uniform grid.
pub fn propagate_state(
    gen: &LindbladGenerator,
    rho0: &DensityMatrix,
    t0: f64,
    t1: f64,
    dt: f64,
) -> Result<DensityMatrix> {
    check_step(dt)?;
    if rho0.dim() != gen.dim() {
        return Err(Error::DimensionMismatch {
            expected: gen.dim(),
            found: rho0.dim(),
        });
    }
    if t1 < t0 {
        return Err(Error::InvalidArgument(format!(
            "t1 = {t1} precedes t0 = {t0}"
        )));
    }
    if t1 == t0 {
        return Ok(rho0.clone());
    }
    let n = step_count(t1 - t0, dt);
    let h = (t1 - t0) / n as f64;
    let mut rho = rho0.matrix().clone();
    for k in 0..n {
        rho = state_step(gen, t0 + k as f64 * h, h, &rho);
    }
    validate_state(t1, rho)
}

/// States on the grid `t0 + k·dt`, `k = 0..=steps`.
pub fn propagate_trajectory(
    gen: &LindbladGenerator,
    rho0: &DensityMatrix,
    t0: f64,
    dt: f64,
    steps: usize,
) -> Result<Vec<DensityMatrix>> {
    check_step(dt)?;
    if rho0.dim() != gen.dim() {
        return Err(Error::DimensionMismatch {
            expected: gen.dim(),
            found: rho0.dim(),
        });
    }
    let mut out = Vec::with_capacity(steps + 1);
    out.push(rho0.clone());
    let mut rho = rho0.matrix().clone();
    for k in 0..steps {
        let t = t0 + k as f64 * dt;
        rho = state_step(gen, t, dt, &rho);
        out.push(validate_state(t + dt, rho.clone())?);
    }
    Ok(out)
}

/// Evolves `|φ><φ|` under `𝕀⊗𝓛_s` from `s = t` to `s = t + ε`.
pub fn intermediate_choi(
    gen: &LindbladGenerator,
    t: f64,
    epsilon: f64,
    dt: f64,
) -> Result<ChoiState> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "interval width epsilon = {epsilon} must be positive"
        )));
    }
    check_step(dt)?;
    if dt > epsilon * (1.0 + 1e-12) {
        return Err(Error::InvalidArgument(format!(
            "step dt = {dt} exceeds interval width epsilon = {epsilon}"
        )));
    }
    let lifted = gen.lift_identity()?;
    let n = step_count(epsilon, dt);
    let h = epsilon / n as f64;
    let mut c = maximally_entangled_projector(gen.dim());
    for k in 0..n {
        c = rk4_step(&lifted, t + k as f64 * h, h, &c).hermitian_part();
    }
    if c.as_slice()
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::IntegrationBlowUp {
            t: t + epsilon,
            min_eigenvalue: f64::NAN,
        });
    }
    let tr = c.trace().re;
    if (tr - 1.0).abs() > CHOI_TRACE_TOL {
        return Err(Error::Numerical(format!(
            "Choi trace drifted to {tr} over [{t}, {}]",
            t + epsilon
        )));
    }
    Ok(ChoiState {
        matrix: HermitianMatrix::symmetrized(&c),
        t,
        epsilon,
    })
}

pub fn min_choi_eigenvalue(c: &ChoiState) -> Result<f64> {
    Ok(hermitian_eig(c.as_hermitian())?.min_eigenvalue())
}
