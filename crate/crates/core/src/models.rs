//! The two shipped qubit models: pure dephasing with the Lorentzian-bath
//! rate `γ(t)`, and the phase-covariant spin-bath master equation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dynamics::{ChoiState, LindbladGenerator};
use crate::error::{Error, Result};
use crate::matrix::{pauli, ComplexMatrix, HermitianMatrix, C64};
use crate::rate::{GaussianDip, RateFunction};

const POLE_DISTANCE_TOL: f64 = 1e-6;
const POLE_DENOMINATOR_TOL: f64 = 1e-14;
const IMAG_RESIDUE_TOL: f64 = 1e-12;
const QUADRATURE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DephasingParams {
    lambda: f64,
    gamma0: f64,
}

impl DephasingParams {
    pub fn new(lambda: f64, gamma0: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "lambda = {lambda} must be positive"
            )));
        }
        if !(gamma0 > 0.0 && gamma0.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "gamma0 = {gamma0} must be positive"
            )));
        }
        Ok(Self { lambda, gamma0 })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    /// `g = √(λ² − 2γ₀λ)`, imaginary when `γ₀ > λ/2`.
    pub fn g(&self) -> C64 {
        Complex64::new(
            self.lambda * self.lambda - 2.0 * self.gamma0 * self.lambda,
            0.0,
        )
        .sqrt()
    }

    /// The rate takes negative values somewhere iff `γ₀ > λ/2`.
    pub fn is_non_markovian(&self) -> bool {
        self.gamma0 > self.lambda / 2.0
    }

    /// Numerator and denominator of `γ(t)` in complex arithmetic.
    fn parts(&self, t: f64) -> (C64, C64) {
        let g = self.g();
        let lam = self.lambda;
        if g.norm() < 1e-8 {
            // g → 0 limit: sinh(tg/2)/g → t/2, cosh → 1.
            let num = C64::new(2.0 * lam * self.gamma0 * t / 2.0, 0.0);
            let den = C64::new(1.0 + lam * t / 2.0, 0.0);
            return (num, den);
        }
        let x = g * (t / 2.0);
        let (sh, ch) = (x.sinh(), x.cosh());
        (sh * (2.0 * lam * self.gamma0), g * ch + sh * lam)
    }

    /// `γ(t)` without pole or residue checks; used inside integrators.
    pub fn rate_unchecked(&self, t: f64) -> f64 {
        let (num, den) = self.parts(t);
        (num / den).re
    }

    /// Poles of `γ(t)` in `[0, t_max]`, in increasing order.
    ///
    /// With `g = i·w` the denominator is `i(w cos(wt/2) + λ sin(wt/2))`, which
    /// vanishes at `wt/2 = π − atan(w/λ) + kπ`.
    pub fn poles(&self, t_max: f64) -> Vec<f64> {
        if !self.is_non_markovian() {
            return Vec::new();
        }
        let w = (2.0 * self.gamma0 * self.lambda - self.lambda * self.lambda).sqrt();
        let first = PI - (w / self.lambda).atan();
        (0..)
            .map(|k| 2.0 * (first + k as f64 * PI) / w)
            .take_while(|&t| t <= t_max)
            .collect()
    }

    pub fn first_pole(&self) -> Option<f64> {
        if !self.is_non_markovian() {
            return None;
        }
        let w = (2.0 * self.gamma0 * self.lambda - self.lambda * self.lambda).sqrt();
        Some(2.0 * (PI - (w / self.lambda).atan()) / w)
    }
}

pub fn dephasing_rate(p: &DephasingParams, t: f64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "t = {t} must be nonnegative"
        )));
    }
    if p.poles(t + POLE_DISTANCE_TOL)
        .iter()
        .any(|&tp| (tp - t).abs() < POLE_DISTANCE_TOL)
    {
        return Err(Error::SingularRate { t });
    }
    let (num, den) = p.parts(t);
    if den.norm() < POLE_DENOMINATOR_TOL {
        return Err(Error::SingularRate { t });
    }
    let val = num / den;
    if val.im.abs() > IMAG_RESIDUE_TOL * val.re.abs().max(1.0) {
        return Err(Error::Numerical(format!(
            "dephasing rate at t = {t} has imaginary residue {:e}",
            val.im
        )));
    }
    Ok(val.re)
}

/// Locates sign changes of `γ` on `[0, t_max]` by scanning with `step` and
/// bisecting each bracket. Brackets containing a pole are skipped, since the
/// rate jumps from `+∞` to `−∞` there without passing through zero.
pub fn dephasing_sign_changes(p: &DephasingParams, t_max: f64, step: f64) -> Vec<f64> {
    let poles = p.poles(t_max + step);
    let n = (t_max / step).floor() as usize;
    let mut out = Vec::new();
    for k in 0..n {
        let a = k as f64 * step;
        let b = a + step;
        if poles.iter().any(|&tp| tp >= a && tp <= b) {
            continue;
        }
        let (fa, fb) = (p.rate_unchecked(a), p.rate_unchecked(b));
        if fa == 0.0 && k > 0 {
            out.push(a);
        } else if fa * fb < 0.0 {
            out.push(bisect(|t| p.rate_unchecked(t), a, b));
        }
    }
    out
}

/// Bisection for a sign change of `f` on `[a, b]`.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// `dρ/dt = γ(t)(σz ρ σz − ρ)`, encoded as the single channel `L = σz`.
pub fn dephasing_generator(p: &DephasingParams) -> LindbladGenerator {
    LindbladGenerator::new(2)
        .with_channel("deph", pauli::sigma_z(), RateFunction::Dephasing(*p))
        .expect("qubit operator")
}

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }

    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// `∫ₐᵇ γ(s) ds`, rejecting intervals that contain a pole.
pub fn integrated_dephasing_rate(p: &DephasingParams, a: f64, b: f64) -> Result<f64> {
    if let Some(&pole) = p.poles(b).iter().find(|&&tp| tp >= a) {
        return Err(Error::PoleInInterval {
            pole,
            start: a,
            end: b,
        });
    }
    Ok(adaptive_simpson(
        &|s| p.rate_unchecked(s),
        a,
        b,
        QUADRATURE_TOL,
    ))
}

/// `½[|00><00| + |11><11| + q(|00><11| + |11><00|)]`
pub fn dephasing_choi_from_coherence(q: f64) -> HermitianMatrix {
    let mut m = ComplexMatrix::zeros(4);
    m[(0, 0)] = C64::new(0.5, 0.0);
    m[(3, 3)] = C64::new(0.5, 0.0);
    m[(0, 3)] = C64::new(0.5 * q, 0.0);
    m[(3, 0)] = C64::new(0.5 * q, 0.0);
    HermitianMatrix::symmetrized(&m)
}

/// Closed-form intermediate Choi state of the dephasing channel, with
/// `q = exp(−2∫ₜ^{t+ε} γ(s) ds)`. Eigenvalues are `(1±q)/2, 0, 0`.
pub fn dephasing_choi_exact(p: &DephasingParams, t: f64, epsilon: f64) -> Result<ChoiState> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "interval width epsilon = {epsilon} must be positive"
        )));
    }
    let integral = integrated_dephasing_rate(p, t, t + epsilon)?;
    let q = (-2.0 * integral).exp();
    ChoiState::new(dephasing_choi_from_coherence(q), t, epsilon)
}

/// Coherence factor `q` of the exact dephasing Choi state.
pub fn dephasing_coherence_factor(p: &DephasingParams, t: f64, epsilon: f64) -> Result<f64> {
    Ok((-2.0 * integrated_dephasing_rate(p, t, t + epsilon)?).exp())
}

/// Rates of the spin-bath master equation
/// `ρ̇ = iU(t)[ρ, σz] + Γ_deph(σzρσz − ρ) + Γ_dis D[σ−]ρ + Γ_abs D[σ+]ρ`.
#[derive(Clone, Debug)]
pub struct SpinBathParams {
    pub unitary: RateFunction,
    pub deph: RateFunction,
    pub dis: RateFunction,
    pub abs: RateFunction,
}

impl SpinBathParams {
    pub fn zero() -> Self {
        Self {
            unitary: RateFunction::zero(),
            deph: RateFunction::zero(),
            dis: RateFunction::zero(),
            abs: RateFunction::zero(),
        }
    }
}

/// Illustrative spin-bath rates: every rate shares one Gaussian-dip shape
/// factor, so all three turn negative on the same window while the
/// cumulative map stays completely positive for moderate depths. Not fitted
/// to any physical bath.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinBathDemo {
    pub base_deph: f64,
    pub base_dis: f64,
    pub base_abs: f64,
    pub unitary: f64,
    pub depth: f64,
    pub center: f64,
    pub width: f64,
}

impl Default for SpinBathDemo {
    fn default() -> Self {
        Self {
            base_deph: 0.5,
            base_dis: 0.2,
            base_abs: 0.2,
            unitary: 0.5,
            depth: 2.0,
            center: 2.0,
            width: 0.5,
        }
    }
}

impl SpinBathDemo {
    fn dip(&self, base: f64) -> RateFunction {
        RateFunction::Dip(GaussianDip {
            base,
            depth: self.depth,
            center: self.center,
            width: self.width,
        })
    }

    pub fn params(&self) -> SpinBathParams {
        SpinBathParams {
            unitary: RateFunction::Constant(self.unitary),
            deph: self.dip(self.base_deph),
            dis: self.dip(self.base_dis),
            abs: self.dip(self.base_abs),
        }
    }

    pub fn negative_window(&self) -> Option<(f64, f64)> {
        GaussianDip {
            base: 1.0,
            depth: self.depth,
            center: self.center,
            width: self.width,
        }
        .negative_window()
    }
}

/// Channels `[(σz, Γ_deph), (σ−, Γ_dis), (σ+, Γ_abs)]` and Hamiltonian `U(t)σz`.
pub fn spinbath_generator(p: &SpinBathParams) -> LindbladGenerator {
    let sz = HermitianMatrix::new(pauli::sigma_z()).expect("σz is Hermitian");
    LindbladGenerator::new(2)
        .with_hamiltonian(p.unitary.clone(), sz)
        .and_then(|g| g.with_channel("deph", pauli::sigma_z(), p.deph.clone()))
        .and_then(|g| g.with_channel("dis", pauli::sigma_minus(), p.dis.clone()))
        .and_then(|g| g.with_channel("abs", pauli::sigma_plus(), p.abs.clone()))
        .expect("qubit operators")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{lindblad_rhs, propagate_state, DensityMatrix};

    #[test]
    fn params_validation() {
        assert!(DephasingParams::new(0.0, 1.0).is_err());
        assert!(DephasingParams::new(1.0, -1.0).is_err());
        assert!(DephasingParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn rate_vanishes_at_zero() {
        let p = DephasingParams::new(1.0, 2.0).unwrap();
        assert_eq!(dephasing_rate(&p, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn markovian_rate_is_positive() {
        let p = DephasingParams::new(1.0, 0.4).unwrap();
        let g = p.g();
        assert!(g.im == 0.0 && (g.re - 0.2f64.sqrt()).abs() < 1e-15);
        // Direct real evaluation of the same formula as an independent check.
        let gr = 0.2f64.sqrt();
        let direct = 2.0 * 0.4 * (gr / 2.0).sinh() / (gr * (gr / 2.0).cosh() + (gr / 2.0).sinh());
        let v = dephasing_rate(&p, 1.0).unwrap();
        assert!(v > 0.0);
        assert!((v - direct).abs() < 1e-15);
        assert!(p.poles(100.0).is_empty());
    }

    #[test]
    fn complex_branch_matches_trigonometric_continuation() {
        let p = DephasingParams::new(1.0, 2.0).unwrap();
        let w = 3f64.sqrt();
        for &t in &[0.3, 1.0, 2.0, 3.0, 3.5, 4.5] {
            let trig =
                2.0 * 2.0 * (w * t / 2.0).sin() / (w * (w * t / 2.0).cos() + (w * t / 2.0).sin());
            let v = dephasing_rate(&p, t).unwrap();
            assert!(
                (v - trig).abs() < 1e-12 * trig.abs().max(1.0),
                "t={t}: {v} vs {trig}"
            );
        }
    }

    #[test]
    fn boundary_case_g_zero() {
        let p = DephasingParams::new(1.0, 0.5).unwrap();
        let v = dephasing_rate(&p, 2.0).unwrap();
        assert!((v - 0.5 * 2.0 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn first_pole_and_sign_change() {
        let p = DephasingParams::new(1.0, 2.0).unwrap();
        let w = 3f64.sqrt();
        let pole = p.first_pole().unwrap();
        assert!((pole - 4.0 * PI / (3.0 * w)).abs() < 1e-12);
        // The first genuine zero crossing is where sin(wt/2) vanishes.
        let zeros = dephasing_sign_changes(&p, 5.0, 0.01);
        let t_star = zeros[0];
        assert!((t_star - 2.0 * PI / w).abs() < 1e-10);
        let delta = 1e-6;
        assert!(p.rate_unchecked(t_star - delta) < 0.0);
        assert!(p.rate_unchecked(t_star + delta) > 0.0);
    }

    #[test]
    fn pole_is_reported() {
        let p = DephasingParams::new(1.0, 2.0).unwrap();
        let pole = p.first_pole().unwrap();
        for dt in [0.0, 5e-7, -9e-7] {
            assert!(matches!(
                dephasing_rate(&p, pole + dt),
                Err(Error::SingularRate { .. })
            ));
        }
        assert!(dephasing_rate(&p, pole + 2e-6).unwrap() < -1e5);
        assert!(matches!(
            dephasing_choi_exact(&p, pole - 0.005, 0.01),
            Err(Error::PoleInInterval { .. })
        ));
    }

    #[test]
    fn simpson_matches_closed_form_integral() {
        // γ = −2 d/dt ln G with G(t) = e^{−λt/2}(cos(wt/2) + (λ/w) sin(wt/2)).
        let p = DephasingParams::new(1.0, 2.0).unwrap();
        let w = 3f64.sqrt();
        let big_g = |t: f64| (-t / 2.0).exp() * ((w * t / 2.0).cos() + (w * t / 2.0).sin() / w);
        for &(a, b) in &[(0.0, 1.0), (0.5, 2.2), (2.6, 3.5), (3.0, 4.0)] {
            let exact = -2.0 * (big_g(b) / big_g(a)).ln();
            let quad = integrated_dephasing_rate(&p, a, b).unwrap();
            assert!((quad - exact).abs() < 1e-10, "[{a},{b}]: {quad} vs {exact}");
        }
    }

    #[test]
    fn exact_choi_cases() {
        let phi = crate::dynamics::ChoiState::maximally_entangled(2);
        assert!(
            dephasing_choi_from_coherence(1.0)
                .matrix()
                .frobenius_distance(phi.matrix())
                < 1e-15
        );

        let c = dephasing_choi_from_coherence(1.2);
        let eig = c.eig().unwrap();
        assert!((eig.eigenvalues[0] + 0.1).abs() < 1e-14);
        assert!((eig.eigenvalues[3] - 1.1).abs() < 1e-14);

        let p = DephasingParams::new(1.0, 0.4).unwrap();
        let c = dephasing_choi_exact(&p, 1.0, 0.5).unwrap();
        assert!(c.as_hermitian().eig().unwrap().min_eigenvalue() >= 0.0);
        assert!(dephasing_choi_exact(&p, 1.0, 0.0).is_err());
    }

    #[test]
    fn dephasing_generator_shape() {
        let p = DephasingParams::new(1.0, 0.4).unwrap();
        let gen = dephasing_generator(&p);
        assert_eq!(gen.channels().len(), 1);
        let zero = DensityMatrix::pure(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
        let out = lindblad_rhs(&gen, 1.0, zero.as_hermitian()).unwrap();
        assert!(out.matrix().max_abs() < 1e-15);
    }

    #[test]
    fn dephasing_rhs_unit_rate() {
        let gen = LindbladGenerator::new(2)
            .with_channel("deph", pauli::sigma_z(), RateFunction::Constant(1.0))
            .unwrap();
        let out = lindblad_rhs(&gen, 0.0, DensityMatrix::plus().as_hermitian()).unwrap();
        assert!((out.matrix()[(0, 1)].re + 1.0).abs() < 1e-15);
    }

    #[test]
    fn spinbath_zero_is_identity() {
        let gen = spinbath_generator(&SpinBathParams::zero());
        let rho = DensityMatrix::from_bloch([0.2, 0.4, -0.1]).unwrap();
        let out = propagate_state(&gen, &rho, 0.0, 2.0, 1e-2).unwrap();
        assert!(out.matrix().frobenius_distance(rho.matrix()) < 1e-15);
    }

    #[test]
    fn spinbath_equal_exchange_rates_are_unital() {
        let p = SpinBathParams {
            unitary: RateFunction::Constant(0.7),
            deph: RateFunction::Constant(0.3),
            dis: RateFunction::custom("sin", |t| t.sin()),
            abs: RateFunction::custom("sin", |t| t.sin()),
        };
        let gen = spinbath_generator(&p);
        let mixed = DensityMatrix::maximally_mixed(2);
        for &t in &[0.0, 0.5, 2.0, 4.0] {
            let out = lindblad_rhs(&gen, t, mixed.as_hermitian()).unwrap();
            assert!(out.matrix().max_abs() < 1e-15);
        }
        let skewed = SpinBathParams {
            abs: RateFunction::Constant(0.1),
            ..p
        };
        assert!(spinbath_generator(&skewed).unitality_residual(1.0) > 1e-3);
    }

    #[test]
    fn dissipation_drives_to_ground() {
        // Pure amplitude damping: ⟨σz⟩(t) = −1 + (1 + z0) e^{−Γt}.
        let p = SpinBathParams {
            dis: RateFunction::Constant(0.8),
            ..SpinBathParams::zero()
        };
        let gen = spinbath_generator(&p);
        let mut rho = DensityMatrix::from_bloch([0.0, 0.0, 1.0]).unwrap();
        let mut prev = 1.0;
        for k in 1..=20 {
            rho =
                propagate_state(&gen, &rho, (k - 1) as f64 * 0.25, k as f64 * 0.25, 1e-3).unwrap();
            let z = rho.bloch_vector().unwrap()[2];
            let expected = -1.0 + 2.0 * (-0.8 * k as f64 * 0.25).exp();
            assert!((z - expected).abs() < 1e-9);
            assert!(z < prev);
            prev = z;
        }
    }

    #[test]
    fn demo_window_matches_dip() {
        let demo = SpinBathDemo::default();
        let (a, b) = demo.negative_window().unwrap();
        let params = demo.params();
        assert!(params.deph.eval(0.5 * (a + b)) < 0.0);
        assert!(params.dis.eval(a - 0.01) > 0.0);
        assert_eq!(params.dis.eval(1.7), params.abs.eval(1.7));
    }
}
