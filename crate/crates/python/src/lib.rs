//! Python bindings for `nmwitness-core`.
//!
//! Matrices cross the boundary as nested lists (or any nested sequence,
//! including numpy arrays) of complex numbers, row-major.

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use nmwitness_core::dynamics::{intermediate_choi, DensityMatrix, LindbladGenerator};
use nmwitness_core::expr::RateExpression;
use nmwitness_core::matrix::{hermitian_eig, ComplexMatrix, HermitianMatrix};
use nmwitness_core::models::{
    dephasing_choi_exact, dephasing_coherence_factor, dephasing_generator, dephasing_rate,
    spinbath_generator, DephasingParams, SpinBathDemo, SpinBathParams,
};
use nmwitness_core::quantifier::{
    check_unital, nm_quantifier, purity_quantifier, rs_trajectory, time_grid, TimeSeries,
};
use nmwitness_core::rate::RateFunction;
use nmwitness_core::scan::{
    run_dephasing_scan, run_spinbath_scan, run_unital_scan, ChoiScanSettings, PolePolicy,
    UnitalScanSettings,
};
use nmwitness_core::uncertainty::{self, BlochDirections, ObservablePair};
use nmwitness_core::witnesses::{self, DEFAULT_TOL};
use nmwitness_core::Error;

type Rows = Vec<Vec<Complex64>>;

fn py_err(e: Error) -> PyErr {
    if e.is_numerical() {
        PyArithmeticError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

trait OrPyErr<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPyErr<T> for nmwitness_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn to_matrix(rows: &Rows) -> PyResult<ComplexMatrix> {
    ComplexMatrix::from_rows(rows).py()
}

fn to_hermitian(rows: &Rows) -> PyResult<HermitianMatrix> {
    HermitianMatrix::new(to_matrix(rows)?).py()
}

fn to_rows(m: &ComplexMatrix) -> Rows {
    m.rows()
}

fn rate_from_py(obj: &Bound<'_, PyAny>) -> PyResult<RateFunction> {
    if let Ok(x) = obj.extract::<f64>() {
        return Ok(RateFunction::Constant(x));
    }
    let spec: String = obj.extract()?;
    RateFunction::from_spec(&spec).py()
}

fn choi_settings(
    t_min: f64,
    t_max: f64,
    dt: f64,
    epsilon: f64,
    choi_dt: Option<f64>,
) -> ChoiScanSettings {
    ChoiScanSettings {
        t_min,
        t_max,
        dt,
        epsilon,
        choi_dt,
        ..Default::default()
    }
}

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
#[pyfunction]
fn eigh(matrix: Rows) -> PyResult<(Vec<f64>, Vec<Vec<Complex64>>)> {
    let spec = hermitian_eig(&to_hermitian(&matrix)?).py()?;
    Ok((spec.eigenvalues, spec.eigenvectors))
}

#[pyfunction]
fn kron(a: Rows, b: Rows) -> PyResult<Rows> {
    Ok(to_rows(
        &nmwitness_core::matrix::kron(&to_matrix(&a)?, &to_matrix(&b)?).py()?,
    ))
}

/// Pauli string such as `"xy"` as a matrix.
#[pyfunction]
fn pauli(label: &str) -> PyResult<Rows> {
    Ok(to_rows(
        &nmwitness_core::matrix::pauli::from_label(label).py()?,
    ))
}

#[pyfunction]
fn expectation(observable: Rows, state: Rows) -> PyResult<f64> {
    uncertainty::expectation(&to_hermitian(&observable)?, &to_hermitian(&state)?).py()
}

#[pyfunction]
fn variance(observable: Rows, state: Rows) -> PyResult<f64> {
    uncertainty::variance(&to_hermitian(&observable)?, &to_hermitian(&state)?).py()
}

/// Robertson–Schrödinger left-hand side.
#[pyfunction]
fn rs_lhs(a: Rows, b: Rows, state: Rows) -> PyResult<f64> {
    let pair = ObservablePair::new(to_hermitian(&a)?, to_hermitian(&b)?).py()?;
    uncertainty::rs_lhs(&pair, &to_hermitian(&state)?).py()
}

/// `(Δ²A + Δ²B, |⟨[A,B]⟩|)`
#[pyfunction]
fn sum_uncertainty(a: Rows, b: Rows, state: Rows) -> PyResult<(f64, f64)> {
    let pair = ObservablePair::new(to_hermitian(&a)?, to_hermitian(&b)?).py()?;
    let s = uncertainty::sum_uncertainty(&pair, &to_hermitian(&state)?).py()?;
    Ok((s.lhs, s.rhs))
}

#[pyfunction]
fn variance_convexity_gap(
    observables: Vec<Rows>,
    components: Vec<Rows>,
    weights: Vec<f64>,
) -> PyResult<f64> {
    let obs = observables
        .iter()
        .map(to_hermitian)
        .collect::<PyResult<Vec<_>>>()?;
    let comps = components
        .iter()
        .map(to_hermitian)
        .collect::<PyResult<Vec<_>>>()?;
    uncertainty::variance_convexity_gap(&obs, &comps, &weights).py()
}

#[pyfunction]
fn linear_entropy(state: Rows) -> PyResult<f64> {
    let rho = DensityMatrix::new(to_hermitian(&state)?).py()?;
    uncertainty::linear_entropy(&rho).py()
}

/// `[1 − (r̂·t̂)²] S_l(ρ)` for the qubit with Bloch vector `bloch`.
#[pyfunction]
fn rs_factorized(r: [f64; 3], t: [f64; 3], bloch: [f64; 3]) -> PyResult<f64> {
    let dirs = BlochDirections::new(r, t).py()?;
    uncertainty::rs_factorized(&dirs, &DensityMatrix::from_bloch(bloch).py()?).py()
}

#[pyfunction]
fn bloch_state(bloch: [f64; 3]) -> PyResult<Rows> {
    Ok(to_rows(DensityMatrix::from_bloch(bloch).py()?.matrix()))
}

/// Observables `(H₁, H₂)` whose RS relation fails on a non-positive `c`.
#[pyfunction]
fn construct_rs_violating_pair(c: Rows) -> PyResult<(Rows, Rows)> {
    let (h1, h2) = witnesses::construct_rs_violating_pair(&to_hermitian(&c)?).py()?;
    Ok((to_rows(h1.matrix()), to_rows(h2.matrix())))
}

#[pyfunction]
#[pyo3(signature = (c, tol = DEFAULT_TOL))]
fn detect(c: Rows, tol: f64) -> PyResult<WitnessReport> {
    Ok(WitnessReport(
        witnesses::detect(&to_hermitian(&c)?, tol).py()?,
    ))
}

/// Sum of decreases of `values` sampled at strictly increasing `times`.
#[pyfunction]
fn quantifier(times: Vec<f64>, values: Vec<f64>) -> PyResult<f64> {
    nm_quantifier(&TimeSeries::new(times, values).py()?).py()
}

#[pyclass(frozen, module = "nmwitness")]
struct WitnessReport(witnesses::WitnessReport);

#[pymethods]
impl WitnessReport {
    #[getter]
    fn min_eigenvalue(&self) -> f64 {
        self.0.min_eigenvalue
    }
    #[getter]
    fn negative_count(&self) -> usize {
        self.0.negative_count
    }
    #[getter]
    fn projective_values(&self) -> Vec<f64> {
        self.0.projective_values.clone()
    }
    #[getter]
    fn variance_witness_values(&self) -> Vec<f64> {
        self.0.variance_witness_values.clone()
    }
    #[getter]
    fn rs_pair_value(&self) -> Option<f64> {
        self.0.rs_pair_value
    }
    #[getter]
    fn sum_pair_value(&self) -> Option<(f64, f64)> {
        self.0.sum_pair_value
    }
    #[getter]
    fn projector_pair_rs(&self) -> Option<f64> {
        self.0.projector_pair_rs
    }
    #[getter]
    fn pair(&self) -> Option<(Rows, Rows)> {
        self.0
            .pair
            .as_ref()
            .map(|(a, b)| (to_rows(a.matrix()), to_rows(b.matrix())))
    }
    #[getter]
    fn verdict(&self) -> &'static str {
        self.0.verdict.as_str()
    }
    #[getter]
    fn detected(&self) -> bool {
        self.0.is_detected()
    }
    fn to_csv_row(&self) -> String {
        self.0.to_csv_row()
    }
    fn __repr__(&self) -> String {
        format!(
            "WitnessReport(verdict={}, min_eigenvalue={}, negative_count={})",
            self.0.verdict, self.0.min_eigenvalue, self.0.negative_count
        )
    }
}

#[pyclass(name = "RateExpression", frozen, module = "nmwitness")]
struct PyRateExpression(RateExpression);

#[pymethods]
impl PyRateExpression {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self(RateExpression::parse(text).py()?))
    }
    fn __call__(&self, t: f64) -> f64 {
        self.0.eval(t)
    }
    #[getter]
    fn source(&self) -> &str {
        self.0.source()
    }
    fn __str__(&self) -> String {
        self.0.to_string()
    }
    fn __repr__(&self) -> String {
        format!("RateExpression({:?})", self.0.source())
    }
}

/// Dephasing model with memory parameter `lambda` and coupling `gamma0`.
#[pyclass(frozen, module = "nmwitness")]
struct DephasingModel {
    params: DephasingParams,
    generator: LindbladGenerator,
}

#[pymethods]
impl DephasingModel {
    #[new]
    #[pyo3(signature = (lambda_, gamma0))]
    fn new(lambda_: f64, gamma0: f64) -> PyResult<Self> {
        let params = DephasingParams::new(lambda_, gamma0).py()?;
        Ok(Self {
            generator: dephasing_generator(&params),
            params,
        })
    }
    fn rate(&self, t: f64) -> PyResult<f64> {
        dephasing_rate(&self.params, t).py()
    }
    #[getter]
    fn is_non_markovian(&self) -> bool {
        self.params.is_non_markovian()
    }
    fn first_pole(&self) -> Option<f64> {
        self.params.first_pole()
    }
    fn poles(&self, t_max: f64) -> Vec<f64> {
        self.params.poles(t_max)
    }
    /// Numerical intermediate Choi state on `[t, t+epsilon]`.
    #[pyo3(signature = (t, epsilon, dt = None))]
    fn intermediate_choi(&self, t: f64, epsilon: f64, dt: Option<f64>) -> PyResult<Rows> {
        let c =
            intermediate_choi(&self.generator, t, epsilon, dt.unwrap_or(epsilon / 100.0)).py()?;
        Ok(to_rows(c.matrix()))
    }
    fn exact_choi(&self, t: f64, epsilon: f64) -> PyResult<Rows> {
        Ok(to_rows(
            dephasing_choi_exact(&self.params, t, epsilon)
                .py()?
                .matrix(),
        ))
    }
    fn coherence_factor(&self, t: f64, epsilon: f64) -> PyResult<f64> {
        dephasing_coherence_factor(&self.params, t, epsilon).py()
    }
    /// CSV scan; poles are clipped unless `across_poles`.
    #[pyo3(signature = (t_max = 5.0, dt = 0.01, epsilon = 0.01, t_min = 0.0, choi_dt = None, across_poles = false, pole_margin = 0.1))]
    #[allow(clippy::too_many_arguments)]
    fn scan(
        &self,
        t_max: f64,
        dt: f64,
        epsilon: f64,
        t_min: f64,
        choi_dt: Option<f64>,
        across_poles: bool,
        pole_margin: f64,
    ) -> PyResult<String> {
        let policy = if across_poles {
            PolePolicy::SkipNear {
                margin: pole_margin,
            }
        } else {
            PolePolicy::ClipBeforeFirst {
                margin: pole_margin,
            }
        };
        let settings = choi_settings(t_min, t_max, dt, epsilon, choi_dt);
        Ok(run_dephasing_scan(&self.params, &settings, policy)
            .py()?
            .to_csv()
            .render())
    }
}

/// Spin-bath model; each rate is a number, an expression in `t`, or `@file.csv`.
#[pyclass(frozen, module = "nmwitness")]
struct SpinBathModel {
    params: SpinBathParams,
    generator: LindbladGenerator,
    label: &'static str,
}

impl SpinBathModel {
    fn from_params(params: SpinBathParams, label: &'static str) -> Self {
        Self {
            generator: spinbath_generator(&params),
            params,
            label,
        }
    }
}

#[pymethods]
impl SpinBathModel {
    #[new]
    #[pyo3(signature = (deph = None, dis = None, abs = None, unitary = None))]
    fn new(
        deph: Option<&Bound<'_, PyAny>>,
        dis: Option<&Bound<'_, PyAny>>,
        abs: Option<&Bound<'_, PyAny>>,
        unitary: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<Self> {
        let load = |o: Option<&Bound<'_, PyAny>>| o.map_or(Ok(RateFunction::zero()), rate_from_py);
        Ok(Self::from_params(
            SpinBathParams {
                unitary: load(unitary)?,
                deph: load(deph)?,
                dis: load(dis)?,
                abs: load(abs)?,
            },
            "spinbath-custom",
        ))
    }

    /// Demonstration family whose rates all turn negative on `center ± width·√ln(depth)`.
    #[staticmethod]
    #[pyo3(signature = (depth = 2.0, center = 2.0, width = 0.5))]
    fn demo(depth: f64, center: f64, width: f64) -> Self {
        let demo = SpinBathDemo {
            depth,
            center,
            width,
            ..SpinBathDemo::default()
        };
        Self::from_params(demo.params(), "spinbath-demo")
    }

    /// `[Γ_deph, Γ_dis, Γ_abs]` at `t`.
    fn rates(&self, t: f64) -> Vec<f64> {
        self.generator.rates_at(t)
    }

    fn is_unital(&self, t_max: f64, dt: f64) -> PyResult<bool> {
        let (times, _) = time_grid(t_max, dt).py()?;
        Ok(check_unital(&self.generator, &times).is_ok())
    }

    #[pyo3(signature = (t, epsilon, dt = None))]
    fn intermediate_choi(&self, t: f64, epsilon: f64, dt: Option<f64>) -> PyResult<Rows> {
        let c =
            intermediate_choi(&self.generator, t, epsilon, dt.unwrap_or(epsilon / 100.0)).py()?;
        Ok(to_rows(c.matrix()))
    }

    /// `(times, R)` along the trajectory from the Bloch vector `rho0`.
    #[pyo3(signature = (rho0 = [1.0, 0.0, 0.0], r = [1.0, 0.0, 0.0], t_dir = [0.0, 1.0, 0.0], t_max = 5.0, dt = 1e-3))]
    fn rs_trajectory(
        &self,
        rho0: [f64; 3],
        r: [f64; 3],
        t_dir: [f64; 3],
        t_max: f64,
        dt: f64,
    ) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let dirs = BlochDirections::normalized(r, t_dir).py()?;
        let rho = DensityMatrix::from_bloch(rho0).py()?;
        let s = rs_trajectory(&self.generator, &rho, &dirs, t_max, dt).py()?;
        Ok((s.times().to_vec(), s.values().to_vec()))
    }

    #[pyo3(signature = (rho0 = [1.0, 0.0, 0.0], t_max = 5.0, dt = 1e-3))]
    fn purity_quantifier(&self, rho0: [f64; 3], t_max: f64, dt: f64) -> PyResult<f64> {
        let rho = DensityMatrix::from_bloch(rho0).py()?;
        purity_quantifier(&self.generator, &rho, t_max, dt).py()
    }

    #[pyo3(signature = (t_max = 5.0, dt = 0.01, epsilon = 0.01, t_min = 0.0, choi_dt = None))]
    fn scan(
        &self,
        t_max: f64,
        dt: f64,
        epsilon: f64,
        t_min: f64,
        choi_dt: Option<f64>,
    ) -> PyResult<String> {
        let settings = choi_settings(t_min, t_max, dt, epsilon, choi_dt);
        Ok(run_spinbath_scan(&self.params, self.label, &settings)
            .py()?
            .to_csv()
            .render())
    }

    #[pyo3(signature = (rho0 = [1.0, 0.0, 0.0], r = [1.0, 0.0, 0.0], t_dir = [0.0, 1.0, 0.0], t_max = 5.0, dt = 1e-3))]
    fn unital_scan(
        &self,
        rho0: [f64; 3],
        r: [f64; 3],
        t_dir: [f64; 3],
        t_max: f64,
        dt: f64,
    ) -> PyResult<String> {
        let settings = UnitalScanSettings {
            t_max,
            dt,
            rho0,
            dirs: BlochDirections::normalized(r, t_dir).py()?,
        };
        Ok(run_unital_scan(&self.params, self.label, &settings)
            .py()?
            .to_csv()
            .render())
    }
}

#[pymodule]
fn nmwitness(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(eigh, m)?)?;
    m.add_function(wrap_pyfunction!(kron, m)?)?;
    m.add_function(wrap_pyfunction!(pauli, m)?)?;
    m.add_function(wrap_pyfunction!(expectation, m)?)?;
    m.add_function(wrap_pyfunction!(variance, m)?)?;
    m.add_function(wrap_pyfunction!(rs_lhs, m)?)?;
    m.add_function(wrap_pyfunction!(sum_uncertainty, m)?)?;
    m.add_function(wrap_pyfunction!(variance_convexity_gap, m)?)?;
    m.add_function(wrap_pyfunction!(linear_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(rs_factorized, m)?)?;
    m.add_function(wrap_pyfunction!(bloch_state, m)?)?;
    m.add_function(wrap_pyfunction!(construct_rs_violating_pair, m)?)?;
    m.add_function(wrap_pyfunction!(detect, m)?)?;
    m.add_function(wrap_pyfunction!(quantifier, m)?)?;
    m.add_class::<WitnessReport>()?;
    m.add_class::<PyRateExpression>()?;
    m.add_class::<DephasingModel>()?;
    m.add_class::<SpinBathModel>()?;
    m.add("VIOLATION_TOL", DEFAULT_TOL)?;
    Ok(())
}
