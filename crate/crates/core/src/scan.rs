//! Time-grid scans behind the command-line tool, rendered as CSV with
//! `#`-prefixed provenance lines.

use rayon::prelude::*;

use crate::dynamics::{intermediate_choi, DensityMatrix, LindbladGenerator, DEFAULT_CHOI_STEPS};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix, C64};
use crate::models::{dephasing_generator, spinbath_generator, DephasingParams, SpinBathParams};
use crate::quantifier::{
    check_unital, nm_quantifier, rs_rate_analytic, time_grid, unital_trajectory, TimeSeries,
};
use crate::uncertainty::{
    linear_entropy, rs_lhs, sum_uncertainty, BlochDirections, ObservablePair,
};
use crate::witnesses::{detect, Verdict, WitnessReport, DEFAULT_TOL};

/// Formats with 12 significant digits, `%g` style, trailing zeros trimmed.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (11 - exp) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rendered CSV document.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CsvDocument {
    pub metadata: Vec<String>,
    pub header: String,
    pub rows: Vec<String>,
    pub footer: Vec<String>,
}

impl CsvDocument {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.metadata {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&self.header);
        out.push('\n');
        for row in &self.rows {
            out.push_str(row);
            out.push('\n');
        }
        for line in &self.footer {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

/// Grid and Choi-interval settings shared by the Choi-state scans.
#[derive(Clone, Debug)]
pub struct ChoiScanSettings {
    pub t_min: f64,
    pub t_max: f64,
    pub dt: f64,
    pub epsilon: f64,
    /// RK4 step inside each interval; `None` means `ε/100`.
    pub choi_dt: Option<f64>,
    pub observables: ObservablePair,
    pub observable_labels: (String, String),
    pub tol: f64,
}

impl Default for ChoiScanSettings {
    fn default() -> Self {
        Self {
            t_min: 0.0,
            t_max: 5.0,
            dt: 0.01,
            epsilon: crate::dynamics::DEFAULT_EPSILON,
            choi_dt: None,
            observables: ObservablePair::default_choi_pair(),
            observable_labels: ("xy".into(), "xx".into()),
            tol: DEFAULT_TOL,
        }
    }
}

impl ChoiScanSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_max > self.t_min) {
            return Err(Error::InvalidArgument(format!(
                "t_max = {} must exceed t_min = {}",
                self.t_max, self.t_min
            )));
        }
        if !(self.dt > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "dt = {} must be positive",
                self.dt
            )));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "epsilon = {} must be positive",
                self.epsilon
            )));
        }
        if let Some(h) = self.choi_dt {
            if !(h > 0.0 && h <= self.epsilon) {
                return Err(Error::InvalidArgument(format!(
                    "choi step {h} must lie in (0, epsilon]"
                )));
            }
        }
        if self.observables.dim() != 4 {
            return Err(Error::InvalidArgument(
                "Choi observables must act on two qubits".into(),
            ));
        }
        Ok(())
    }

    pub fn choi_step(&self) -> f64 {
        self.choi_dt
            .unwrap_or(self.epsilon / DEFAULT_CHOI_STEPS as f64)
    }

    /// Grid points `t_min + k·dt` not exceeding `t_max`.
    pub fn grid(&self, t_max: f64) -> Vec<f64> {
        let n = ((t_max - self.t_min) / self.dt + 1e-9).floor();
        if n < 0.0 {
            return Vec::new();
        }
        (0..=n as usize)
            .map(|k| self.t_min + k as f64 * self.dt)
            .collect()
    }

    fn metadata(&self) -> Vec<String> {
        vec![
            format!(
                "grid: t_min={} t_max={} dt={}",
                self.t_min, self.t_max, self.dt
            ),
            format!(
                "choi: epsilon={} rk4_dt={} integrator=rk4-fixed-step",
                self.epsilon,
                self.choi_step()
            ),
            format!(
                "observables: A={} B={}",
                self.observable_labels.0, self.observable_labels.1
            ),
            format!("tolerance: {}", fmt_num(self.tol)),
            "seed: none (deterministic)".to_string(),
        ]
    }
}

/// One grid point of a Choi-state scan.
#[derive(Clone, Debug)]
pub struct ChoiScanRow {
    pub t: f64,
    pub rates: Vec<f64>,
    pub min_choi_eig: f64,
    pub rs_lhs: f64,
    pub sum_lhs: f64,
    pub sum_rhs: f64,
    pub report: WitnessReport,
}

impl ChoiScanRow {
    pub fn verdict(&self) -> Verdict {
        self.report.verdict
    }

    fn to_csv(&self) -> String {
        let mut cells = vec![fmt_num(self.t)];
        cells.extend(self.rates.iter().map(|&r| fmt_num(r)));
        cells.push(fmt_num(self.min_choi_eig));
        cells.push(fmt_num(self.rs_lhs));
        cells.push(fmt_num(self.sum_lhs));
        cells.push(fmt_num(self.sum_rhs));
        cells.push(self.report.verdict.to_string());
        cells.join(",")
    }
}

#[derive(Clone, Debug)]
pub struct ChoiScan {
    pub rows: Vec<ChoiScanRow>,
    pub rate_names: Vec<String>,
    pub metadata: Vec<String>,
    pub notices: Vec<String>,
}

impl ChoiScan {
    pub fn header(&self) -> String {
        let mut cols = vec!["t".to_string()];
        cols.extend((1..=self.rate_names.len()).map(|i| format!("rate_{i}")));
        cols.extend(
            ["min_choi_eig", "rs_lhs", "sum_lhs", "sum_rhs", "verdict"]
                .iter()
                .map(|s| s.to_string()),
        );
        cols.join(",")
    }

    pub fn to_csv(&self) -> CsvDocument {
        let mut metadata = self.metadata.clone();
        metadata.extend(self.notices.iter().map(|n| format!("notice: {n}")));
        CsvDocument {
            metadata,
            header: self.header(),
            rows: self.rows.iter().map(ChoiScanRow::to_csv).collect(),
            footer: vec![format!(
                "detections: {} of {} rows",
                self.rows.iter().filter(|r| r.report.is_detected()).count(),
                self.rows.len()
            )],
        }
    }
}

fn scan_row(gen: &LindbladGenerator, settings: &ChoiScanSettings, t: f64) -> Result<ChoiScanRow> {
    let choi = intermediate_choi(gen, t, settings.epsilon, settings.choi_step())?;
    let state = choi.as_hermitian();
    let report = detect(state, settings.tol)?;
    let rs = rs_lhs(&settings.observables, state)?;
    let sum = sum_uncertainty(&settings.observables, state)?;
    Ok(ChoiScanRow {
        t,
        rates: gen.rates_at(t),
        min_choi_eig: report.min_eigenvalue,
        rs_lhs: rs,
        sum_lhs: sum.lhs,
        sum_rhs: sum.rhs,
        report,
    })
}

/// Evaluates each grid time independently (in parallel); rows stay in time order.
pub fn run_choi_scan(
    gen: &LindbladGenerator,
    settings: &ChoiScanSettings,
    times: &[f64],
) -> Result<Vec<ChoiScanRow>> {
    settings.validate()?;
    times
        .par_iter()
        .map(|&t| scan_row(gen, settings, t))
        .collect()
}

/// How a dephasing scan treats poles of `γ(t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PolePolicy {
    /// Stop the window `margin` before the first pole.
    ClipBeforeFirst { margin: f64 },
    /// Scan past poles, skipping grid points whose interval `[t, t+ε]`
    /// comes within `margin` of one.
    SkipNear { margin: f64 },
}

impl Default for PolePolicy {
    fn default() -> Self {
        PolePolicy::ClipBeforeFirst { margin: 0.1 }
    }
}

pub fn run_dephasing_scan(
    params: &DephasingParams,
    settings: &ChoiScanSettings,
    policy: PolePolicy,
) -> Result<ChoiScan> {
    settings.validate()?;
    let gen = dephasing_generator(params);
    let mut notices = Vec::new();
    let mut t_max = settings.t_max;
    let mut times;
    match policy {
        PolePolicy::ClipBeforeFirst { margin } => {
            if let Some(pole) = params.first_pole() {
                let limit = pole - margin;
                if limit < t_max {
                    notices.push(format!(
                        "rate has a pole at t={}; window clipped to t_max={}",
                        fmt_num(pole),
                        fmt_num(limit)
                    ));
                    t_max = limit;
                }
            }
            times = settings.grid(t_max);
        }
        PolePolicy::SkipNear { margin } => {
            let poles = params.poles(settings.t_max + settings.epsilon + margin);
            times = settings.grid(t_max);
            let before = times.len();
            times.retain(|&t| {
                !poles
                    .iter()
                    .any(|&p| p > t - margin && p < t + settings.epsilon + margin)
            });
            if !poles.is_empty() {
                let list: Vec<String> = poles.iter().map(|&p| fmt_num(p)).collect();
                notices.push(format!(
                    "rate poles at t=[{}]; skipped {} grid points within {} of a pole",
                    list.join(";"),
                    before - times.len(),
                    margin
                ));
            }
        }
    }
    if times.is_empty() {
        return Err(Error::InvalidArgument(
            "no grid points remain after pole handling".into(),
        ));
    }
    let rows = run_choi_scan(&gen, settings, &times)?;
    let mut metadata = vec![
        format!("nmwitness {} dephasing scan", env!("CARGO_PKG_VERSION")),
        format!(
            "model: dephasing lambda={} gamma0={}",
            params.lambda(),
            params.gamma0()
        ),
        "rates: rate_1=gamma".to_string(),
        format!("pole_policy: {policy:?}"),
    ];
    metadata.extend(settings.metadata());
    Ok(ChoiScan {
        rows,
        rate_names: vec!["gamma".into()],
        metadata,
        notices,
    })
}

fn spinbath_metadata(label: &str, p: &SpinBathParams) -> Vec<String> {
    vec![
        format!("model: {label}"),
        format!("unitary: U(t)={}", p.unitary),
        format!(
            "rates: rate_1=deph:{} rate_2=dis:{} rate_3=abs:{}",
            p.deph, p.dis, p.abs
        ),
    ]
}

/// `label` is recorded in the metadata (e.g. `spinbath-demo`, `custom`).
pub fn run_spinbath_scan(
    params: &SpinBathParams,
    label: &str,
    settings: &ChoiScanSettings,
) -> Result<ChoiScan> {
    settings.validate()?;
    let gen = spinbath_generator(params);
    let times = settings.grid(settings.t_max);
    let rows = run_choi_scan(&gen, settings, &times)?;
    let mut metadata = vec![format!(
        "nmwitness {} spinbath scan",
        env!("CARGO_PKG_VERSION")
    )];
    metadata.extend(spinbath_metadata(label, params));
    metadata.extend(settings.metadata());
    Ok(ChoiScan {
        rows,
        rate_names: vec!["deph".into(), "dis".into(), "abs".into()],
        metadata,
        notices: Vec::new(),
    })
}

#[derive(Clone, Debug)]
pub struct UnitalScanSettings {
    pub t_max: f64,
    pub dt: f64,
    pub rho0: [f64; 3],
    pub dirs: BlochDirections,
}

impl Default for UnitalScanSettings {
    fn default() -> Self {
        Self {
            t_max: 5.0,
            dt: crate::dynamics::DEFAULT_STATE_DT,
            rho0: [1.0, 0.0, 0.0],
            dirs: BlochDirections::orthogonal_xy(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitalScanRow {
    pub t: f64,
    pub rates: Vec<f64>,
    pub r: f64,
    pub drdt: f64,
    pub s_l: f64,
}

#[derive(Clone, Debug)]
pub struct UnitalScan {
    pub rows: Vec<UnitalScanRow>,
    pub n: f64,
    pub n_purity: f64,
    pub metadata: Vec<String>,
}

impl UnitalScan {
    pub fn r_series(&self) -> Result<TimeSeries> {
        TimeSeries::new(
            self.rows.iter().map(|r| r.t).collect(),
            self.rows.iter().map(|r| r.r).collect(),
        )
    }

    pub fn to_csv(&self) -> CsvDocument {
        CsvDocument {
            metadata: self.metadata.clone(),
            header: "t,rate_1,rate_2,rate_3,R,dRdt,S_l".to_string(),
            rows: self
                .rows
                .iter()
                .map(|row| {
                    let mut cells = vec![fmt_num(row.t)];
                    cells.extend(row.rates.iter().map(|&r| fmt_num(r)));
                    cells.push(fmt_num(row.r));
                    cells.push(fmt_num(row.drdt));
                    cells.push(fmt_num(row.s_l));
                    cells.join(",")
                })
                .collect(),
            footer: vec![
                format!("N = {}", fmt_num(self.n)),
                format!("N_purity = {}", fmt_num(self.n_purity)),
            ],
        }
    }
}

pub fn run_unital_scan(
    params: &SpinBathParams,
    label: &str,
    settings: &UnitalScanSettings,
) -> Result<UnitalScan> {
    let gen = spinbath_generator(params);
    let (times, _) = time_grid(settings.t_max, settings.dt)?;
    // Reject before integrating.
    check_unital(&gen, &times)?;
    let rho0 = DensityMatrix::from_bloch(settings.rho0)?;
    let (times, states) = unital_trajectory(&gen, &rho0, settings.t_max, settings.dt)?;
    let pair = settings.dirs.observables();

    let rows = times
        .par_iter()
        .zip(states.par_iter())
        .map(|(&t, rho)| {
            Ok(UnitalScanRow {
                t,
                rates: gen.rates_at(t),
                r: rs_lhs(&pair, rho.as_hermitian())?,
                drdt: rs_rate_analytic(&gen, rho, &settings.dirs, t)?,
                s_l: linear_entropy(rho)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let r_series = TimeSeries::new(times.clone(), rows.iter().map(|r| r.r).collect())?;
    let s_series = TimeSeries::new(times, rows.iter().map(|r| r.s_l).collect())?;
    let n = nm_quantifier(&r_series)?;
    let n_purity = nm_quantifier(&s_series)?;

    let mut metadata = vec![format!(
        "nmwitness {} unital scan",
        env!("CARGO_PKG_VERSION")
    )];
    metadata.extend(spinbath_metadata(label, params));
    metadata.push(format!(
        "grid: t_max={} dt={} integrator=rk4-fixed-step",
        settings.t_max, settings.dt
    ));
    metadata.push(format!(
        "observables: r={:?} t_dir={:?}",
        settings.dirs.r(),
        settings.dirs.t()
    ));
    metadata.push(format!("rho0: bloch={:?}", settings.rho0));
    if settings.rho0 == [1.0, 0.0, 0.0] {
        metadata.push(
            "rho0_note: |+><+| used; a half-weighted |+><+| has trace 1/2 and is not a state"
                .to_string(),
        );
    }
    metadata.push("seed: none (deterministic)".to_string());

    Ok(UnitalScan {
        rows,
        n,
        n_purity,
        metadata,
    })
}

/// Reads a Hermitian matrix stored one row per line as `re,im` pairs.
/// Blank lines and lines starting with `#` are ignored.
pub fn read_matrix_csv(text: &str) -> Result<HermitianMatrix> {
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums = line
            .split(',')
            .map(|s| {
                s.trim().parse::<f64>().map_err(|_| Error::Parse {
                    offset: lineno + 1,
                    message: format!("line {}: bad number '{}'", lineno + 1, s.trim()),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if nums.len() % 2 != 0 {
            return Err(Error::Parse {
                offset: lineno + 1,
                message: format!("line {}: odd number of values", lineno + 1),
            });
        }
        rows.push(nums.chunks(2).map(|p| C64::new(p[0], p[1])).collect());
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            offset: 0,
            message: "no matrix rows".into(),
        });
    }
    HermitianMatrix::new(ComplexMatrix::from_rows(&rows)?)
}

pub fn detect_document(matrix: &HermitianMatrix, tol: f64, source: &str) -> Result<CsvDocument> {
    let report = detect(matrix, tol)?;
    Ok(CsvDocument {
        metadata: vec![
            format!("nmwitness {} detect-file", env!("CARGO_PKG_VERSION")),
            format!("source: {source}"),
            format!("dim: {}", matrix.dim()),
            format!("tolerance: {}", fmt_num(tol)),
        ],
        header: WitnessReport::CSV_HEADER.to_string(),
        rows: vec![report.to_csv_row()],
        footer: Vec::new(),
    })
}
