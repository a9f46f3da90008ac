use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nmwitness_core::error::{Error, Result};
use nmwitness_core::models::{DephasingParams, SpinBathDemo, SpinBathParams};
use nmwitness_core::rate::RateFunction;
use nmwitness_core::scan::{
    detect_document, read_matrix_csv, run_dephasing_scan, run_spinbath_scan, run_unital_scan,
    ChoiScanSettings, CsvDocument, PolePolicy, UnitalScanSettings,
};
use nmwitness_core::uncertainty::{BlochDirections, ObservablePair};
use nmwitness_core::witnesses::DEFAULT_TOL;

/// Detect and quantify non-Markovian qubit dynamics with uncertainty relations.
#[derive(Parser)]
#[command(name = "nmwitness", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan the exactly solvable dephasing model.
    Dephasing(DephasingArgs),
    /// Scan the spin-bath model (demo rates unless rates are given).
    Spinbath(SpinbathArgs),
    /// RS-uncertainty trajectory and quantifier for unital spin-bath dynamics.
    Unital(UnitalArgs),
    /// Run the witnesses on a Hermitian matrix stored as CSV of "re,im" pairs.
    DetectFile(DetectArgs),
}

#[derive(Args)]
struct GridArgs {
    #[arg(long = "t-min", default_value_t = 0.0)]
    t_min: f64,
    #[arg(long = "t-max", default_value_t = 5.0)]
    t_max: f64,
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
    /// Width of the intermediate interval [t, t+ε].
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    /// RK4 step inside each interval (default ε/100).
    #[arg(long = "choi-dt")]
    choi_dt: Option<f64>,
    /// Pauli labels of the first two-qubit observable.
    #[arg(long = "obs-a", default_value = "xy")]
    obs_a: String,
    #[arg(long = "obs-b", default_value = "xx")]
    obs_b: String,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl GridArgs {
    fn settings(&self) -> Result<ChoiScanSettings> {
        let s = ChoiScanSettings {
            t_min: self.t_min,
            t_max: self.t_max,
            dt: self.dt,
            epsilon: self.epsilon,
            choi_dt: self.choi_dt,
            observables: ObservablePair::from_pauli_labels(&self.obs_a, &self.obs_b)?,
            observable_labels: (self.obs_a.clone(), self.obs_b.clone()),
            tol: self.tol,
        };
        s.validate()?;
        Ok(s)
    }
}

#[derive(Args)]
struct DephasingArgs {
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 2.0)]
    gamma0: f64,
    /// Continue past poles of γ(t), skipping grid points near them.
    #[arg(long = "across-poles")]
    across_poles: bool,
    /// Distance kept from poles.
    #[arg(long = "pole-margin", default_value_t = 0.1)]
    pole_margin: f64,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct RateArgs {
    /// Dephasing rate: expression in t, or @file.csv.
    #[arg(long = "rate-deph")]
    rate_deph: Option<String>,
    #[arg(long = "rate-dis")]
    rate_dis: Option<String>,
    #[arg(long = "rate-abs")]
    rate_abs: Option<String>,
    /// Coefficient U(t) of the σz Hamiltonian.
    #[arg(long)]
    unitary: Option<String>,
    #[arg(long = "demo-depth", default_value_t = 2.0)]
    demo_depth: f64,
    #[arg(long = "demo-center", default_value_t = 2.0)]
    demo_center: f64,
    #[arg(long = "demo-width", default_value_t = 0.5)]
    demo_width: f64,
}

impl RateArgs {
    fn is_custom(&self) -> bool {
        self.rate_deph.is_some()
            || self.rate_dis.is_some()
            || self.rate_abs.is_some()
            || self.unitary.is_some()
    }

    /// Custom rates when any is given (missing ones are zero), demo family otherwise.
    fn params(&self) -> Result<(SpinBathParams, &'static str)> {
        if !self.is_custom() {
            let demo = SpinBathDemo {
                depth: self.demo_depth,
                center: self.demo_center,
                width: self.demo_width,
                ..SpinBathDemo::default()
            };
            return Ok((demo.params(), "spinbath-demo"));
        }
        let load = |s: &Option<String>| match s {
            Some(spec) => RateFunction::from_spec(spec),
            None => Ok(RateFunction::zero()),
        };
        Ok((
            SpinBathParams {
                unitary: load(&self.unitary)?,
                deph: load(&self.rate_deph)?,
                dis: load(&self.rate_dis)?,
                abs: load(&self.rate_abs)?,
            },
            "spinbath-custom",
        ))
    }
}

#[derive(Args)]
struct SpinbathArgs {
    #[command(flatten)]
    rates: RateArgs,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct UnitalArgs {
    #[command(flatten)]
    rates: RateArgs,
    #[arg(long = "t-max", default_value_t = 5.0)]
    t_max: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Bloch vector of the initial state.
    #[arg(long, default_value = "1,0,0")]
    rho0: String,
    #[arg(long, default_value = "1,0,0")]
    r: String,
    #[arg(long = "t-dir", default_value = "0,1,0")]
    t_dir: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DetectArgs {
    file: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_vec3(s: &str) -> Result<[f64; 3]> {
    let parts = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad component '{p}' in '{s}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    <[f64; 3]>::try_from(parts)
        .map_err(|_| Error::InvalidArgument(format!("expected x,y,z but got '{s}'")))
}

fn emit(doc: &CsvDocument, out: Option<&PathBuf>) -> Result<()> {
    let text = doc.render();
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Dephasing(a) => {
            let params = DephasingParams::new(a.lambda, a.gamma0)?;
            let policy = if a.across_poles {
                PolePolicy::SkipNear {
                    margin: a.pole_margin,
                }
            } else {
                PolePolicy::ClipBeforeFirst {
                    margin: a.pole_margin,
                }
            };
            let scan = run_dephasing_scan(&params, &a.grid.settings()?, policy)?;
            for n in &scan.notices {
                eprintln!("notice: {n}");
            }
            emit(&scan.to_csv(), a.grid.out.as_ref())
        }
        Command::Spinbath(a) => {
            let (params, label) = a.rates.params()?;
            let scan = run_spinbath_scan(&params, label, &a.grid.settings()?)?;
            emit(&scan.to_csv(), a.grid.out.as_ref())
        }
        Command::Unital(a) => {
            let (params, label) = a.rates.params()?;
            let settings = UnitalScanSettings {
                t_max: a.t_max,
                dt: a.dt,
                rho0: parse_vec3(&a.rho0)?,
                dirs: BlochDirections::normalized(parse_vec3(&a.r)?, parse_vec3(&a.t_dir)?)?,
            };
            let scan = run_unital_scan(&params, label, &settings)?;
            emit(&scan.to_csv(), a.out.as_ref())
        }
        Command::DetectFile(a) => {
            let text = fs::read_to_string(&a.file)?;
            let m = read_matrix_csv(&text)?;
            let doc = detect_document(&m, a.tol, &a.file.display().to_string())?;
            emit(&doc, a.out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_numerical() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
