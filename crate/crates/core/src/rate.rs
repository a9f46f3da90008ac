//! Time-dependent scalar coefficients: Lindblad rates and Hamiltonian
//! prefactors. Times and rates are dimensionless throughout.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::RateExpression;
use crate::models::DephasingParams;

/// Smooth dip used by the shipped spin-bath demonstration:
/// `base * (1 - depth * exp(-((t - center)/width)^2))`.
///
/// For `depth > 1` the value is negative exactly on
/// `|t - center| < width * sqrt(ln depth)`. This family is illustrative only;
/// it is not derived from a microscopic bath model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianDip {
    pub base: f64,
    pub depth: f64,
    pub center: f64,
    pub width: f64,
}

impl GaussianDip {
    pub fn shape(&self, t: f64) -> f64 {
        let x = (t - self.center) / self.width;
        1.0 - self.depth * (-x * x).exp()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.base * self.shape(t)
    }

    /// Interval on which the shape factor is negative, if any.
    pub fn negative_window(&self) -> Option<(f64, f64)> {
        if self.depth <= 1.0 {
            return None;
        }
        let half = self.width * self.depth.ln().sqrt();
        Some((self.center - half, self.center + half))
    }
}

/// Samples `(t, rate)` with linear interpolation inside the table and
/// constant extrapolation outside it.
#[derive(Clone, Debug, PartialEq)]
pub struct TabulatedRate {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl TabulatedRate {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::RateTable("table is empty".into()));
        }
        if times.len() != values.len() {
            return Err(Error::RateTable(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        if let Some(i) = times.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::RateTable(format!(
                "times not strictly increasing at row {}",
                i + 2
            )));
        }
        if times.iter().chain(&values).any(|x| !x.is_finite()) {
            return Err(Error::RateTable("non-finite entry".into()));
        }
        Ok(Self { times, values })
    }

    /// Reads a two-column CSV with a header row.
    pub fn from_csv_reader<R: std::io::Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| Error::RateTable(e.to_string()))?
            .clone();
        if headers.len() != 2 {
            return Err(Error::RateTable(format!(
                "expected 2 header columns, found {}",
                headers.len()
            )));
        }
        if headers.iter().any(|h| h.parse::<f64>().is_ok()) {
            return Err(Error::RateTable("header row required".into()));
        }
        let mut times = Vec::new();
        let mut values = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::RateTable(e.to_string()))?;
            if record.len() != 2 {
                return Err(Error::RateTable(format!(
                    "row {}: expected 2 columns, found {}",
                    i + 2,
                    record.len()
                )));
            }
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::RateTable(format!("row {}: bad number '{s}'", i + 2)))
            };
            times.push(parse(&record[0])?);
            values.push(parse(&record[1])?);
        }
        Self::new(times, values)
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let file =
            std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_csv_reader(file)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.times.len();
        if t <= self.times[0] {
            return self.values[0];
        }
        if t >= self.times[n - 1] {
            return self.values[n - 1];
        }
        let hi = self.times.partition_point(|&x| x <= t);
        let lo = hi - 1;
        let frac = (t - self.times[lo]) / (self.times[hi] - self.times[lo]);
        self.values[lo] + frac * (self.values[hi] - self.values[lo])
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// A total, deterministic function of time.
#[derive(Clone)]
pub enum RateFunction {
    Constant(f64),
    Dephasing(DephasingParams),
    Dip(GaussianDip),
    Expression(RateExpression),
    Table(TabulatedRate),
    Custom {
        label: String,
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl RateFunction {
    pub fn zero() -> Self {
        RateFunction::Constant(0.0)
    }

    pub fn custom(
        label: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        RateFunction::Custom {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    /// Parses either an expression or `@path.csv` for a tabulated rate.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(path) = spec.strip_prefix('@') {
            Ok(RateFunction::Table(TabulatedRate::from_csv_path(
                Path::new(path),
            )?))
        } else {
            Ok(RateFunction::Expression(RateExpression::parse(spec)?))
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            RateFunction::Constant(c) => *c,
            RateFunction::Dephasing(p) => p.rate_unchecked(t),
            RateFunction::Dip(d) => d.eval(t),
            RateFunction::Expression(e) => e.eval(t),
            RateFunction::Table(tab) => tab.eval(t),
            RateFunction::Custom { f, .. } => f(t),
        }
    }

    pub fn is_identically_zero(&self) -> bool {
        matches!(self, RateFunction::Constant(c) if *c == 0.0)
    }

    pub fn describe(&self) -> String {
        self.to_string()
    }
}

impl From<f64> for RateFunction {
    fn from(c: f64) -> Self {
        RateFunction::Constant(c)
    }
}

impl fmt::Display for RateFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RateFunction::Constant(c) => write!(f, "constant({c})"),
            RateFunction::Dephasing(p) => {
                write!(f, "dephasing(lambda={}, gamma0={})", p.lambda(), p.gamma0())
            }
            RateFunction::Dip(d) => write!(
                f,
                "dip(base={}, depth={}, center={}, width={})",
                d.base, d.depth, d.center, d.width
            ),
            RateFunction::Expression(e) => write!(f, "expr({})", e.source()),
            RateFunction::Table(t) => write!(f, "table({} samples)", t.len()),
            RateFunction::Custom { label, .. } => write!(f, "custom({label})"),
        }
    }
}

impl fmt::Debug for RateFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RateFunction::{self}")
    }
}
