use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} exceeds the supported maximum of {max}", max = crate::matrix::MAX_DIM)]
    DimensionTooLarge(usize),

    #[error("matrix is not Hermitian (max |M - M^dag| = {0:.3e})")]
    NotHermitian(f64),

    #[error("entry count {found} does not match dim^2 = {expected}")]
    BadEntryCount { expected: usize, found: usize },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal {off:.3e})")]
    EigenNotConverged { sweeps: usize, off: f64 },

    #[error("trace {0:.12} differs from 1")]
    NotUnitTrace(f64),

    #[error("matrix is not positive semidefinite (minimum eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("rate function is singular at t = {t}")]
    SingularRate { t: f64 },

    #[error("rate function has a pole at t = {pole} inside [{start}, {end}]")]
    PoleInInterval { pole: f64, start: f64, end: f64 },

    #[error("integration blow-up at t = {t}: minimum eigenvalue {min_eigenvalue:.3e}")]
    IntegrationBlowUp { t: f64, min_eigenvalue: f64 },

    #[error("generator is not unital at t = {t} (|L(I/d)| = {residual:.3e})")]
    NonUnital { t: f64, residual: f64 },

    #[error("no eigenvalue below -{tol:e}; violating pair not constructible")]
    NotConstructible { tol: f64 },

    #[error("numerical residue too large: {0}")]
    Numerical(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("time grid is not strictly increasing at index {0}")]
    UnorderedGrid(usize),

    #[error("rate table: {0}")]
    RateTable(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// True for failures caused by the numerics rather than by the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::EigenNotConverged { .. }
                | Error::SingularRate { .. }
                | Error::PoleInInterval { .. }
                | Error::IntegrationBlowUp { .. }
                | Error::Numerical(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
