//! Detection and quantification of non-Markovian qubit dynamics from
//! uncertainty relations evaluated on intermediate Choi states.
//!
//! The crate is organised bottom-up:
//!
//! * [`matrix`]: small dense complex matrices, Hermitian eigensolver, Pauli algebra.
//! * [`dynamics`]: time-local Lindblad generators, RK4 propagation, intermediate Choi states.
//! * [`models`]: the dephasing and spin-bath models.
//! * [`uncertainty`]: Robertson–Schrödinger and sum uncertainty relations.
//! * [`witnesses`]: construction of uncertainty pairs violated by non-positive Choi states.
//! * [`quantifier`]: the RS-uncertainty quantifier for unital qubit dynamics.
//! * [`scan`]: time-grid scans and CSV output used by the `nmwitness` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod expr;
pub mod matrix;
pub mod models;
pub mod quantifier;
pub mod rate;
pub mod scan;
pub mod uncertainty;
pub mod witnesses;

pub use dynamics::{intermediate_choi, ChoiState, DensityMatrix, LindbladGenerator};
pub use error::{Error, Result};
pub use matrix::{hermitian_eig, ComplexMatrix, HermitianMatrix, SpectralDecomposition, C64};
pub use models::{DephasingParams, SpinBathDemo, SpinBathParams};
pub use rate::RateFunction;
pub use uncertainty::{rs_lhs, sum_uncertainty, BlochDirections, ObservablePair};
pub use witnesses::{detect, Verdict, WitnessReport};
