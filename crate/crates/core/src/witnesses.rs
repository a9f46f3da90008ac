//! Witness operators built from the spectrum of a (possibly non-positive)
//! Choi matrix, and the detection verdict.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eig, ComplexMatrix, HermitianMatrix, SpectralDecomposition, C64};
use crate::uncertainty::{expectation, rs_lhs, sum_uncertainty, variance, ObservablePair};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    MarkovianConsistent,
    NonMarkovianDetected,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::MarkovianConsistent => "MARKOVIAN_CONSISTENT",
            Verdict::NonMarkovianDetected => "NON_MARKOVIAN_DETECTED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub min_eigenvalue: f64,
    pub negative_count: usize,
    /// `Tr[C Pᵢ]` per spectral projector, ascending eigenvalue order.
    pub projective_values: Vec<f64>,
    /// `rs_lhs(H₁, H₂, C)` for the constructed pair.
    pub rs_pair_value: Option<f64>,
    /// Sum relation `(lhs, rhs)` on the two most negative eigenprojectors.
    pub sum_pair_value: Option<(f64, f64)>,
    /// `rs_lhs` on the same two projectors, for comparison with the sum relation.
    pub projector_pair_rs: Option<f64>,
    /// `Δ²Pᵢ` per spectral projector.
    pub variance_witness_values: Vec<f64>,
    pub pair: Option<(HermitianMatrix, HermitianMatrix)>,
    pub verdict: Verdict,
}

impl WitnessReport {
    pub fn is_detected(&self) -> bool {
        self.verdict == Verdict::NonMarkovianDetected
    }

    pub fn sum_violated(&self, tol: f64) -> bool {
        matches!(self.sum_pair_value, Some((l, r)) if l - r < -tol)
    }

    pub const CSV_HEADER: &'static str = "min_eigenvalue,negative_count,rs_pair_value,\
projector_pair_rs,sum_lhs,sum_rhs,min_variance_witness,projective_values,verdict";

    /// One CSV row matching [`Self::CSV_HEADER`]; absent values are empty.
    pub fn to_csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(crate::scan::fmt_num).unwrap_or_default();
        let min_var = self
            .variance_witness_values
            .iter()
            .copied()
            .fold(None, |acc: Option<f64>, v| {
                Some(acc.map_or(v, |a| a.min(v)))
            });
        let projective = self
            .projective_values
            .iter()
            .map(|&v| crate::scan::fmt_num(v))
            .collect::<Vec<_>>()
            .join(";");
        [
            crate::scan::fmt_num(self.min_eigenvalue),
            self.negative_count.to_string(),
            opt(self.rs_pair_value),
            opt(self.projector_pair_rs),
            opt(self.sum_pair_value.map(|p| p.0)),
            opt(self.sum_pair_value.map(|p| p.1)),
            opt(min_var),
            projective,
            self.verdict.to_string(),
        ]
        .join(",")
    }
}

/// Eigenpairs with `λ < −tol`, most negative first.
pub fn negative_eigenspace(c: &HermitianMatrix, tol: f64) -> Result<Vec<(f64, Vec<C64>)>> {
    let spec = hermitian_eig(c)?;
    Ok(negatives(&spec, tol))
}

fn negatives(spec: &SpectralDecomposition, tol: f64) -> Vec<(f64, Vec<C64>)> {
    spec.eigenvalues
        .iter()
        .zip(&spec.eigenvectors)
        .take_while(|(&l, _)| l < -tol)
        .map(|(&l, v)| (l, v.clone()))
        .collect()
}

/// `H₁ = |λ⁻><λ⁻|` for the most negative eigenvector and
/// `H₂ = Σ_{k≠l} |λₖ><λₗ|` over the full eigenbasis.
///
/// On the eigenbasis `⟨H₂⟩ = 0`, `⟨H₂²⟩ = n − 1` and all cross terms with
/// `H₁` vanish, so the RS left-hand side reduces to `(λ⁻ − λ⁻²)(n − 1) < 0`.
pub fn construct_rs_violating_pair(
    c: &HermitianMatrix,
) -> Result<(HermitianMatrix, HermitianMatrix)> {
    construct_pair_with_tol(c, DEFAULT_TOL)
}

pub fn construct_pair_with_tol(
    c: &HermitianMatrix,
    tol: f64,
) -> Result<(HermitianMatrix, HermitianMatrix)> {
    let spec = hermitian_eig(c)?;
    build_pair(&spec, tol)
}

fn build_pair(
    spec: &SpectralDecomposition,
    tol: f64,
) -> Result<(HermitianMatrix, HermitianMatrix)> {
    if spec.min_eigenvalue() >= -tol {
        return Err(Error::NotConstructible { tol });
    }
    let h1 = spec.projector(0);
    let n = spec.dim();
    let mut h2 = ComplexMatrix::zeros(n);
    for k in 0..n {
        for l in 0..n {
            if k != l {
                h2.add_scaled(
                    C64::new(1.0, 0.0),
                    &ComplexMatrix::outer(&spec.eigenvectors[k], &spec.eigenvectors[l]),
                );
            }
        }
    }
    Ok((h1, HermitianMatrix::symmetrized(&h2)))
}

/// `Tr(C Pᵢ)` for each spectral projector of `C`.
pub fn projective_witness_values(c: &HermitianMatrix) -> Result<Vec<f64>> {
    let spec = hermitian_eig(c)?;
    (0..spec.dim())
        .map(|k| expectation(&spec.projector(k), c))
        .collect()
}

/// `Δ²W` over `C`; for a projector onto an eigenvalue `λ` this is `λ − λ²`.
pub fn variance_witness(c: &HermitianMatrix, w: &HermitianMatrix) -> Result<f64> {
    variance(w, c)
}

pub fn detect(c: &HermitianMatrix, tol: f64) -> Result<WitnessReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let spec = hermitian_eig(c)?;
    let projectors: Vec<HermitianMatrix> = (0..spec.dim()).map(|k| spec.projector(k)).collect();
    let projective_values = projectors
        .iter()
        .map(|p| expectation(p, c))
        .collect::<Result<Vec<_>>>()?;
    let variance_witness_values = projectors
        .iter()
        .map(|p| variance(p, c))
        .collect::<Result<Vec<_>>>()?;
    let negs = negatives(&spec, tol);
    let min_eigenvalue = spec.min_eigenvalue();

    let mut report = WitnessReport {
        min_eigenvalue,
        negative_count: negs.len(),
        projective_values,
        rs_pair_value: None,
        sum_pair_value: None,
        projector_pair_rs: None,
        variance_witness_values,
        pair: None,
        verdict: Verdict::MarkovianConsistent,
    };
    if negs.is_empty() {
        return Ok(report);
    }

    report.verdict = Verdict::NonMarkovianDetected;
    let (h1, h2) = build_pair(&spec, tol)?;
    let pair = ObservablePair::new(h1, h2)?;
    report.rs_pair_value = Some(rs_lhs(&pair, c)?);
    report.pair = Some((pair.a, pair.b));

    if negs.len() >= 2 {
        let w = ObservablePair::new(projectors[0].clone(), projectors[1].clone())?;
        let s = sum_uncertainty(&w, c)?;
        report.sum_pair_value = Some((s.lhs, s.rhs));
        report.projector_pair_rs = Some(rs_lhs(&w, c)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::ChoiState;
    use crate::models::dephasing_choi_from_coherence;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    #[test]
    fn negative_eigenspace_examples() {
        let phi = ChoiState::maximally_entangled(2);
        assert!(negative_eigenspace(phi.as_hermitian(), DEFAULT_TOL)
            .unwrap()
            .is_empty());

        let c = dephasing_choi_from_coherence(1.2);
        let negs = negative_eigenspace(&c, DEFAULT_TOL).unwrap();
        assert_eq!(negs.len(), 1);
        assert!(approx(negs[0].0, -0.1, 1e-14));
        let s = 0.5f64.sqrt();
        let v = &negs[0].1;
        // Eigenvector (|00> − |11>)/√2 up to a global phase.
        let overlap = v[0] * s - v[3] * s;
        assert!(approx(overlap.norm(), 1.0, 1e-12));

        let d = HermitianMatrix::from_real_diagonal(&[1.4, -0.2, -0.2]);
        let negs = negative_eigenspace(&d, DEFAULT_TOL).unwrap();
        assert_eq!(negs.len(), 2);
        assert!(negs.iter().all(|(l, _)| approx(*l, -0.2, 1e-15)));
    }

    #[test]
    fn pair_on_dephasing_choi() {
        let c = dephasing_choi_from_coherence(1.2);
        let (h1, h2) = construct_rs_violating_pair(&c).unwrap();
        assert!(approx(variance(&h1, &c).unwrap(), -0.11, 1e-14));
        assert!(approx(variance(&h2, &c).unwrap(), 3.0, 1e-13));
        let rs = rs_lhs(&ObservablePair::new(h1, h2).unwrap(), &c).unwrap();
        assert!(approx(rs, -0.33, 1e-13));
    }

    #[test]
    fn pair_on_diagonal_example() {
        let d = HermitianMatrix::from_real_diagonal(&[1.4, -0.2, -0.2]);
        let (h1, h2) = construct_rs_violating_pair(&d).unwrap();
        let rs = rs_lhs(&ObservablePair::new(h1, h2).unwrap(), &d).unwrap();
        // (λ − λ²)(n − 1) = (−0.24)(2)
        assert!(approx(rs, -0.48, 1e-14));
    }

    #[test]
    fn pair_not_constructible_for_positive() {
        let phi = ChoiState::maximally_entangled(2);
        assert!(matches!(
            construct_rs_violating_pair(phi.as_hermitian()),
            Err(Error::NotConstructible { .. })
        ));
    }

    #[test]
    fn projective_values() {
        let phi = ChoiState::maximally_entangled(2);
        let v = projective_witness_values(phi.as_hermitian()).unwrap();
        let expected = [0.0, 0.0, 0.0, 1.0];
        assert!(v.iter().zip(expected).all(|(a, b)| approx(*a, b, 1e-15)));

        let c = dephasing_choi_from_coherence(1.2);
        let v = projective_witness_values(&c).unwrap();
        assert!(v.iter().any(|&x| approx(x, -0.1, 1e-14)));
    }

    #[test]
    fn variance_witness_improves_on_projector() {
        let c = dephasing_choi_from_coherence(1.2);
        let spec = c.eig().unwrap();
        let w_neg = spec.projector(0);
        let vw = variance_witness(&c, &w_neg).unwrap();
        assert!(approx(vw, -0.11, 1e-14));
        assert!(vw <= expectation(&w_neg, &c).unwrap());

        let valid = dephasing_choi_from_coherence(0.6);
        let spec = valid.eig().unwrap();
        assert!(variance_witness(&valid, &spec.projector(3)).unwrap() >= 0.0);
    }

    #[test]
    fn detect_examples() {
        let phi = ChoiState::maximally_entangled(2);
        let r = detect(phi.as_hermitian(), DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::MarkovianConsistent);
        assert!(r.rs_pair_value.is_none());

        let c = dephasing_choi_from_coherence(1.2);
        let r = detect(&c, DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::NonMarkovianDetected);
        assert!(r.rs_pair_value.unwrap() < 0.0);
        assert!(r.sum_pair_value.is_none());

        let d = HermitianMatrix::from_real_diagonal(&[1.4, -0.2, -0.2]);
        let r = detect(&d, DEFAULT_TOL).unwrap();
        assert!(r.is_detected());
        let (l, rh) = r.sum_pair_value.unwrap();
        assert!(approx(l, -0.48, 1e-14) && rh == 0.0);
        assert!(r.sum_violated(DEFAULT_TOL));
        assert!(approx(r.projector_pair_rs.unwrap(), 0.056, 1e-14));

        assert!(detect(&d, 0.0).is_err());
    }

    #[test]
    fn csv_row_has_header_arity() {
        let d = HermitianMatrix::from_real_diagonal(&[1.4, -0.2, -0.2]);
        let r = detect(&d, DEFAULT_TOL).unwrap();
        let row = r.to_csv_row();
        assert_eq!(
            row.split(',').count(),
            WitnessReport::CSV_HEADER.split(',').count()
        );
        assert!(row.ends_with("NON_MARKOVIAN_DETECTED"));
    }
}
