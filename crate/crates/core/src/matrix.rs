//! Dense complex matrices for the small dimensions used here (d <= 16), plus
//! a cyclic Jacobi eigensolver for Hermitian matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const MAX_DIM: usize = 16;

/// Entrywise tolerance for `M == M^dag`.
pub const HERMITIAN_TOL: f64 = 1e-12;

const JACOBI_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::BadEntryCount {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from rows; all rows must have the same length as the row count.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    /// `|v><w|`
    pub fn outer(v: &[C64], w: &[C64]) -> Self {
        let dim = v.len();
        assert_eq!(dim, w.len(), "outer product of unequal vectors");
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * w[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        self.data
            .chunks(self.dim.max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    /// `self + s * other`, in place.
    pub fn add_scaled(&mut self, s: C64, other: &ComplexMatrix) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    fn check_same_dim(&self, other: &ComplexMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &ComplexMatrix) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &ComplexMatrix) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &ComplexMatrix) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self * other)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `Tr[M^dag M]`
    pub fn hs_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn frobenius_distance(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(M + M^dag) / 2`
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn mat_vec(&self, v: &[C64]) -> Vec<C64> {
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in add");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sub");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in mul");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for row in self.data.chunks(self.dim.max(1)) {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Kronecker product, `(A⊗B)[(i·dB+k),(j·dB+l)] = A[i,j]·B[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (da, db) = (a.dim, b.dim);
    let dim = da * db;
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge(dim));
    }
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.check_same_dim(b)?;
    Ok(&(a * b) - &(b * a))
}

pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.check_same_dim(b)?;
    Ok(&(a * b) + &(b * a))
}

pub fn hs_norm_sq(m: &ComplexMatrix) -> f64 {
    m.hs_norm_sq()
}

pub fn trace(m: &ComplexMatrix) -> C64 {
    m.trace()
}

/// A complex matrix known to satisfy `M = M^dag` within [`HERMITIAN_TOL`].
#[derive(Clone, PartialEq, Debug)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if m.dim() > MAX_DIM {
            return Err(Error::DimensionTooLarge(m.dim()));
        }
        let defect = m.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Self(m))
    }

    /// Projects onto the Hermitian part `(M + M^dag)/2` without checking.
    pub fn symmetrized(m: &ComplexMatrix) -> Self {
        Self(m.hermitian_part())
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self(ComplexMatrix::from_real_diagonal(diag))
    }

    pub fn identity(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim))
    }

    /// Rank-one projector `|v><v|` (v is used as given, not normalized).
    pub fn projector(v: &[C64]) -> Self {
        Self::symmetrized(&ComplexMatrix::outer(v, v))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// Unitary conjugation `U M U^dag`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        Self::symmetrized(&(&(u * &self.0) * &u.adjoint()))
    }

    pub fn eig(&self) -> Result<SpectralDecomposition> {
        hermitian_eig(self)
    }
}

impl AsRef<ComplexMatrix> for HermitianMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}

impl AsRef<HermitianMatrix> for HermitianMatrix {
    fn as_ref(&self) -> &HermitianMatrix {
        self
    }
}

impl TryFrom<ComplexMatrix> for HermitianMatrix {
    type Error = Error;

    fn try_from(m: ComplexMatrix) -> Result<Self> {
        Self::new(m)
    }
}

/// Eigenvalues in ascending order with their orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<C64>>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `sum_i λ_i |v_i><v_i|`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n);
        for (lam, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            out.add_scaled(C64::new(*lam, 0.0), &ComplexMatrix::outer(v, v));
        }
        out
    }

    /// Gram matrix `<v_i|v_j>` of the eigenvectors.
    pub fn gram(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut g = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = inner(&self.eigenvectors[i], &self.eigenvectors[j]);
            }
        }
        g
    }

    pub fn projector(&self, k: usize) -> HermitianMatrix {
        HermitianMatrix::projector(&self.eigenvectors[k])
    }
}

/// `<a|b>`, antilinear in the first argument.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Cyclic Jacobi diagonalization.
///
/// Each rotation acts on the `(p, q)` plane with `J = D R`, where
/// `D = diag(1, e^{-iφ})` makes the pivot `a_pq = |a_pq| e^{iφ}` real and
/// `R` is the real symmetric Jacobi rotation annihilating it.
pub fn hermitian_eig(m: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = m.dim();
    let mut a = m.matrix().hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.max_abs().max(1.0);
    let threshold = JACOBI_TOL * scale;

    let off_max = |a: &ComplexMatrix| {
        let mut worst = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                worst = worst.max(a[(p, q)].norm());
            }
        }
        worst
    };

    let mut sweeps = 0;
    loop {
        let off = off_max(&a);
        if off < threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::EigenNotConverged { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let b = apq.norm();
                if b == 0.0 {
                    continue;
                }
                let phase = apq / b;
                let alpha = a[(p, p)].re;
                let beta = a[(q, q)].re;
                let zeta = (beta - alpha) / (2.0 * b);
                let t = if zeta.abs() > 1e150 {
                    0.5 / zeta
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                let jpp = C64::new(c, 0.0);
                let jpq = C64::new(s, 0.0);
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;

                // A <- A J
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * jpp + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * jqq;
                }
                // A <- J^dag A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

                // V <- V J
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort keeps the sweep order for exact ties, so output is deterministic.
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));

    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&col| {
            let mut vec: Vec<C64> = (0..n).map(|row| v[(row, col)]).collect();
            fix_phase(&mut vec);
            vec
        })
        .collect();

    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Rotates a vector so its largest-modulus component is real and positive.
fn fix_phase(v: &mut [C64]) {
    let mut best = 0;
    let mut best_norm = -1.0;
    for (i, z) in v.iter().enumerate() {
        // Prefer the earliest component among near-equal maxima.
        if z.norm() > best_norm + 1e-12 {
            best = i;
            best_norm = z.norm();
        }
    }
    if best_norm <= 0.0 {
        return;
    }
    let phase = v[best].conj() / best_norm;
    for z in v.iter_mut() {
        *z *= phase;
    }
}

/// Pauli matrices and related single-qubit operators.
pub mod pauli {
    use super::*;

    pub fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, vec![ZERO, ONE, ONE, ZERO]).unwrap()
    }

    pub fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, vec![ZERO, -I, I, ZERO]).unwrap()
    }

    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, vec![ONE, ZERO, ZERO, -ONE]).unwrap()
    }

    /// `σ+ = (σx + iσy)/2 = |0><1|`
    pub fn sigma_plus() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, vec![ZERO, ONE, ZERO, ZERO]).unwrap()
    }

    /// `σ- = (σx - iσy)/2 = |1><0|`
    pub fn sigma_minus() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, vec![ZERO, ZERO, ONE, ZERO]).unwrap()
    }

    /// `n·σ` for a real 3-vector.
    pub fn dot(n: [f64; 3]) -> ComplexMatrix {
        let mut m = sigma_x().scale_real(n[0]);
        m.add_scaled(C64::new(n[1], 0.0), &sigma_y());
        m.add_scaled(C64::new(n[2], 0.0), &sigma_z());
        m
    }

    /// Tensor product of Pauli factors named by a label such as `"xy"`
    /// (`i` or `1` for identity).
    pub fn from_label(label: &str) -> Result<ComplexMatrix> {
        if label.is_empty() {
            return Err(Error::InvalidArgument("empty Pauli label".into()));
        }
        let mut out = ComplexMatrix::identity(1);
        for ch in label.chars() {
            let factor = match ch.to_ascii_lowercase() {
                'x' => sigma_x(),
                'y' => sigma_y(),
                'z' => sigma_z(),
                'i' | '1' => ComplexMatrix::identity(2),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown Pauli factor '{other}' in label '{label}'"
                    )))
                }
            };
            out = kron(&out, &factor)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::pauli::*;
    use super::*;

    fn herm(m: ComplexMatrix) -> HermitianMatrix {
        HermitianMatrix::new(m).unwrap()
    }

    #[test]
    fn eig_identity() {
        let d = hermitian_eig(&HermitianMatrix::identity(2)).unwrap();
        assert_eq!(d.eigenvalues, vec![1.0, 1.0]);
    }

    #[test]
    fn eig_sigma_z() {
        let d = hermitian_eig(&herm(sigma_z())).unwrap();
        assert!((d.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((d.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_already_diagonal() {
        let d = hermitian_eig(&HermitianMatrix::from_real_diagonal(&[1.4, -0.2, -0.2])).unwrap();
        assert_eq!(d.eigenvalues, vec![-0.2, -0.2, 1.4]);
    }

    #[test]
    fn eig_sigma_y_vectors() {
        let d = hermitian_eig(&herm(sigma_y())).unwrap();
        assert!((d.eigenvalues[0] + 1.0).abs() < 1e-14);
        let recon = d.reconstruct();
        assert!(recon.frobenius_distance(&sigma_y()) < 1e-13);
        assert!(d.gram().frobenius_distance(&ComplexMatrix::identity(2)) < 1e-13);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        assert!(matches!(
            HermitianMatrix::new(sigma_plus()),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn eig_is_deterministic() {
        let m =
            herm(&kron(&sigma_x(), &sigma_y()).unwrap() + &kron(&sigma_z(), &sigma_z()).unwrap());
        let a = hermitian_eig(&m).unwrap();
        let b = hermitian_eig(&m).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
        assert_eq!(a.eigenvectors, b.eigenvectors);
    }

    #[test]
    fn kron_identities() {
        let i4 = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2)).unwrap();
        assert_eq!(i4, ComplexMatrix::identity(4));
        let zi = kron(&sigma_z(), &ComplexMatrix::identity(2)).unwrap();
        assert_eq!(
            zi,
            ComplexMatrix::from_real_diagonal(&[1.0, 1.0, -1.0, -1.0])
        );
    }

    #[test]
    fn kron_sigma_x_sigma_y() {
        // X⊗Y = [[0, Y], [Y, 0]]; only anti-diagonal entries survive.
        let m = kron(&sigma_x(), &sigma_y()).unwrap();
        let mut expected = ComplexMatrix::zeros(4);
        expected[(0, 3)] = -I;
        expected[(1, 2)] = I;
        expected[(2, 1)] = -I;
        expected[(3, 0)] = I;
        assert_eq!(m, expected);
    }

    #[test]
    fn kron_rejects_oversize() {
        let a = ComplexMatrix::identity(4);
        let b = ComplexMatrix::identity(8);
        assert_eq!(kron(&a, &b), Err(Error::DimensionTooLarge(32)));
    }

    #[test]
    fn pauli_algebra() {
        let c = commutator(&sigma_x(), &sigma_y()).unwrap();
        assert_eq!(c, sigma_z().scale(C64::new(0.0, 2.0)));
        let a = anticommutator(&sigma_x(), &sigma_z()).unwrap();
        assert_eq!(a, ComplexMatrix::zeros(2));
        assert!((hs_norm_sq(&sigma_y().scale(I)) - 2.0).abs() < 1e-15);
        assert_eq!(trace(&sigma_z()), ZERO);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(4);
        assert!(matches!(
            commutator(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(anticommutator(&a, &b).is_err());
    }

    #[test]
    fn pauli_labels() {
        assert_eq!(
            from_label("xy").unwrap(),
            kron(&sigma_x(), &sigma_y()).unwrap()
        );
        assert!(from_label("q").is_err());
        assert!(from_label("").is_err());
    }

    #[test]
    fn sigma_pm_match_definition() {
        let half = C64::new(0.5, 0.0);
        let mut sp = sigma_x().scale(half);
        sp.add_scaled(I * half, &sigma_y());
        assert_eq!(sp, sigma_plus());
        let mut sm = sigma_x().scale(half);
        sm.add_scaled(-I * half, &sigma_y());
        assert_eq!(sm, sigma_minus());
    }
}
