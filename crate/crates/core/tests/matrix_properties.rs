mod common;

use common::*;
use nmwitness_core::matrix::{
    anticommutator, commutator, hermitian_eig, hs_norm_sq, kron, pauli, ComplexMatrix,
    HermitianMatrix, C64,
};
use nmwitness_core::uncertainty::{rs_lhs, ObservablePair};
use nmwitness_core::witnesses::detect;
use rand::Rng;

#[test]
fn random_hermitian_eigendecomposition() {
    let mut rng = rng(11);
    for k in 0..1000 {
        let d = 1 + k % 16;
        let m = random_hermitian(d, &mut rng);
        let spec = hermitian_eig(&m).unwrap();
        let recon = spec.reconstruct();
        assert!(recon.frobenius_distance(m.matrix()) < 1e-10, "d={d}");
        let sum: f64 = spec.eigenvalues.iter().sum();
        assert!((sum - m.trace()).abs() < 1e-10);
        assert!(spec.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        assert!(spec.gram().frobenius_distance(&ComplexMatrix::identity(d)) < 1e-10);
    }
}

#[test]
fn degenerate_spectrum_from_random_basis() {
    let mut rng = rng(12);
    for _ in 0..100 {
        let cols = random_unitary_columns(4, &mut rng);
        let m = from_spectrum(&[-0.25, -0.25, 0.75, 0.75], &cols);
        let spec = hermitian_eig(&m).unwrap();
        assert!((spec.eigenvalues[0] + 0.25).abs() < 1e-12);
        assert!((spec.eigenvalues[1] + 0.25).abs() < 1e-12);
        assert!(spec.reconstruct().frobenius_distance(m.matrix()) < 1e-10);
    }
}

#[test]
fn commutator_structure() {
    let mut rng = rng(13);
    for _ in 0..200 {
        let d = rng.random_range(1..=6);
        let a = random_hermitian(d, &mut rng);
        let b = random_hermitian(d, &mut rng);
        let c = commutator(a.matrix(), b.matrix()).unwrap();
        let ac = anticommutator(a.matrix(), b.matrix()).unwrap();
        for i in 0..d {
            for j in 0..d {
                assert!((c[(i, j)] + c[(j, i)].conj()).norm() < 1e-12);
                assert!((ac[(i, j)] - ac[(j, i)].conj()).norm() < 1e-12);
            }
        }
        assert!(hs_norm_sq(&c) >= 0.0);
    }
}

#[test]
fn hs_norm_of_diagonal_is_sum_of_squared_singular_values() {
    let m = HermitianMatrix::from_real_diagonal(&[3.0, -4.0, 0.5]);
    assert!((hs_norm_sq(m.matrix()) - 25.25).abs() < 1e-15);
}

#[test]
fn kron_mixed_product() {
    let mut rng = rng(14);
    let a = random_hermitian(2, &mut rng);
    let b = random_hermitian(2, &mut rng);
    let c = random_hermitian(2, &mut rng);
    let d = random_hermitian(2, &mut rng);
    let lhs = &kron(a.matrix(), b.matrix()).unwrap() * &kron(c.matrix(), d.matrix()).unwrap();
    let rhs = kron(&(a.matrix() * c.matrix()), &(b.matrix() * d.matrix())).unwrap();
    assert!(lhs.frobenius_distance(&rhs) < 1e-12);
    let big = ComplexMatrix::identity(5);
    assert!(kron(&big, &big).is_err());
}

#[test]
fn pauli_anticommutation() {
    let (x, y, z) = (pauli::sigma_x(), pauli::sigma_y(), pauli::sigma_z());
    let xy = &x * &y;
    let iz = z.scale(C64::new(0.0, 1.0));
    assert!(xy.frobenius_distance(&iz) < 1e-15);
    assert!(anticommutator(&x, &z).unwrap().max_abs() < 1e-15);
}

#[test]
fn downstream_results_ignore_degenerate_basis_choice() {
    // diag(1.4, -0.2, -0.2) with the degenerate block rotated.
    let mut rng = rng(15);
    let base = detect(
        &HermitianMatrix::from_real_diagonal(&[1.4, -0.2, -0.2]),
        1e-9,
    )
    .unwrap();
    for _ in 0..50 {
        let sub = random_unitary_columns(2, &mut rng);
        let mut u = ComplexMatrix::identity(3);
        for i in 0..2 {
            for j in 0..2 {
                u[(i + 1, j + 1)] = sub[j][i];
            }
        }
        let m = HermitianMatrix::from_real_diagonal(&[1.4, -0.2, -0.2]).conjugate_by(&u);
        let r = detect(&m, 1e-9).unwrap();
        assert!((r.rs_pair_value.unwrap() - base.rs_pair_value.unwrap()).abs() < 1e-12);
        let (l, h) = r.sum_pair_value.unwrap();
        assert!((l + 0.48).abs() < 1e-12 && h.abs() < 1e-12);
        assert!((r.projector_pair_rs.unwrap() - 0.056).abs() < 1e-12);
        let (h1, h2) = r.pair.unwrap();
        let rs = rs_lhs(&ObservablePair::new(h1, h2).unwrap(), &m).unwrap();
        assert!((rs - (-0.24 * 2.0)).abs() < 1e-12);
    }
}
