//! Hermitian spectral helpers. All square roots and norms go through an
//! eigendecomposition with negative eigenvalues clamped to zero.

use nalgebra::SymmetricEigen;

use super::{CMatrix, C64};

/// `(a + a†)/2`.
pub fn hermitize(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()) * C64::new(0.5, 0.0)
}

/// Eigenvalues (ascending) and eigenvectors (columns, matching order) of a
/// Hermitian matrix.
pub fn eigh(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let h = hermitize(a);
    let mut eig = SymmetricEigen::new(h.clone());
    if has_nan(&eig) {
        // the QR iteration can break down on highly structured inputs;
        // a fixed random similarity removes the structure
        let q = super::haar_unitary(h.nrows(), &mut super::substream(0x5eed, h.nrows() as u64));
        let mut rotated = SymmetricEigen::new(hermitize(&(q.adjoint() * &h * &q)));
        rotated.eigenvectors = &q * rotated.eigenvectors;
        eig = rotated;
    }
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(a.nrows(), order.len(), |r, k| eig.eigenvectors[(r, order[k])]);
    (values, vectors)
}

fn has_nan(eig: &SymmetricEigen<C64, nalgebra::Dyn>) -> bool {
    eig.eigenvalues.iter().any(|x| x.is_nan()) || eig.eigenvectors.iter().any(|z| z.re.is_nan() || z.im.is_nan())
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn eigvalsh(a: &CMatrix) -> Vec<f64> {
    eigh(a).0
}

pub fn min_eigenvalue(a: &CMatrix) -> f64 {
    eigvalsh(a).first().copied().unwrap_or(0.0)
}

/// Principal square root of a positive semidefinite matrix.
pub fn sqrt_psd(a: &CMatrix) -> CMatrix {
    let (values, vectors) = eigh(a);
    let n = a.nrows();
    let mut scaled = vectors.clone();
    for (k, &lambda) in values.iter().enumerate() {
        let s = lambda.max(0.0).sqrt();
        for r in 0..n {
            scaled[(r, k)] *= s;
        }
    }
    &scaled * vectors.adjoint()
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm_hermitian(a: &CMatrix) -> f64 {
    eigvalsh(a).iter().map(|x| x.abs()).sum()
}

pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    if !u.is_square() {
        return false;
    }
    let n = u.nrows();
    let prod = u.adjoint() * u;
    super::max_abs_diff(&prod, &CMatrix::identity(n, n)) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{c, max_abs_diff};

    #[test]
    fn rank_one_bell_projector_64() {
        let d = 8;
        let a = CMatrix::from_fn(d * d, d * d, |r, k| c(if r % (d + 1) == 0 && k % (d + 1) == 0 { 0.125 } else { 0.0 }));
        let (values, vectors) = eigh(&a);
        assert!(values.iter().all(|x| x.is_finite()));
        assert!((values[d * d - 1] - 1.0).abs() < 1e-12);
        let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(d * d, values.iter().map(|&x| c(x))));
        assert!(max_abs_diff(&(&vectors * diag * vectors.adjoint()), &a) < 1e-12);
    }

    #[test]
    fn sqrt_squares_back() {
        let a = CMatrix::from_row_slice(2, 2, &[c(2.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0), c(2.0)]);
        let s = sqrt_psd(&a);
        assert!(max_abs_diff(&(&s * &s), &a) < 1e-12);
    }

    #[test]
    fn eigenvalues_sorted() {
        let a = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        let v = eigvalsh(&a);
        assert!((v[0] + 1.0).abs() < 1e-14 && (v[1] - 1.0).abs() < 1e-14);
        assert!((trace_norm_hermitian(&a) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn clamps_tiny_negative_eigenvalues() {
        let a = CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1e-15)]);
        let s = sqrt_psd(&a);
        assert!(s.iter().all(|x| x.re.is_finite() && x.im.is_finite()));
        assert!((s[(0, 0)].re - 1.0).abs() < 1e-14);
    }
}
