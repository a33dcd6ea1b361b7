//! Dense complex linear algebra and quantum primitives.

mod channel;
mod haar;
mod layout;
pub mod linalg;
mod schmidt;
mod state;
mod weyl;

pub use channel::{apply_channel, entanglement_fidelity, KrausChannel};
pub use haar::{haar_state, haar_unitary, substream, SimRng};
pub use layout::Permutation;
pub use schmidt::{schmidt_decompose, SchmidtDecomposition};
pub use state::{fidelity, overlap, partial_trace, partial_transpose, trace_distance, DensityMatrix, StateVector};
pub use weyl::WeylPair;
pub(crate) use weyl::root_of_unity;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Largest total Hilbert-space dimension accepted by dense constructors.
pub const MAX_DIM: usize = 4096;

/// Singular values above this count toward the Schmidt number.
pub const SCHMIDT_TOL: f64 = 1e-10;

pub(crate) const NORM_TOL: f64 = 1e-12;
pub(crate) const PSD_TOL: f64 = 1e-10;
pub(crate) const COMPLETENESS_TOL: f64 = 1e-10;

/// Kronecker product, `a` being the most significant factor.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Computational basis vector `|index⟩` of dimension `dim`.
pub fn basis(dim: usize, index: usize) -> CVector {
    let mut v = CVector::zeros(dim);
    v[index] = C64::new(1.0, 0.0);
    v
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)])
}

pub fn pauli_y() -> CMatrix {
    let i = C64::new(0.0, 1.0);
    CMatrix::from_row_slice(2, 2, &[c(0.0), -i, i, c(0.0)])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)])
}

pub fn hadamard() -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_row_slice(2, 2, &[c(h), c(h), c(h), c(-h)])
}

#[inline]
pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
