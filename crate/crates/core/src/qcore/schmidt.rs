use super::layout::{check_selection, front_permutation};
use super::{CMatrix, StateVector, SCHMIDT_TOL};
use crate::{Error, Result};

/// `|Ψ⟩ = Σ_j √p_j |ψ_j⟩ ⊗ |φ_j⟩` with coefficients sorted non-increasing.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// `√p_j`, one per column of the smaller side.
    pub coefficients: Vec<f64>,
    /// Number of coefficients above [`SCHMIDT_TOL`].
    pub schmidt_number: usize,
    pub left_vectors: Vec<StateVector>,
    pub right_vectors: Vec<StateVector>,
    left_dims: Vec<usize>,
    right_dims: Vec<usize>,
}

impl SchmidtDecomposition {
    /// `p_j = coefficient²`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.coefficients.iter().map(|s| s * s).collect()
    }

    /// `max_{j≠k} p_j p_k`; zero when there is a single coefficient.
    pub fn max_pair_product(&self) -> f64 {
        let p = self.probabilities();
        match p.as_slice() {
            [a, b, ..] => a * b,
            _ => 0.0,
        }
    }

    pub fn left_dims(&self) -> &[usize] {
        &self.left_dims
    }

    pub fn right_dims(&self) -> &[usize] {
        &self.right_dims
    }

    /// `Σ_j √p_j |ψ_j⟩ ⊗ |φ_j⟩` with the left subsystems in front.
    pub fn reconstruct(&self) -> Result<StateVector> {
        let dl: usize = self.left_dims.iter().product();
        let dr: usize = self.right_dims.iter().product();
        let mut amps = super::CVector::zeros(dl * dr);
        for ((s, l), r) in self.coefficients.iter().zip(&self.left_vectors).zip(&self.right_vectors) {
            amps += l.amplitudes().kronecker(r.amplitudes()) * super::c(*s);
        }
        let mut dims = self.left_dims.clone();
        dims.extend_from_slice(&self.right_dims);
        StateVector::normalized(amps, dims)
    }
}

/// Schmidt decomposition across `left` versus the remaining subsystems.
pub fn schmidt_decompose(psi: &StateVector, left: &[usize]) -> Result<SchmidtDecomposition> {
    let count = psi.num_subsystems();
    check_selection(left, count)?;
    if left.len() == count {
        return Err(Error::InvalidSelection("bipartition needs a nonempty right side".into()));
    }
    let permuted = psi.permute(&front_permutation(left, count))?;
    let left_dims: Vec<usize> = permuted.dims()[..left.len()].to_vec();
    let right_dims: Vec<usize> = permuted.dims()[left.len()..].to_vec();
    let dl: usize = left_dims.iter().product();
    let dr: usize = right_dims.iter().product();
    let m = CMatrix::from_fn(dl, dr, |i, j| permuted.amplitudes()[i * dr + j]);

    let svd = m.svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^H");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));

    let coefficients: Vec<f64> = order.iter().map(|&k| svd.singular_values[k]).collect();
    let schmidt_number = coefficients.iter().filter(|&&s| s > SCHMIDT_TOL).count();
    let left_vectors = order
        .iter()
        .map(|&k| StateVector::normalized(u.column(k).into_owned(), left_dims.clone()))
        .collect::<Result<Vec<_>>>()?;
    let right_vectors = order
        .iter()
        .map(|&k| StateVector::normalized(v_t.row(k).transpose(), right_dims.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(SchmidtDecomposition { coefficients, schmidt_number, left_vectors, right_vectors, left_dims, right_dims })
}
