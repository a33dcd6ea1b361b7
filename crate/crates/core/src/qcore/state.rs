use super::layout::{check_selection, front_permutation, strides};
use super::linalg::{eigvalsh, min_eigenvalue, sqrt_psd, trace_norm_hermitian};
use super::{c, CMatrix, CVector, Permutation, C64, MAX_DIM, NORM_TOL, PSD_TOL};
use crate::{Error, Result};

fn check_dims(dims: &[usize], len: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidState(format!("bad subsystem dimensions {dims:?}")));
    }
    let total = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).unwrap_or(usize::MAX);
    if total > MAX_DIM {
        return Err(Error::TooLarge(total));
    }
    if total != len {
        return Err(Error::DimensionMismatch { expected: total, found: len });
    }
    Ok(())
}

/// A normalized pure state on a composite system.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: CVector,
    dims: Vec<usize>,
}

impl StateVector {
    pub fn new(amplitudes: CVector, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, amplitudes.len())?;
        let norm_sq = amplitudes.norm_squared();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("squared norm {norm_sq} is not 1")));
        }
        Ok(Self { amplitudes, dims })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: CVector, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, amplitudes.len())?;
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Ok(Self { amplitudes: amplitudes.unscale(norm), dims })
    }

    /// `|index⟩` on the given subsystems.
    pub fn basis_state(dims: Vec<usize>, index: usize) -> Result<Self> {
        let total: usize = dims.iter().product();
        if index >= total {
            return Err(Error::InvalidParameter(format!("basis index {index} out of range {total}")));
        }
        Self::new(super::basis(total, index), dims)
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `|self⟩ ⊗ |other⟩`.
    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let amps = self.amplitudes.kronecker(&other.amplitudes);
        check_dims(&dims, amps.len())?;
        Ok(Self { amplitudes: amps, dims })
    }

    pub fn projector(&self) -> DensityMatrix {
        let entries = &self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix::from_parts(entries, self.dims.clone())
    }

    /// Reorders subsystems; slot `i` of the result holds subsystem `perm[i]`.
    pub fn permute(&self, perm: &Permutation) -> Result<Self> {
        if perm.len() != self.dims.len() {
            return Err(Error::DimensionMismatch { expected: self.dims.len(), found: perm.len() });
        }
        let map = perm.index_map(&self.dims);
        let mut out = CVector::zeros(self.dim());
        for (old, &new) in map.iter().enumerate() {
            out[new] = self.amplitudes[old];
        }
        Ok(Self { amplitudes: out, dims: perm.apply_to_dims(&self.dims) })
    }

    /// Relabels the subsystem structure without touching amplitudes, e.g. to
    /// merge `m` qubits into one `2^m`-level system.
    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, self.dim())?;
        Ok(Self { amplitudes: self.amplitudes.clone(), dims })
    }
}

/// A density operator on a composite system.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validated constructor: Hermitian within 1e-12, unit trace within 1e-12
    /// and no eigenvalue below -1e-10.
    pub fn new(entries: CMatrix, dims: Vec<usize>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::InvalidState("density matrix must be square".into()));
        }
        check_dims(&dims, entries.nrows())?;
        let rho = Self { entries, dims };
        rho.validate()?;
        Ok(rho)
    }

    /// Constructor for results of operations known to preserve validity.
    pub(crate) fn from_parts(entries: CMatrix, dims: Vec<usize>) -> Self {
        debug_assert_eq!(entries.nrows(), dims.iter().product::<usize>());
        Self { entries, dims }
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let total = dims.iter().product::<usize>();
        check_dims(&dims, total)?;
        let entries = CMatrix::identity(total, total) * c(1.0 / total as f64);
        Ok(Self { entries, dims })
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.entries.nrows();
        for r in 0..n {
            for col in r..n {
                if (self.entries[(r, col)] - self.entries[(col, r)].conj()).norm() > NORM_TOL {
                    return Err(Error::InvalidState(format!("not Hermitian at ({r}, {col})")));
                }
            }
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let lo = min_eigenvalue(&self.entries);
        if lo < -PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {lo}")));
        }
        Ok(())
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh(&self.entries)
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn tensor(&self, other: &DensityMatrix) -> Result<Self> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let entries = self.entries.kronecker(&other.entries);
        check_dims(&dims, entries.nrows())?;
        Ok(Self { entries, dims })
    }

    pub fn permute(&self, perm: &Permutation) -> Result<Self> {
        if perm.len() != self.dims.len() {
            return Err(Error::DimensionMismatch { expected: self.dims.len(), found: perm.len() });
        }
        if perm.is_identity() {
            return Ok(self.clone());
        }
        let map = perm.index_map(&self.dims);
        let n = self.dim();
        let mut out = CMatrix::zeros(n, n);
        for (r, &nr) in map.iter().enumerate() {
            for (col, &nc) in map.iter().enumerate() {
                out[(nr, nc)] = self.entries[(r, col)];
            }
        }
        Ok(Self { entries: out, dims: perm.apply_to_dims(&self.dims) })
    }

    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, self.dim())?;
        Ok(Self { entries: self.entries.clone(), dims })
    }
}

/// Reduced state on `keep`, listed in the original relative order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    check_selection(keep, rho.num_subsystems())?;
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    let permuted = rho.permute(&front_permutation(&keep, rho.num_subsystems()))?;
    let kept_dims: Vec<usize> = keep.iter().map(|&i| rho.dims[i]).collect();
    let dk: usize = kept_dims.iter().product();
    let dr = rho.dim() / dk;
    let e = &permuted.entries;
    let reduced = CMatrix::from_fn(dk, dk, |i, j| (0..dr).map(|r| e[(i * dr + r, j * dr + r)]).sum());
    Ok(DensityMatrix::from_parts(reduced, kept_dims))
}

/// Transposes the indices of one subsystem.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: usize) -> Result<CMatrix> {
    if subsystem >= rho.num_subsystems() {
        return Err(Error::SubsystemOutOfRange { index: subsystem, count: rho.num_subsystems() });
    }
    let stride = strides(&rho.dims)[subsystem];
    let d = rho.dims[subsystem];
    let n = rho.dim();
    let mut out = CMatrix::zeros(n, n);
    for r in 0..n {
        let dr = (r / stride) % d;
        for col in 0..n {
            let dc = (col / stride) % d;
            let r2 = r - dr * stride + dc * stride;
            let c2 = col - dc * stride + dr * stride;
            out[(r2, c2)] = rho.entries[(r, col)];
        }
    }
    Ok(out)
}

/// Uhlmann fidelity `tr √(√σ τ √σ)` (square-root convention).
///
/// When either argument is pure to within 1e-12 in purity this reduces to
/// `√⟨φ|ρ|φ⟩`, which is evaluated directly. Otherwise the value is the
/// nuclear norm of `√σ √τ`.
pub fn fidelity(sigma: &DensityMatrix, tau: &DensityMatrix) -> Result<f64> {
    if sigma.dim() != tau.dim() {
        return Err(Error::DimensionMismatch { expected: sigma.dim(), found: tau.dim() });
    }
    if let Some(phi) = pure_component(tau) {
        return Ok(sandwich(&sigma.entries, &phi).max(0.0).sqrt().min(1.0));
    }
    if let Some(phi) = pure_component(sigma) {
        return Ok(sandwich(&tau.entries, &phi).max(0.0).sqrt().min(1.0));
    }
    let prod = sqrt_psd(&sigma.entries) * sqrt_psd(&tau.entries);
    let f: f64 = prod.singular_values().iter().sum();
    Ok(f.clamp(0.0, 1.0))
}

const PURITY_TOL: f64 = 1e-12;

fn pure_component(rho: &DensityMatrix) -> Option<CVector> {
    if rho.purity() < 1.0 - PURITY_TOL {
        return None;
    }
    let (_, vectors) = super::linalg::eigh(&rho.entries);
    Some(vectors.column(vectors.ncols() - 1).into_owned())
}

fn sandwich(m: &CMatrix, v: &CVector) -> f64 {
    v.dotc(&(m * v)).re
}

/// `⟨φ|ρ|φ⟩`.
pub fn overlap(rho: &DensityMatrix, phi: &StateVector) -> Result<f64> {
    if rho.dim() != phi.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), found: phi.dim() });
    }
    Ok(sandwich(&rho.entries, phi.amplitudes()).clamp(0.0, 1.0))
}

/// `½‖a − b‖₁`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(0.5 * trace_norm_hermitian(&(&a.entries - &b.entries)))
}
