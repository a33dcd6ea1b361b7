use super::layout::{check_selection, front_permutation};
use super::linalg::eigh;
use super::{c, max_abs_diff, CMatrix, DensityMatrix, StateVector, WeylPair, C64, COMPLETENESS_TOL};
use crate::{Error, Result};

/// A quantum operation in operator-sum form, `E(ρ) = Σ_μ E_μ ρ E_μ†`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    operators: Vec<CMatrix>,
}

impl KrausChannel {
    /// Requires equal shapes and `Σ_μ E_μ†E_μ = I` within 1e-10.
    pub fn new(operators: Vec<CMatrix>) -> Result<Self> {
        let Some(first) = operators.first() else {
            return Err(Error::InvalidChannel("no Kraus operators".into()));
        };
        let shape = first.shape();
        if operators.iter().any(|k| k.shape() != shape) {
            return Err(Error::InvalidChannel("Kraus operators differ in shape".into()));
        }
        let channel = Self { operators };
        let dev = channel.completeness_deviation();
        if dev > COMPLETENESS_TOL {
            return Err(Error::InvalidChannel(format!("completeness violated by {dev:e}")));
        }
        Ok(channel)
    }

    pub fn identity(d: usize) -> Self {
        Self { operators: vec![CMatrix::identity(d, d)] }
    }

    pub fn unitary(u: CMatrix) -> Result<Self> {
        Self::new(vec![u])
    }

    /// `ρ ↦ λρ + (1−λ) tr(ρ) I/d`, valid for `-1/(d²−1) ≤ λ ≤ 1`.
    pub fn depolarizing(d: usize, lambda: f64) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        let d2 = (d * d) as f64;
        let p_rest = (1.0 - lambda) / d2;
        let p_id = lambda + p_rest;
        if p_rest < -1e-15 || p_id < -1e-15 {
            return Err(Error::InvalidParameter(format!("depolarizing weight {lambda} out of range for d = {d}")));
        }
        let weyl = WeylPair::new(d);
        let mut ops = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                let p = if a == 0 && b == 0 { p_id } else { p_rest };
                if p > 0.0 {
                    ops.push(weyl.displacement(a, b) * c(p.sqrt()));
                }
            }
        }
        if ops.is_empty() {
            ops.push(CMatrix::zeros(d, d));
        }
        Self::new(ops)
    }

    /// The channel sending every state to `I/d`.
    pub fn fully_depolarizing(d: usize) -> Self {
        Self::depolarizing(d, 0.0).expect("λ = 0 is always valid")
    }

    /// Single-qubit Pauli channel with probabilities for I, X, Y, Z.
    pub fn pauli(p_i: f64, p_x: f64, p_y: f64, p_z: f64) -> Result<Self> {
        let probs = [p_i, p_x, p_y, p_z];
        if probs.iter().any(|&p| p < 0.0) || (probs.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("Pauli probabilities {probs:?}")));
        }
        let paulis = [CMatrix::identity(2, 2), super::pauli_x(), super::pauli_y(), super::pauli_z()];
        let ops = probs
            .iter()
            .zip(paulis)
            .filter(|(p, _)| **p > 0.0)
            .map(|(p, m)| m * c(p.sqrt()))
            .collect();
        Self::new(ops)
    }

    /// Rebuilds a channel from its Choi matrix (input index most significant,
    /// see [`KrausChannel::choi`]), keeping eigenvalues above `1e-14`.
    pub fn from_choi(choi: &CMatrix, d_in: usize, d_out: usize) -> Result<Self> {
        if choi.nrows() != d_in * d_out || !choi.is_square() {
            return Err(Error::DimensionMismatch { expected: d_in * d_out, found: choi.nrows() });
        }
        let (values, vectors) = eigh(choi);
        let scale = values.last().copied().unwrap_or(0.0).max(1.0);
        let mut ops = Vec::new();
        for (k, &lambda) in values.iter().enumerate().rev() {
            if lambda <= 1e-14 * scale {
                continue;
            }
            let s = lambda.sqrt();
            ops.push(CMatrix::from_fn(d_out, d_in, |o, i| vectors[(i * d_out + o, k)] * s));
        }
        Self::new(ops)
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn input_dim(&self) -> usize {
        self.operators[0].ncols()
    }

    pub fn output_dim(&self) -> usize {
        self.operators[0].nrows()
    }

    /// Largest entry of `Σ_μ E_μ†E_μ − I`.
    pub fn completeness_deviation(&self) -> f64 {
        let n = self.input_dim();
        let sum = self.operators.iter().fold(CMatrix::zeros(n, n), |acc, k| acc + k.adjoint() * k);
        max_abs_diff(&sum, &CMatrix::identity(n, n))
    }

    /// Choi matrix `Σ_{ij} |i⟩⟨j| ⊗ E(|i⟩⟨j|)`, input factor first.
    pub fn choi(&self) -> CMatrix {
        let (d_in, d_out) = (self.input_dim(), self.output_dim());
        let n = d_in * d_out;
        let mut j = CMatrix::zeros(n, n);
        for k in &self.operators {
            let v = CMatrix::from_fn(n, 1, |idx, _| k[(idx % d_out, idx / d_out)]);
            j += &v * v.adjoint();
        }
        j
    }

    /// An equivalent channel with at most `d_in·d_out` operators.
    pub fn canonical(&self) -> Result<Self> {
        Self::from_choi(&self.choi(), self.input_dim(), self.output_dim())
    }

    /// Applies the channel to a matrix on its input space.
    pub fn apply_matrix(&self, rho: &CMatrix) -> CMatrix {
        let d = self.output_dim();
        self.operators.iter().fold(CMatrix::zeros(d, d), |acc, k| acc + k * rho * k.adjoint())
    }

    /// Sequential composition: `other` after `self`.
    pub fn then(&self, other: &KrausChannel) -> Result<Self> {
        if other.input_dim() != self.output_dim() {
            return Err(Error::DimensionMismatch { expected: self.output_dim(), found: other.input_dim() });
        }
        let ops = other
            .operators
            .iter()
            .flat_map(|b| self.operators.iter().map(move |a| b * a))
            .collect();
        Self::new(ops)?.canonical()
    }
}

/// Applies `E ⊗ I` with `E` acting on `targets` (grouped in the listed order,
/// first index most significant). The channel must be square.
pub fn apply_channel(channel: &KrausChannel, rho: &DensityMatrix, targets: &[usize]) -> Result<DensityMatrix> {
    let count = rho.num_subsystems();
    check_selection(targets, count)?;
    let d_t: usize = targets.iter().map(|&i| rho.dims()[i]).product();
    if channel.input_dim() != d_t {
        return Err(Error::DimensionMismatch { expected: d_t, found: channel.input_dim() });
    }
    if channel.output_dim() != d_t {
        return Err(Error::InvalidChannel("apply_channel needs equal input and output dimensions".into()));
    }
    let perm = front_permutation(targets, count);
    let permuted = rho.permute(&perm)?;
    let src = permuted.entries();
    let n = rho.dim();
    let d_r = n / d_t;

    let mut out = CMatrix::zeros(n, n);
    let mut left = CMatrix::zeros(n, n);
    for k in channel.operators() {
        // left = (K ⊗ I) ρ
        left.fill(C64::new(0.0, 0.0));
        for col in 0..n {
            for i in 0..d_t {
                for r in 0..d_r {
                    let x = src[(i * d_r + r, col)];
                    if x == C64::new(0.0, 0.0) {
                        continue;
                    }
                    for a in 0..d_t {
                        left[(a * d_r + r, col)] += k[(a, i)] * x;
                    }
                }
            }
        }
        // out += left (K ⊗ I)†
        for b in 0..d_t {
            for j in 0..d_t {
                let kc = k[(b, j)].conj();
                if kc == C64::new(0.0, 0.0) {
                    continue;
                }
                for s in 0..d_r {
                    let dst_col = b * d_r + s;
                    let src_col = j * d_r + s;
                    for row in 0..n {
                        out[(row, dst_col)] += left[(row, src_col)] * kc;
                    }
                }
            }
        }
    }
    let result = DensityMatrix::from_parts(out, permuted.dims().to_vec());
    result.permute(&perm.inverse())
}

/// `⟨Ψ|(E ⊗ I)(|Ψ⟩⟨Ψ|)|Ψ⟩`, evaluated as `Σ_μ |⟨Ψ|E_μ ⊗ I|Ψ⟩|²`.
pub fn entanglement_fidelity(channel: &KrausChannel, psi: &StateVector, targets: &[usize]) -> Result<f64> {
    let count = psi.num_subsystems();
    check_selection(targets, count)?;
    let d_t: usize = targets.iter().map(|&i| psi.dims()[i]).product();
    if channel.input_dim() != d_t {
        return Err(Error::DimensionMismatch { expected: d_t, found: channel.input_dim() });
    }
    if channel.output_dim() != d_t {
        return Err(Error::InvalidChannel("entanglement fidelity needs a square channel".into()));
    }
    let permuted = psi.permute(&front_permutation(targets, count))?;
    let d_r = psi.dim() / d_t;
    // amplitude matrix A[i, r]; (K ⊗ I)|Ψ⟩ ↔ K·A
    let a = CMatrix::from_fn(d_t, d_r, |i, r| permuted.amplitudes()[i * d_r + r]);
    let a_adj = a.adjoint();
    let value: f64 = channel.operators().iter().map(|k| (&a_adj * k * &a).trace().norm_sqr()).sum();
    Ok(value.clamp(0.0, 1.0))
}
