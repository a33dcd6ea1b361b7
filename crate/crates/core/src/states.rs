//! Named states: Bell pairs, generalized Bell states, isotropic and GHZ states.

use crate::qcore::{c, CMatrix, CVector, DensityMatrix, Permutation, StateVector};
use crate::{Error, Result};

/// Parameters `(d, F)` of the isotropic family on `d ⊗ d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicParams {
    d: usize,
    fidelity: f64,
}

impl IsotropicParams {
    pub fn new(d: usize, fidelity: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("isotropic dimension {d} < 2")));
        }
        if !(0.0..=1.0).contains(&fidelity) {
            return Err(Error::InvalidParameter(format!("isotropic fidelity {fidelity} outside [0, 1]")));
        }
        Ok(Self { d, fidelity })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `F = ⟨Φd+|ρ_F|Φd+⟩`.
    pub fn fidelity(&self) -> f64 {
        self.fidelity
    }

    /// Weight of `|Φd+⟩⟨Φd+|` when written as `λ|Φ⟩⟨Φ| + (1−λ) I/d²`.
    pub fn mixing_weight(&self) -> f64 {
        let d2 = (self.d * self.d) as f64;
        (d2 * self.fidelity - 1.0) / (d2 - 1.0)
    }
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn bell_pair() -> StateVector {
    generalized_bell(2).expect("d = 2 is valid")
}

/// `(1/√d) Σ_j |j⟩|j⟩` on `d ⊗ d`.
pub fn generalized_bell(d: usize) -> Result<StateVector> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("generalized Bell state needs d ≥ 2, got {d}")));
    }
    let amp = (1.0 / d as f64).sqrt();
    let mut v = CVector::zeros(d * d);
    for j in 0..d {
        v[j * d + j] = c(amp);
    }
    StateVector::new(v, vec![d, d])
}

/// `ρ_F = F|Φd+⟩⟨Φd+| + (1−F)/(d²−1) (I − |Φd+⟩⟨Φd+|)`.
pub fn isotropic(params: &IsotropicParams) -> DensityMatrix {
    let d = params.d;
    let n = d * d;
    let f = params.fidelity;
    let background = (1.0 - f) / (n as f64 - 1.0);
    let coherent = (f - background) / d as f64;
    let entries = CMatrix::from_fn(n, n, |r, col| {
        let on_bell = r % (d + 1) == 0 && col % (d + 1) == 0;
        let mut x = if on_bell { coherent } else { 0.0 };
        if r == col {
            x += background;
        }
        c(x)
    });
    DensityMatrix::new(entries, vec![d, d]).expect("isotropic states are valid density matrices")
}

/// `(|0…0⟩ + |1…1⟩)/√2` on `n` qubits.
pub fn ghz(n: usize) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("GHZ state needs at least 2 qubits, got {n}")));
    }
    if n > 12 {
        return Err(Error::TooLarge(1 << n));
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let dim = 1usize << n;
    let mut v = CVector::zeros(dim);
    v[0] = c(h);
    v[dim - 1] = c(h);
    StateVector::new(v, vec![2; n])
}

/// Regroups `A₁B₁A₂B₂…A_mB_m` into `A₁…A_m B₁…B_m`.
///
/// Applied to `bell_pair()^{⊗m}` it yields the amplitudes of
/// `generalized_bell(2^m)` exactly.
pub fn interleave_permutation(m: usize) -> Permutation {
    let order = (0..m).map(|k| 2 * k).chain((0..m).map(|k| 2 * k + 1)).collect();
    Permutation::new(order).expect("interleaving is a permutation")
}

/// `bell_pair()^{⊗m}` regrouped into one `2^m ⊗ 2^m` pair.
pub fn bell_pairs_grouped(m: usize) -> Result<StateVector> {
    if m == 0 {
        return Err(Error::InvalidParameter("need at least one pair".into()));
    }
    let pair = bell_pair();
    let mut all = pair.clone();
    for _ in 1..m {
        all = all.tensor(&pair)?;
    }
    let d = 1usize << m;
    all.permute(&interleave_permutation(m))?.with_dims(vec![d, d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{overlap, partial_trace, schmidt_decompose};

    #[test]
    fn bell_pair_matches_d2() {
        let b = bell_pair();
        assert_eq!(b, generalized_bell(2).unwrap());
        assert!((overlap(&b.projector(), &b).unwrap() - 1.0).abs() < 1e-15);
        let red = partial_trace(&b.projector(), &[0]).unwrap();
        assert!((red.entries()[(0, 0)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn generalized_bell_schmidt() {
        for d in 2..=6 {
            let s = schmidt_decompose(&generalized_bell(d).unwrap(), &[0]).unwrap();
            assert_eq!(s.schmidt_number, d);
            for x in &s.coefficients {
                assert!((x - 1.0 / (d as f64).sqrt()).abs() < 1e-12);
            }
        }
        assert!(generalized_bell(1).is_err());
    }

    #[test]
    fn isotropic_endpoints() {
        for d in 2..=4 {
            let phi = generalized_bell(d).unwrap();
            let pure = isotropic(&IsotropicParams::new(d, 1.0).unwrap());
            assert!(crate::qcore::max_abs_diff(pure.entries(), phi.projector().entries()) < 1e-15);
            let mixed = isotropic(&IsotropicParams::new(d, 1.0 / (d * d) as f64).unwrap());
            let id = DensityMatrix::maximally_mixed(vec![d, d]).unwrap();
            assert!(crate::qcore::max_abs_diff(mixed.entries(), id.entries()) < 1e-15);
        }
        assert!(IsotropicParams::new(2, 1.2).is_err());
        assert!(IsotropicParams::new(2, -0.1).is_err());
        assert!(IsotropicParams::new(1, 0.5).is_err());
    }

    #[test]
    fn isotropic_spectrum_d2_half() {
        // F on |Φ⟩, (1−F)/3 on its complement
        let ev = isotropic(&IsotropicParams::new(2, 0.5).unwrap()).eigenvalues();
        let expect = [1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 0.5];
        for (a, b) in ev.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn ghz_properties() {
        assert_eq!(ghz(2).unwrap(), bell_pair().with_dims(vec![2, 2]).unwrap());
        assert!(ghz(1).is_err());
        let g = ghz(4).unwrap();
        for left in [vec![0], vec![1, 2], vec![3, 0, 1]] {
            let s = schmidt_decompose(&g, &left).unwrap();
            assert_eq!(s.schmidt_number, 2);
            assert!((s.coefficients[0] - 0.5f64.sqrt()).abs() < 1e-12);
            assert!((s.coefficients[1] - 0.5f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn interleave_small_cases() {
        assert!(interleave_permutation(1).is_identity());
        assert_eq!(interleave_permutation(2).as_slice(), &[0, 2, 1, 3]);
        assert_eq!(interleave_permutation(3).as_slice(), &[0, 2, 4, 1, 3, 5]);
    }
}
