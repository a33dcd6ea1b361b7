//! The `U ⊗ U*` twirl on a `d ⊗ d` system.
//!
//! [`twirl_exact`] uses the closed form: the twirl projects any state onto the
//! isotropic state with the same overlap on `|Φd+⟩`. [`twirl_sampled`]
//! averages explicit Haar conjugations and exists to cross-check it.

use rayon::prelude::*;

use crate::qcore::{c, haar_unitary, overlap, substream, CMatrix, DensityMatrix};
use crate::states::{generalized_bell, isotropic, IsotropicParams};
use crate::{Error, Result};

/// Samples summed sequentially inside one parallel task.
const CHUNK: usize = 256;

fn pair_dim(rho: &DensityMatrix) -> Result<usize> {
    match *rho.dims() {
        [a, b] if a == b && a >= 2 => Ok(a),
        [a, b] => Err(Error::DimensionMismatch { expected: a, found: b }),
        _ => Err(Error::InvalidSelection(format!("twirl needs exactly two subsystems, got dims {:?}", rho.dims()))),
    }
}

/// `ρ_{F(ρ)}` with `F(ρ) = ⟨Φd+|ρ|Φd+⟩`.
pub fn twirl_exact(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let d = pair_dim(rho)?;
    let f = overlap(rho, &generalized_bell(d)?)?;
    Ok(isotropic(&IsotropicParams::new(d, f)?))
}

/// `(U ⊗ U*) ρ (U ⊗ U*)†`.
pub fn conjugate_local(rho: &CMatrix, u: &CMatrix) -> CMatrix {
    let w = u.kronecker(&u.conjugate());
    &w * rho * w.adjoint()
}

/// Monte Carlo twirl over `n_samples` Haar draws. Sample `i` uses
/// `substream(seed, i)`, so the result does not depend on the thread count.
pub fn twirl_sampled(rho: &DensityMatrix, n_samples: usize, seed: u64) -> Result<DensityMatrix> {
    let d = pair_dim(rho)?;
    if n_samples == 0 {
        return Err(Error::InvalidParameter("twirl needs at least one sample".into()));
    }
    let n = d * d;
    let partials: Vec<CMatrix> = (0..n_samples.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(n_samples);
            (lo..hi).fold(CMatrix::zeros(n, n), |acc, i| {
                let u = haar_unitary(d, &mut substream(seed, i as u64));
                acc + conjugate_local(rho.entries(), &u)
            })
        })
        .collect();
    let sum = partials.into_iter().fold(CMatrix::zeros(n, n), |acc, m| acc + m);
    let mean = crate::qcore::linalg::hermitize(&(sum * c(1.0 / n_samples as f64)));
    DensityMatrix::new(mean, vec![d, d])
}
