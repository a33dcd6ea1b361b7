//! Standard `d`-level teleportation through an arbitrary `d ⊗ d` resource.
//!
//! Alice measures the input together with her half of the resource in the
//! basis `|Φ_ab⟩ = (X^a Z^b ⊗ I)|Φd+⟩` (input first) and Bob applies
//! `X^a Z^b` to his half. Averaging over all `d²` outcomes gives a
//! deterministic channel from the input system to Bob's system.

use crate::qcore::{apply_channel, c, root_of_unity, CMatrix, DensityMatrix, KrausChannel, StateVector};
use crate::states::generalized_bell;
use crate::{Error, Result};

pub use crate::qcore::WeylPair;

/// The `d²` states `(X^a Z^b ⊗ I)|Φd+⟩`, ordered by `a·d + b`.
pub fn bell_basis(d: usize) -> Result<Vec<StateVector>> {
    let phi = generalized_bell(d)?;
    let weyl = WeylPair::new(d);
    let mut out = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            let op = weyl.displacement(a, b).kronecker(&CMatrix::identity(d, d));
            out.push(StateVector::new(op * phi.amplitudes(), vec![d, d])?);
        }
    }
    Ok(out)
}

fn resource_dim(resource: &DensityMatrix) -> Result<usize> {
    match *resource.dims() {
        [a, b] if a == b => Ok(a),
        [a, b] => Err(Error::DimensionMismatch { expected: a, found: b }),
        _ => Err(Error::InvalidSelection(format!(
            "teleportation resource must have two subsystems, got dims {:?}",
            resource.dims()
        ))),
    }
}

/// The teleportation channel on a `d`-level input induced by `resource`
/// (Alice's half first). Returned in canonical form with at most `d²`
/// Kraus operators.
pub fn teleport_channel(resource: &DensityMatrix) -> Result<KrausChannel> {
    let d = resource_dim(resource)?;
    if d < 2 {
        return Err(Error::InvalidParameter("teleportation needs d ≥ 2".into()));
    }
    let weyl = WeylPair::new(d);
    let (values, vectors) = crate::qcore::linalg::eigh(resource.entries());
    let inv_sqrt_d = 1.0 / (d as f64).sqrt();
    let corrections: Vec<CMatrix> = (0..d * d).map(|ab| weyl.displacement(ab / d, ab % d)).collect();

    let mut ops = Vec::new();
    for (k, &lambda) in values.iter().enumerate() {
        if lambda <= 1e-15 {
            continue;
        }
        let weight = lambda.sqrt() * inv_sqrt_d;
        let r = vectors.column(k);
        for a in 0..d {
            for b in 0..d {
                // ⟨Φ_ab|_{in,A} applied to |i⟩ ⊗ |r⟩_{AB}
                let m = CMatrix::from_fn(d, d, |beta, i| {
                    let alpha = (i + d - a) % d;
                    let phase = root_of_unity(d, d - (b * alpha) % d);
                    r[alpha * d + beta] * phase * c(weight)
                });
                ops.push(&corrections[a * d + b] * m);
            }
        }
    }
    KrausChannel::new(ops)?.canonical()
}

/// `(F·d + 1)/(d + 1)`: output overlap of teleportation through `ρ_F`.
pub fn teleport_fidelity(d: usize, f: f64) -> f64 {
    let d = d as f64;
    (f * d + 1.0) / (d + 1.0)
}

/// Teleports the `targets` subsystems of a mixed state, grouped in the listed
/// order, through `resource`.
pub fn teleport_subsystems_mixed(rho: &DensityMatrix, targets: &[usize], resource: &DensityMatrix) -> Result<DensityMatrix> {
    let d = resource_dim(resource)?;
    let group: usize = targets.iter().filter_map(|&i| rho.dims().get(i)).product();
    if group != d {
        return Err(Error::DimensionMismatch { expected: d, found: group });
    }
    apply_channel(&teleport_channel(resource)?, rho, targets)
}

/// Teleports the `targets` subsystems of `psi` through `resource`.
pub fn teleport_subsystems(psi: &StateVector, targets: &[usize], resource: &DensityMatrix) -> Result<DensityMatrix> {
    teleport_subsystems_mixed(&psi.projector(), targets, resource)
}

/// One leg of a sequential distribution.
#[derive(Debug, Clone)]
pub struct Hop {
    pub targets: Vec<usize>,
    pub resource: DensityMatrix,
}

/// Runs the hops in order, each teleporting its targets through its own
/// resource. Targets of different hops must be disjoint.
pub fn share_sequential(psi: &StateVector, hops: &[Hop]) -> Result<DensityMatrix> {
    let mut used = vec![false; psi.num_subsystems()];
    for hop in hops {
        for &t in &hop.targets {
            if t < used.len() && used[t] {
                return Err(Error::InvalidSelection(format!("subsystem {t} is teleported by more than one hop")));
            }
            if t < used.len() {
                used[t] = true;
            }
        }
    }
    hops.iter()
        .try_fold(psi.projector(), |rho, hop| teleport_subsystems_mixed(&rho, &hop.targets, &hop.resource))
}

/// Depolarizing weight `λ = (d²F − 1)/(d² − 1)` of the channel induced by `ρ_F`.
pub fn depolarizing_weight(d: usize, f: f64) -> f64 {
    let d2 = (d * d) as f64;
    (d2 * f - 1.0) / (d2 - 1.0)
}
