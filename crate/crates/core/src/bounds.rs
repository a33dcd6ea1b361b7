//! Closed-form fidelity bounds and a harness that checks each one against an
//! exact dense simulation.
//!
//! Throughout, `eps` passed to [`verify`] is the infidelity `1 − F` of the
//! isotropic resource; the teleportation channel it induces has worst-case
//! infidelity `d·eps/(d + 1)`, independent of the input.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::qcore::{
    c, entanglement_fidelity, fidelity, haar_state, haar_unitary, overlap, schmidt_decompose, substream, CVector,
    StateVector,
};
use crate::states::{generalized_bell, ghz, isotropic, IsotropicParams};
use crate::teleport::{teleport_channel, teleport_subsystems};
use crate::{Error, Result};

/// Slack below which a bound counts as violated.
pub const SLACK_TOL: f64 = 1e-9;

/// Scenario names accepted by [`verify`].
pub const SCENARIOS: [&str; 6] = ["lemma2", "lemma3", "maxent", "corollary1", "theorem1", "ghz"];

/// A simulated value paired with the closed form it should dominate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub parameters: BTreeMap<String, f64>,
    pub simulated: f64,
    pub bound: f64,
    pub slack: f64,
    pub satisfied: bool,
}

impl BoundReport {
    pub fn new(name: impl Into<String>, parameters: BTreeMap<String, f64>, simulated: f64, bound: f64) -> Self {
        let slack = simulated - bound;
        Self { name: name.into(), parameters, simulated, bound, slack, satisfied: slack >= -SLACK_TOL }
    }
}

/// `1 − d/(d+1)·eps`.
pub fn lemma2_bound(d: usize, eps: f64) -> f64 {
    let d = d as f64;
    1.0 - d / (d + 1.0) * eps
}

/// `1 − (1 + d0·max_pp)·eps`.
pub fn lemma3_bound(eps: f64, d0: usize, max_pp: f64) -> f64 {
    1.0 - (1.0 + d0 as f64 * max_pp) * eps
}

/// `1 − (d0 + 4)/4·eps`, the max_pp = 1/4 case.
pub fn remark_bound(eps: f64, d0: usize) -> f64 {
    1.0 - (d0 as f64 + 4.0) / 4.0 * eps
}

/// `1 − (d+1)/d·eps`, for a maximally entangled input.
pub fn maxent_bound(d: usize, eps: f64) -> f64 {
    let d = d as f64;
    1.0 - (d + 1.0) / d * eps
}

/// `√(1 − eps)`.
pub fn corollary1_fidelity(eps: f64) -> f64 {
    (1.0 - eps).sqrt()
}

/// `1 − 2^m/(2^m+1)·(1 + d0·max_pp)·eps`.
pub fn theorem1_bound(m: u32, eps: f64, d0: usize, max_pp: f64) -> f64 {
    let k = 2f64.powi(m as i32);
    1.0 - k / (k + 1.0) * (1.0 + d0 as f64 * max_pp) * eps
}

/// `√(1 − 3·2^{m−1}/(2^m+1)·eps)`.
pub fn ghz_example_fidelity(m: u32, eps: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let k = 2f64.powi(m as i32);
    let radicand = 1.0 - 1.5 * k / (k + 1.0) * eps;
    if radicand < 0.0 {
        return Err(Error::InvalidParameter(format!("negative radicand {radicand} for m={m}, eps={eps}")));
    }
    Ok(radicand.sqrt())
}

/// Overlap of `psi` with itself after its first `m` qubits are teleported,
/// as one `2^m`-level system, through `isotropic(2^m, 1 − eps)`.
pub fn pipeline_overlap(psi: &StateVector, m: usize, eps: f64) -> Result<f64> {
    if m == 0 || m >= psi.num_subsystems() {
        return Err(Error::InvalidParameter(format!("cannot teleport {m} of {} subsystems", psi.num_subsystems())));
    }
    let d: usize = psi.dims()[..m].iter().product();
    let resource = isotropic(&IsotropicParams::new(d, 1.0 - eps)?);
    let targets: Vec<usize> = (0..m).collect();
    overlap(&teleport_subsystems(psi, &targets, &resource)?, psi)
}

/// Random pure state on `d ⊗ d` with Schmidt rank `rank` and random spectrum.
pub fn random_schmidt_state<R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> Result<StateVector> {
    if rank == 0 || rank > d {
        return Err(Error::InvalidParameter(format!("Schmidt rank {rank} outside 1..={d}")));
    }
    let weights: Vec<f64> = (0..rank).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let u = haar_unitary(d, rng);
    let v = haar_unitary(d, rng);
    let mut amps = CVector::zeros(d * d);
    for (j, w) in weights.iter().enumerate() {
        amps += u.column(j).kronecker(&v.column(j)) * c((w / total).sqrt());
    }
    StateVector::normalized(amps, vec![d, d])
}

fn param(params: &BTreeMap<String, f64>, key: &str) -> Result<f64> {
    params.get(key).copied().ok_or_else(|| Error::InvalidParameter(format!("missing parameter `{key}`")))
}

fn int_param(params: &BTreeMap<String, f64>, key: &str, default: Option<usize>) -> Result<usize> {
    match (params.get(key), default) {
        (Some(&x), _) if x >= 0.0 && x.fract() == 0.0 => Ok(x as usize),
        (Some(&x), _) => Err(Error::InvalidParameter(format!("`{key}` must be a non-negative integer, got {x}"))),
        (None, Some(v)) => Ok(v),
        (None, None) => Err(Error::InvalidParameter(format!("missing parameter `{key}`"))),
    }
}

fn eps_param(params: &BTreeMap<String, f64>) -> Result<f64> {
    let eps = param(params, "eps")?;
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidParameter(format!("eps must lie in [0,1], got {eps}")));
    }
    Ok(eps)
}

/// Runs the named scenario and compares it with its closed form.
///
/// Parameters: `d` and `eps` for `lemma2`, `lemma3`, `maxent`, `corollary1`;
/// `m`, `eps` and optionally `n` (default `m + 1`) for `theorem1` and `ghz`.
/// Random scenarios also read `samples` (default 20) and `seed` (default 0).
pub fn verify(name: &str, params: &BTreeMap<String, f64>) -> Result<BoundReport> {
    let samples = int_param(params, "samples", Some(20))?.max(1);
    let seed = int_param(params, "seed", Some(0))? as u64;
    let mut recorded = params.clone();
    match name {
        "lemma2" => {
            let (d, eps) = (int_param(params, "d", None)?, eps_param(params)?);
            let channel = teleport_channel(&isotropic(&IsotropicParams::new(d, 1.0 - eps)?))?;
            let mut rng = substream(seed, 0);
            let mut worst = f64::INFINITY;
            for _ in 0..samples {
                let psi = haar_state(vec![d], &mut rng)?;
                let out = crate::qcore::apply_channel(&channel, &psi.projector(), &[0])?;
                worst = worst.min(overlap(&out, &psi)?);
            }
            Ok(BoundReport::new(name, recorded, worst, lemma2_bound(d, eps)))
        }
        "lemma3" => {
            let (d, eps) = (int_param(params, "d", None)?, eps_param(params)?);
            let channel = teleport_channel(&isotropic(&IsotropicParams::new(d, 1.0 - eps)?))?;
            let channel_eps = lemma2_infidelity(d, eps);
            let mut rng = substream(seed, 0);
            let mut worst: Option<BoundReport> = None;
            for i in 0..samples {
                let rank = 1 + i % d;
                let psi = random_schmidt_state(d, rank, &mut rng)?;
                let schmidt = schmidt_decompose(&psi, &[0])?;
                let sim = entanglement_fidelity(&channel, &psi, &[0])?;
                let bound = lemma3_bound(channel_eps, schmidt.schmidt_number, schmidt.max_pair_product());
                let mut p = recorded.clone();
                p.insert("channel_eps".into(), channel_eps);
                p.insert("d0".into(), schmidt.schmidt_number as f64);
                p.insert("max_pp".into(), schmidt.max_pair_product());
                let report = BoundReport::new(name, p, sim, bound);
                if worst.as_ref().is_none_or(|w| report.slack < w.slack) {
                    worst = Some(report);
                }
            }
            Ok(worst.expect("at least one sample"))
        }
        "maxent" => {
            let (d, eps) = (int_param(params, "d", None)?, eps_param(params)?);
            let channel = teleport_channel(&isotropic(&IsotropicParams::new(d, 1.0 - eps)?))?;
            let channel_eps = lemma2_infidelity(d, eps);
            let sim = entanglement_fidelity(&channel, &generalized_bell(d)?, &[1])?;
            recorded.insert("channel_eps".into(), channel_eps);
            Ok(BoundReport::new(name, recorded, sim, maxent_bound(d, channel_eps)))
        }
        "corollary1" => {
            let (d, eps) = (int_param(params, "d", None)?, eps_param(params)?);
            let phi = generalized_bell(d)?;
            let resource = isotropic(&IsotropicParams::new(d, 1.0 - eps)?);
            let out = teleport_subsystems(&phi, &[1], &resource)?;
            Ok(BoundReport::new(name, recorded, fidelity(&out, &phi.projector())?, corollary1_fidelity(eps)))
        }
        "theorem1" | "ghz" => {
            let (m, eps) = (int_param(params, "m", None)?, eps_param(params)?);
            if m == 0 {
                return Err(Error::InvalidParameter("m must be at least 1".into()));
            }
            let n = int_param(params, "n", Some(m + 1))?;
            recorded.insert("n".into(), n as f64);
            let psi = ghz(n)?;
            let sim = pipeline_overlap(&psi, m, eps)?;
            if name == "ghz" {
                Ok(BoundReport::new(name, recorded, sim.sqrt(), ghz_example_fidelity(m as u32, eps)?))
            } else {
                let left: Vec<usize> = (0..m).collect();
                let schmidt = schmidt_decompose(&psi, &left)?;
                let bound = theorem1_bound(m as u32, eps, schmidt.schmidt_number, schmidt.max_pair_product());
                recorded.insert("d0".into(), schmidt.schmidt_number as f64);
                recorded.insert("max_pp".into(), schmidt.max_pair_product());
                Ok(BoundReport::new(name, recorded, sim, bound))
            }
        }
        other => Err(Error::UnknownScenario(other.to_string())),
    }
}

/// Worst-case infidelity `d·eps/(d+1)` of teleporting through `isotropic(d, 1 − eps)`.
pub fn lemma2_infidelity(d: usize, eps: f64) -> f64 {
    let d = d as f64;
    d * eps / (d + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::teleport::teleport_fidelity;

    fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(lemma2_bound(5, 0.0), 1.0);
        assert!((lemma2_bound(2, 0.1) - (1.0 - 0.2 / 3.0)).abs() < 1e-15);
        assert!((lemma3_bound(0.1, 2, 0.25) - 0.85).abs() < 1e-15);
        assert!((remark_bound(0.1, 4) - 0.8).abs() < 1e-15);
        assert!((maxent_bound(2, 0.1) - 0.85).abs() < 1e-15);
        assert!((corollary1_fidelity(0.19) - 0.9).abs() < 1e-15);
        assert!((theorem1_bound(1, 0.1, 2, 0.25) - 0.9).abs() < 1e-15);
        assert!((ghz_example_fidelity(2, 0.1).unwrap() - 0.88f64.sqrt()).abs() < 1e-15);
        assert!((ghz_example_fidelity(1, 0.3).unwrap() - 0.7f64.sqrt()).abs() < 1e-15);
        assert!(ghz_example_fidelity(3, 0.9).is_err());
        assert!(ghz_example_fidelity(0, 0.1).is_err());
    }

    #[test]
    fn algebraic_relations_on_grid() {
        for d in 2..=8usize {
            for i in 0..=20 {
                let eps = i as f64 / 20.0;
                assert!((lemma2_bound(d, eps) - teleport_fidelity(d, 1.0 - eps)).abs() < 1e-12);
                let dd = (d * d) as f64;
                assert!((maxent_bound(d, eps) - lemma3_bound(eps, d, 1.0 / dd)).abs() < 1e-12);
                for pp in [0.0, 0.05, 0.1, 0.25] {
                    assert!(lemma3_bound(eps, d, pp) >= remark_bound(eps, d) - 1e-15);
                }
            }
        }
        for m in 1..=4u32 {
            let k = 2f64.powi(m as i32);
            for i in 0..=10 {
                let eps = i as f64 / 20.0;
                for (d0, pp) in [(1, 0.0), (2, 0.25), (3, 0.1)] {
                    let t = theorem1_bound(m, eps, d0, pp);
                    assert!(t >= 1.0 - k * (d0 as f64 + 4.0) / (4.0 * (k + 1.0)) * eps - 1e-15);
                    let rearranged = 1.0 - k / (k + 1.0) * (1.0 - lemma3_bound(eps, d0, pp));
                    assert!((t - rearranged).abs() < 1e-12);
                }
                if let Ok(g) = ghz_example_fidelity(m, eps) {
                    if eps > 0.0 {
                        assert!(g > (1.0 - 1.5f64.powi(m as i32) * eps).max(0.0).sqrt());
                    }
                }
            }
        }
    }

    #[test]
    fn verify_examples() {
        let r = verify("lemma2", &params(&[("d", 3.0), ("eps", 0.2)])).unwrap();
        assert!(r.satisfied && r.slack.abs() < 1e-9);
        let r = verify("lemma3", &params(&[("d", 4.0), ("eps", 0.2)])).unwrap();
        assert!(r.satisfied && r.slack >= 0.0);
        let r = verify("ghz", &params(&[("m", 2.0), ("eps", 0.1)])).unwrap();
        assert!(r.satisfied && r.slack > 1e-6);
        let r = verify("ghz", &params(&[("m", 1.0), ("eps", 0.1)])).unwrap();
        assert!(r.slack.abs() < 1e-9);
        assert!(matches!(verify("nope", &params(&[])), Err(Error::UnknownScenario(_))));
        assert!(verify("lemma2", &params(&[("d", 3.0)])).is_err());
    }

    #[test]
    fn every_scenario_satisfied_on_grid() {
        for eps in [0.0, 0.05, 0.1, 0.2] {
            for d in 2..=4 {
                for name in ["lemma2", "lemma3", "maxent", "corollary1"] {
                    let r = verify(name, &params(&[("d", d as f64), ("eps", eps), ("samples", 6.0)])).unwrap();
                    assert!(r.satisfied, "{r:?}");
                }
            }
            for m in 1..=3 {
                for name in ["theorem1", "ghz"] {
                    let r = verify(name, &params(&[("m", m as f64), ("eps", eps)])).unwrap();
                    assert!(r.satisfied, "{r:?}");
                }
            }
        }
    }

    #[test]
    fn report_slack_flag() {
        let r = BoundReport::new("x", BTreeMap::new(), 0.5, 0.5 + 2e-9);
        assert!(!r.satisfied);
        let r = BoundReport::new("x", BTreeMap::new(), 0.5, 0.5 + 5e-10);
        assert!(r.satisfied);
    }
}
