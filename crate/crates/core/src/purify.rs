//! Monte Carlo simulation of CSS-code entanglement purification in the
//! Pauli-error picture.
//!
//! Under i.i.d. Pauli noise every transmitted EPR pair carries a definite
//! Pauli error on Bob's half, so one protocol round reduces to bookkeeping on
//! bit-flip and phase-flip indicator vectors:
//!
//! 1. draw the Hadamard mask `b` over the `2n` pairs and an error pattern on
//!    the transmitted qubits; Bob undoing the Hadamards swaps the bit and
//!    phase components wherever `b = 1`;
//! 2. pick `n` check pairs uniformly at random; a Z-basis comparison reveals
//!    their bit flips, and the round aborts when more than `t` disagree;
//! 3. on the remaining `n` code pairs, decode the bit syndrome with `h1` and
//!    the phase syndrome with `h2`; the `m` output pairs are perfect exactly
//!    when the residual bit error lies in `C2` and the residual phase error
//!    lies in `C1^⊥`.

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::csscode::{syndrome, xor, CssCode};
use crate::qcore::{substream, SimRng};
use crate::{Error, Result};

/// Two-sided 95% normal quantile.
const Z_95: f64 = 1.959_963_984_540_054;

/// Largest block length accepted by the exact enumerator (`4ⁿ` patterns).
pub const MAX_EXACT_BLOCK_LEN: usize = 10;

/// Per-qubit Pauli channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliChannelSpec {
    pub p_i: f64,
    pub p_x: f64,
    pub p_y: f64,
    pub p_z: f64,
}

impl PauliChannelSpec {
    pub fn new(p_i: f64, p_x: f64, p_y: f64, p_z: f64) -> Result<Self> {
        let probs = [p_i, p_x, p_y, p_z];
        if probs.iter().any(|p| !(0.0..=1.0).contains(p)) || (probs.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("Pauli probabilities {probs:?} must be in [0,1] and sum to 1")));
        }
        Ok(Self { p_i, p_x, p_y, p_z })
    }

    pub fn noiseless() -> Self {
        Self { p_i: 1.0, p_x: 0.0, p_y: 0.0, p_z: 0.0 }
    }

    /// X, Y and Z each with probability `p/3`.
    pub fn depolarizing(p: f64) -> Result<Self> {
        Self::new(1.0 - p, p / 3.0, p / 3.0, p / 3.0)
    }

    pub fn is_noiseless(&self) -> bool {
        self.p_i == 1.0
    }

    /// The channel seen after a Hadamard on both sides: X and Z swap.
    pub fn hadamard_conjugate(&self) -> Self {
        Self { p_i: self.p_i, p_x: self.p_z, p_y: self.p_y, p_z: self.p_x }
    }

    /// Average of the channel and its Hadamard conjugate, i.e. the effective
    /// channel of a pair whose mask bit is uniformly random.
    pub fn mask_averaged(&self) -> Self {
        let xz = 0.5 * (self.p_x + self.p_z);
        Self { p_i: self.p_i, p_x: xz, p_y: self.p_y, p_z: xz }
    }

    /// Probability that a Z-basis comparison disagrees.
    pub fn bit_flip_probability(&self) -> f64 {
        self.p_x + self.p_y
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> (bool, bool) {
        let u: f64 = rng.random();
        if u < self.p_i {
            (false, false)
        } else if u < self.p_i + self.p_x {
            (true, false)
        } else if u < self.p_i + self.p_x + self.p_y {
            (true, true)
        } else {
            (false, true)
        }
    }
}

/// Bit-flip (X component) and phase-flip (Z component) indicators; a Y error
/// sets both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliErrorPattern {
    pub bit: Vec<bool>,
    pub phase: Vec<bool>,
}

impl PauliErrorPattern {
    pub fn new(bit: Vec<bool>, phase: Vec<bool>) -> Result<Self> {
        if bit.len() != phase.len() {
            return Err(Error::DimensionMismatch { expected: bit.len(), found: phase.len() });
        }
        Ok(Self { bit, phase })
    }

    pub fn identity(len: usize) -> Self {
        Self { bit: vec![false; len], phase: vec![false; len] }
    }

    pub fn len(&self) -> usize {
        self.bit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bit.is_empty()
    }

    fn select(&self, positions: &[usize]) -> Self {
        Self {
            bit: positions.iter().map(|&i| self.bit[i]).collect(),
            phase: positions.iter().map(|&i| self.phase[i]).collect(),
        }
    }
}

/// Independent per-qubit draws from `spec`.
pub fn sample_pattern<R: Rng + ?Sized>(spec: &PauliChannelSpec, count: usize, rng: &mut R) -> PauliErrorPattern {
    let (bit, phase) = (0..count).map(|_| spec.draw(rng)).unzip();
    PauliErrorPattern { bit, phase }
}

/// Conjugates by Hadamard wherever `mask` is set, swapping bit and phase.
pub fn apply_hadamard_mask(pattern: &PauliErrorPattern, mask: &[bool]) -> Result<PauliErrorPattern> {
    if mask.len() != pattern.len() {
        return Err(Error::DimensionMismatch { expected: pattern.len(), found: mask.len() });
    }
    let mut out = pattern.clone();
    for (i, &m) in mask.iter().enumerate() {
        if m {
            std::mem::swap(&mut out.bit[i], &mut out.phase[i]);
        }
    }
    Ok(out)
}

/// Whether the Hadamard mask of step 2 is drawn at random or held at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MaskPolicy {
    #[default]
    Random,
    Zero,
}

/// Result of one protocol round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProtocolOutcome {
    pub aborted: bool,
    /// Check pairs whose Z-basis outcomes disagreed.
    pub disagreements: usize,
    /// Meaningful only when `aborted` is false.
    pub logical_success: bool,
}

/// Decodes the errors on the code pairs and reports whether the encoded
/// pairs come out perfect.
pub fn code_block_success(code: &CssCode, errors: &PauliErrorPattern) -> Result<bool> {
    let s_bit = syndrome(code.h1(), &errors.bit)?;
    let s_phase = syndrome(code.h2(), &errors.phase)?;
    let (est_bit, est_phase) = code.decode(&s_bit, &s_phase)?;
    Ok(code.bit_residual_is_trivial(&xor(&errors.bit, &est_bit))
        && code.phase_residual_is_trivial(&xor(&errors.phase, &est_phase)))
}

/// One round of the protocol with a random mask.
pub fn run_protocol<R: Rng + ?Sized>(code: &CssCode, spec: &PauliChannelSpec, rng: &mut R) -> ProtocolOutcome {
    run_protocol_with(code, spec, MaskPolicy::Random, rng)
}

pub fn run_protocol_with<R: Rng + ?Sized>(
    code: &CssCode,
    spec: &PauliChannelSpec,
    mask: MaskPolicy,
    rng: &mut R,
) -> ProtocolOutcome {
    let n = code.n();
    let pairs = 2 * n;
    let b: Vec<bool> = match mask {
        MaskPolicy::Random => (0..pairs).map(|_| rng.random()).collect(),
        MaskPolicy::Zero => vec![false; pairs],
    };
    let physical = sample_pattern(spec, pairs, rng);
    let errors = apply_hadamard_mask(&physical, &b).expect("mask has one bit per pair");

    let mut is_check = vec![false; pairs];
    for i in index::sample(rng, pairs, n) {
        is_check[i] = true;
    }
    let disagreements = (0..pairs).filter(|&i| is_check[i] && errors.bit[i]).count();
    if disagreements > code.t() {
        return ProtocolOutcome { aborted: true, disagreements, logical_success: false };
    }
    let code_pairs: Vec<usize> = (0..pairs).filter(|&i| !is_check[i]).collect();
    let logical_success = code_block_success(code, &errors.select(&code_pairs)).expect("block length matches code");
    ProtocolOutcome { aborted: false, disagreements, logical_success }
}

/// Aggregate of many protocol rounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PurificationReport {
    pub trials: u64,
    pub passes: u64,
    pub successes: u64,
    pub pass_rate: f64,
    /// Estimate of `P(logical success | pass)`; `None` when no round passed.
    pub conditional_fidelity: Option<f64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    /// Total check-pair disagreements over all rounds.
    pub disagreements: u64,
    pub seed: u64,
}

/// Wilson score interval at 95% for `successes` out of `n`.
pub fn wilson_interval(successes: u64, n: u64) -> (f64, f64) {
    assert!(n > 0 && successes <= n);
    let n_f = n as f64;
    let p = successes as f64 / n_f;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n_f;
    let center = (p + z2 / (2.0 * n_f)) / denom;
    let half = Z_95 / denom * (p * (1.0 - p) / n_f + z2 / (4.0 * n_f * n_f)).sqrt();
    ((center - half).max(0.0).min(p), (center + half).min(1.0).max(p))
}

/// Runs `trials` rounds; round `i` draws from `substream(seed, i)`.
pub fn estimate(code: &CssCode, spec: &PauliChannelSpec, trials: u64, seed: u64) -> Result<PurificationReport> {
    estimate_with(code, spec, MaskPolicy::Random, trials, seed)
}

pub fn estimate_with(
    code: &CssCode,
    spec: &PauliChannelSpec,
    mask: MaskPolicy,
    trials: u64,
    seed: u64,
) -> Result<PurificationReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let (passes, successes, disagreements) = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng: SimRng = substream(seed, i);
            let o = run_protocol_with(code, spec, mask, &mut rng);
            (!o.aborted as u64, (!o.aborted && o.logical_success) as u64, o.disagreements as u64)
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));

    let (conditional_fidelity, ci_low, ci_high) = if passes == 0 {
        (None, None, None)
    } else if spec.is_noiseless() {
        // no randomness reaches the outcome
        let f = successes as f64 / passes as f64;
        (Some(f), Some(f), Some(f))
    } else {
        let (lo, hi) = wilson_interval(successes, passes);
        (Some(successes as f64 / passes as f64), Some(lo), Some(hi))
    };
    Ok(PurificationReport {
        trials,
        passes,
        successes,
        pass_rate: passes as f64 / trials as f64,
        conditional_fidelity,
        ci_low,
        ci_high,
        disagreements,
        seed,
    })
}

/// Exact pass probability and pass-conditioned success probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactOutcome {
    pub pass_probability: f64,
    pub conditional_fidelity: f64,
}

/// Exact evaluation of the same round by enumeration instead of sampling.
///
/// Errors on different pairs are independent, so the check pairs only set the
/// pass probability (a binomial tail in the effective bit-flip rate) and the
/// conditional fidelity is the success probability of the code block,
/// obtained by summing over all `4ⁿ` Pauli patterns.
pub fn exact_outcome(code: &CssCode, spec: &PauliChannelSpec, mask: MaskPolicy) -> Result<ExactOutcome> {
    let n = code.n();
    if n > MAX_EXACT_BLOCK_LEN {
        return Err(Error::InvalidParameter(format!("exact enumeration limited to n ≤ {MAX_EXACT_BLOCK_LEN}")));
    }
    let eff = match mask {
        MaskPolicy::Random => spec.mask_averaged(),
        MaskPolicy::Zero => *spec,
    };
    let q = eff.bit_flip_probability();
    let pass_probability: f64 = (0..=code.t().min(n)).map(|k| binomial(n, k) * q.powi(k as i32) * (1.0 - q).powi((n - k) as i32)).sum();

    let probs = [eff.p_i, eff.p_x, eff.p_y, eff.p_z];
    let mut success = 0.0;
    let mut pattern = PauliErrorPattern::identity(n);
    for idx in 0..4usize.pow(n as u32) {
        let mut p = 1.0;
        let mut rest = idx;
        for j in 0..n {
            let kind = rest % 4;
            rest /= 4;
            p *= probs[kind];
            pattern.bit[j] = kind == 1 || kind == 2;
            pattern.phase[j] = kind == 2 || kind == 3;
        }
        if p > 0.0 && code_block_success(code, &pattern)? {
            success += p;
        }
    }
    Ok(ExactOutcome { pass_probability, conditional_fidelity: success })
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
