//! Brute-force reference computations shared by the integration and
//! acceptance tests. Everything here is built from explicit matrices and
//! index loops, without the library's channel or decoding shortcuts.

#![allow(dead_code)]

use entshare::csscode::{weight, xor, CssCode};
use entshare::purify::PauliChannelSpec;
use entshare::qcore::{CMatrix, C64};

pub fn cr(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `X|j⟩ = |j+1⟩`.
pub fn shift(d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |r, c| cr(if r == (c + 1) % d { 1.0 } else { 0.0 }))
}

/// `Z|j⟩ = ω^j|j⟩`.
pub fn clock(d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |r, c| {
        if r == c {
            C64::from_polar(1.0, 2.0 * std::f64::consts::PI * r as f64 / d as f64)
        } else {
            cr(0.0)
        }
    })
}

fn power(m: &CMatrix, k: usize) -> CMatrix {
    (0..k).fold(CMatrix::identity(m.nrows(), m.ncols()), |acc, _| acc * m)
}

/// Images `E(|i⟩⟨j|)` of the measure-and-correct teleportation protocol
/// through `resource` (a `d²×d²` density matrix, Alice's half first),
/// indexed by `i·d + j`.
///
/// For every outcome `(a, b)` the input and Alice's half are projected on
/// `(X^a Z^b ⊗ I)|Φd+⟩`, and Bob applies `X^a Z^b`.
pub fn teleport_process(resource: &CMatrix, d: usize) -> Vec<CMatrix> {
    let (x, z) = (shift(d), clock(d));
    let amp = 1.0 / (d as f64).sqrt();
    let mut bras = Vec::new();
    for a in 0..d {
        for b in 0..d {
            let u = power(&x, a) * power(&z, b);
            // ⟨Φ_ab| ⊗ I_B as a d × d³ matrix
            let mut bra = CMatrix::zeros(d, d * d * d);
            for k in 0..d {
                for i in 0..d {
                    for al in 0..d {
                        // ⟨Φ_ab|i, α⟩ = amp · conj(u[i, k]) δ_{α k}
                        if al == k {
                            let coeff = u[(i, k)].conj() * cr(amp);
                            for beta in 0..d {
                                bra[(beta, (i * d + al) * d + beta)] += coeff;
                            }
                        }
                    }
                }
            }
            bras.push((u, bra));
        }
    }
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut sigma = CMatrix::zeros(d, d);
            sigma[(i, j)] = cr(1.0);
            let joint = sigma.kronecker(resource);
            let mut acc = CMatrix::zeros(d, d);
            for (u, bra) in &bras {
                acc += u * (bra * &joint * bra.adjoint()) * u.adjoint();
            }
            out.push(acc);
        }
    }
    out
}

/// Applies a process given by its basis images.
pub fn apply_process(images: &[CMatrix], sigma: &CMatrix) -> CMatrix {
    let d = sigma.nrows();
    let mut out = CMatrix::zeros(images[0].nrows(), images[0].ncols());
    for i in 0..d {
        for j in 0..d {
            out += &images[i * d + j] * sigma[(i, j)];
        }
    }
    out
}

/// `⟨ψ|ρ|ψ⟩` for an amplitude column.
pub fn expectation(rho: &CMatrix, psi: &CMatrix) -> f64 {
    (psi.adjoint() * rho * psi)[(0, 0)].re
}

/// Exhaustive `4ⁿ` evaluation of the pass-conditioned code-block success
/// probability under the mask-averaged channel, decoding each syndrome by
/// scanning all `2ⁿ` patterns for the lightest one.
pub fn brute_force_conditional_fidelity(code: &CssCode, spec: &PauliChannelSpec) -> f64 {
    let n = code.n();
    let eff = spec.mask_averaged();
    let probs = [eff.p_i, eff.p_x, eff.p_y, eff.p_z];
    let patterns: Vec<Vec<bool>> = (0..1usize << n).map(|x| (0..n).map(|i| (x >> i) & 1 == 1).collect()).collect();
    let syn = |h: &entshare::csscode::BinaryMatrix, e: &[bool]| h.mul_vec(e).unwrap();
    let lightest = |h: &entshare::csscode::BinaryMatrix, s: &[bool]| {
        patterns.iter().filter(|e| syn(h, e) == s).min_by_key(|e| weight(e)).unwrap().clone()
    };
    let c2_words: Vec<Vec<bool>> = code.c2().codewords().collect();
    let c1_perp: Vec<Vec<bool>> = code.c1().dual().codewords().collect();
    let mut total = 0.0;
    for idx in 0..4usize.pow(n as u32) {
        let mut p = 1.0;
        let (mut bit, mut phase) = (vec![false; n], vec![false; n]);
        let mut rest = idx;
        for j in 0..n {
            let kind = rest % 4;
            rest /= 4;
            p *= probs[kind];
            bit[j] = kind == 1 || kind == 2;
            phase[j] = kind == 2 || kind == 3;
        }
        if p == 0.0 {
            continue;
        }
        let rb = xor(&bit, &lightest(code.h1(), &syn(code.h1(), &bit)));
        let rp = xor(&phase, &lightest(code.h2(), &syn(code.h2(), &phase)));
        if c2_words.contains(&rb) && c1_perp.contains(&rp) {
            total += p;
        }
    }
    total
}

// ---- dense qubit-register simulation of the purification round ----

fn hadamard() -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_row_slice(2, 2, &[cr(h), cr(h), cr(h), cr(-h)])
}

fn paulis() -> [CMatrix; 4] {
    let i = CMatrix::identity(2, 2);
    let x = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]);
    let z = CMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(-1.0)]);
    let y = CMatrix::from_row_slice(2, 2, &[cr(0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), cr(0.0)]);
    [i, x, y, z]
}

/// Single-qubit operator on qubit `q` of an `nq`-qubit register (qubit 0 is
/// the most significant bit).
fn embed(op: &CMatrix, q: usize, nq: usize) -> CMatrix {
    let left = CMatrix::identity(1 << q, 1 << q);
    let right = CMatrix::identity(1 << (nq - q - 1), 1 << (nq - q - 1));
    left.kronecker(op).kronecker(&right)
}

fn bit_of(idx: usize, q: usize, nq: usize) -> bool {
    (idx >> (nq - 1 - q)) & 1 == 1
}

/// `k` Bell pairs on qubits `A_0..A_{k−1}, B_0..B_{k−1}`.
fn bell_pairs(k: usize) -> CMatrix {
    let nq = 2 * k;
    let amp = 0.5f64.powi(k as i32).sqrt();
    let psi = CMatrix::from_fn(1 << nq, 1, |idx, _| {
        let same = (0..k).all(|j| bit_of(idx, j, nq) == bit_of(idx, k + j, nq));
        cr(if same { amp } else { 0.0 })
    });
    &psi * psi.adjoint()
}

/// The channel on Bob's qubit: the spec channel or its Hadamard conjugate,
/// each with probability 1/2.
fn masked_channel(spec: &PauliChannelSpec) -> Vec<CMatrix> {
    let h = hadamard();
    let probs = [spec.p_i, spec.p_x, spec.p_y, spec.p_z];
    let mut ops = Vec::new();
    for (p, s) in probs.iter().zip(paulis()) {
        if *p > 0.0 {
            let w = cr((p / 2.0).sqrt());
            ops.push(&s * w);
            ops.push(&h * &s * &h * w);
        }
    }
    ops
}

fn apply_local(rho: &CMatrix, ops: &[CMatrix], q: usize, nq: usize) -> CMatrix {
    let mut out = CMatrix::zeros(rho.nrows(), rho.ncols());
    for k in ops {
        let big = embed(k, q, nq);
        out += &big * rho * big.adjoint();
    }
    out
}

/// Traces out every qubit not in `keep` (kept in ascending order).
fn trace_out(rho: &CMatrix, keep: &[usize], nq: usize) -> CMatrix {
    let nk = keep.len();
    let drop: Vec<usize> = (0..nq).filter(|q| !keep.contains(q)).collect();
    let compose = |kept: usize, dropped: usize| {
        let mut idx = 0usize;
        for (i, &q) in keep.iter().enumerate() {
            if (kept >> (nk - 1 - i)) & 1 == 1 {
                idx |= 1 << (nq - 1 - q);
            }
        }
        for (i, &q) in drop.iter().enumerate() {
            if (dropped >> (drop.len() - 1 - i)) & 1 == 1 {
                idx |= 1 << (nq - 1 - q);
            }
        }
        idx
    };
    CMatrix::from_fn(1 << nk, 1 << nk, |r, c| {
        (0..1usize << drop.len()).map(|e| rho[(compose(r, e), compose(c, e))]).sum()
    })
}

fn product_on(op: &CMatrix, row: &[bool], qubits: &[usize], nq: usize) -> CMatrix {
    let mut out = CMatrix::identity(1 << nq, 1 << nq);
    for (&on, &q) in row.iter().zip(qubits) {
        if on {
            out = embed(op, q, nq) * out;
        }
    }
    out
}

/// Success mass `Σ Tr(P_G · C ρ C†)` over all local syndrome outcomes, for
/// `ρ` on `A_0..A_{n−1}, B_0..B_{n−1}` holding the code pairs.
fn code_block_mass(code: &CssCode, rho: &CMatrix) -> f64 {
    let n = code.n();
    let nq = 2 * n;
    let dim = 1 << nq;
    let [_, x, _, z] = paulis();
    let alice: Vec<usize> = (0..n).collect();
    let bob: Vec<usize> = (n..2 * n).collect();
    let id = CMatrix::identity(dim, dim);
    let half = cr(0.5);

    // stabilizer generators: Z-type from h1, X-type from h2
    let mut observables: Vec<(Vec<bool>, bool)> = Vec::new();
    observables.extend(code.h1().row_iter().map(|r| (r.to_vec(), true)));
    observables.extend(code.h2().row_iter().map(|r| (r.to_vec(), false)));
    let r1 = code.h1().rows();
    let count = observables.len();

    let mut goal = id.clone();
    for u in code.c2().check().row_iter() {
        let zz = product_on(&z, u, &alice, nq) * product_on(&z, u, &bob, nq);
        goal = (&id + zz) * half * goal;
    }
    for v in code.c1().generator().row_iter() {
        let xx = product_on(&x, v, &alice, nq) * product_on(&x, v, &bob, nq);
        goal = (&id + xx) * half * goal;
    }

    let projector = |party: &[usize], outcome: usize| {
        let mut p = id.clone();
        for (k, (row, is_z)) in observables.iter().enumerate() {
            let op = product_on(if *is_z { &z } else { &x }, row, party, nq);
            let sign = if (outcome >> k) & 1 == 1 { -1.0 } else { 1.0 };
            p = (&id + op * cr(sign)) * half * p;
        }
        p
    };
    let mut mass = 0.0;
    for sa in 0..1usize << count {
        let pa = projector(&alice, sa);
        for sb in 0..1usize << count {
            let pb = projector(&bob, sb);
            let p = &pa * &pb;
            let post = &p * rho * p.adjoint();
            let rel = sa ^ sb;
            let s_bit: Vec<bool> = (0..r1).map(|k| (rel >> k) & 1 == 1).collect();
            let s_phase: Vec<bool> = (r1..count).map(|k| (rel >> k) & 1 == 1).collect();
            let (eb, ep) = code.decode(&s_bit, &s_phase).unwrap();
            let fix = product_on(&x, &eb, &bob, nq) * product_on(&z, &ep, &bob, nq);
            mass += (&goal * &fix * post * fix.adjoint()).trace().re;
        }
    }
    mass
}

fn subsets(total: usize, size: usize) -> Vec<Vec<usize>> {
    (0..1usize << total)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..total).filter(|i| (m >> i) & 1 == 1).collect())
        .collect()
}

/// Dense simulation of one round on all `2n` pairs at once (`4n` qubits),
/// averaged over the choice of check pairs. Returns the pass probability and
/// the pass-conditioned success probability.
pub fn dense_round_full(code: &CssCode, spec: &PauliChannelSpec) -> (f64, f64) {
    let n = code.n();
    let k = 2 * n;
    let nq = 2 * k;
    assert!(nq <= 8, "full register limited to 8 qubits");
    let ops = masked_channel(spec);
    let mut rho = bell_pairs(k);
    for j in 0..k {
        rho = apply_local(&rho, &ops, k + j, nq);
    }
    let choices = subsets(k, n);
    let (mut pass, mut success) = (0.0, 0.0);
    for checks in &choices {
        let keep = |idx: usize| {
            let disagreements = checks.iter().filter(|&&j| bit_of(idx, j, nq) != bit_of(idx, k + j, nq)).count();
            disagreements <= code.t()
        };
        let post = CMatrix::from_fn(rho.nrows(), rho.ncols(), |r, c| if keep(r) && keep(c) { rho[(r, c)] } else { cr(0.0) });
        pass += post.trace().re;
        let code_pairs: Vec<usize> = (0..k).filter(|j| !checks.contains(j)).collect();
        let qubits: Vec<usize> = code_pairs.iter().copied().chain(code_pairs.iter().map(|j| k + j)).collect();
        success += code_block_mass(code, &trace_out(&post, &qubits, nq));
    }
    let count = choices.len() as f64;
    (pass / count, success / pass)
}

/// Same round using the product structure of the transmitted pairs: the
/// check pairs and the code pairs are simulated as separate registers.
pub fn dense_round_factored(code: &CssCode, spec: &PauliChannelSpec) -> (f64, f64) {
    let n = code.n();
    let nq = 2 * n;
    let ops = masked_channel(spec);
    let mut rho = bell_pairs(n);
    for j in 0..n {
        rho = apply_local(&rho, &ops, n + j, nq);
    }
    let pass: f64 = (0..rho.nrows())
        .filter(|&idx| (0..n).filter(|&j| bit_of(idx, j, nq) != bit_of(idx, n + j, nq)).count() <= code.t())
        .map(|idx| rho[(idx, idx)].re)
        .sum();
    (pass, code_block_mass(code, &rho))
}
