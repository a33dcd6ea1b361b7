//! CSS codes built from nested binary linear codes `{0} ⊂ C2 ⊂ C1 ⊂ F₂ⁿ`.
//!
//! Bit flips are diagnosed with `h1` (parity checks of `C1`), phase flips
//! with `h2` (parity checks of `C2^⊥`, i.e. generators of `C2`).

mod binary;
mod io;
mod table;

pub use binary::{dot, format_bits, parse_bits, weight, xor, BinaryMatrix};
pub use io::{format_css, parse_css, parse_linear_code, STEANE_TEXT};
pub use table::SyndromeTable;

use crate::qcore::{c, kron, pauli_x, pauli_z, CMatrix};
use crate::{Error, Result};

/// Largest block length for exhaustive enumeration (distances, tables).
pub const MAX_BLOCK_LEN: usize = 20;

/// A binary linear `[n, k]` code.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearCode {
    n: usize,
    k: usize,
    generator: BinaryMatrix,
    check: BinaryMatrix,
}

impl LinearCode {
    /// The generator must have full row rank; the check matrix is a basis of
    /// the dual code.
    pub fn from_generator(generator: BinaryMatrix) -> Result<Self> {
        let check = generator.nullspace();
        Self::with_check(generator, check)
    }

    /// Uses an explicit parity-check matrix, which must span the dual.
    pub fn with_check(generator: BinaryMatrix, check: BinaryMatrix) -> Result<Self> {
        let n = generator.cols();
        if n == 0 || n > MAX_BLOCK_LEN {
            return Err(Error::InvalidCode(format!("block length {n} outside 1..={MAX_BLOCK_LEN}")));
        }
        if check.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: check.cols() });
        }
        let k = generator.rows();
        if generator.rank() != k {
            return Err(Error::InvalidCode("generator rows are linearly dependent".into()));
        }
        if check.rank() != check.rows() || check.rows() != n - k {
            return Err(Error::InvalidCode(format!("check matrix must have {} independent rows", n - k)));
        }
        if !generator.mul(&check.transpose())?.is_zero() {
            return Err(Error::InvalidCode("generator · checkᵀ ≠ 0".into()));
        }
        Ok(Self { n, k, generator, check })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &BinaryMatrix {
        &self.generator
    }

    pub fn check(&self) -> &BinaryMatrix {
        &self.check
    }

    pub fn contains(&self, v: &[bool]) -> bool {
        v.len() == self.n && self.check.row_iter().all(|row| !dot(row, v))
    }

    /// The dual code, generated by this code's check matrix.
    pub fn dual(&self) -> LinearCode {
        Self::with_check(self.check.clone(), self.generator.clone()).expect("dual of a valid code is valid")
    }

    /// All `2^k` codewords, in message order.
    pub fn codewords(&self) -> impl Iterator<Item = Vec<bool>> + '_ {
        (0..1u64 << self.k).map(move |msg| {
            let mut w = vec![false; self.n];
            for (i, row) in self.generator.row_iter().enumerate() {
                if (msg >> i) & 1 == 1 {
                    w = xor(&w, row);
                }
            }
            w
        })
    }

    /// Smallest nonzero codeword weight, or `None` for the zero code.
    pub fn minimum_distance(&self) -> Option<usize> {
        self.codewords().skip(1).map(|w| weight(&w)).min()
    }
}

/// The CSS code of `C1` over `C2`.
#[derive(Debug, Clone)]
pub struct CssCode {
    c1: LinearCode,
    c2: LinearCode,
    m: usize,
    t: usize,
    bit_table: SyndromeTable,
    phase_table: SyndromeTable,
}

/// Checks `{0} ⊊ C2 ⊊ C1` and derives `m = k1 − k2` and
/// `t = ⌊(min(d(C1), d(C2^⊥)) − 1)/2⌋`.
pub fn validate_css(c1: LinearCode, c2: LinearCode) -> Result<CssCode> {
    if c1.n != c2.n {
        return Err(Error::DimensionMismatch { expected: c1.n, found: c2.n });
    }
    if c2.k == 0 {
        return Err(Error::InvalidCode("C2 must be a nonzero code".into()));
    }
    if let Some(row) = c2.generator.row_iter().position(|g| !c1.contains(g)) {
        return Err(Error::NestingViolated { row });
    }
    if c1.k == c2.k {
        return Err(Error::NoEncodedQubits(c1.k));
    }
    let d1 = c1.minimum_distance().expect("C1 strictly contains C2, so it is nonzero");
    let d2 = c2.dual().minimum_distance().expect("k2 < k1 ≤ n, so C2^⊥ is nonzero");
    let t = (d1.min(d2) - 1) / 2;
    let bit_table = SyndromeTable::new(c1.check())?;
    let phase_table = SyndromeTable::new(c2.generator())?;
    Ok(CssCode { m: c1.k - c2.k, t, c1, c2, bit_table, phase_table })
}

impl CssCode {
    pub fn n(&self) -> usize {
        self.c1.n
    }

    /// Number of encoded qubits.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Guaranteed correctable weight.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn c1(&self) -> &LinearCode {
        &self.c1
    }

    pub fn c2(&self) -> &LinearCode {
        &self.c2
    }

    /// Parity checks of `C1`, used for bit flips.
    pub fn h1(&self) -> &BinaryMatrix {
        self.c1.check()
    }

    /// Parity checks of `C2^⊥` (the generators of `C2`), used for phase flips.
    pub fn h2(&self) -> &BinaryMatrix {
        self.c2.generator()
    }

    /// Minimum-weight coset leaders for the bit- and phase-flip syndromes.
    /// Exact whenever the true error has weight at most `t`; otherwise still
    /// returns a leader.
    pub fn decode(&self, s_bit: &[bool], s_phase: &[bool]) -> Result<(Vec<bool>, Vec<bool>)> {
        Ok((self.bit_table.leader(s_bit)?, self.phase_table.leader(s_phase)?))
    }

    /// A residual bit-flip pattern acts trivially on the encoded qubits iff it
    /// lies in `C2`.
    pub fn bit_residual_is_trivial(&self, residual: &[bool]) -> bool {
        self.c2.contains(residual)
    }

    /// A residual phase-flip pattern acts trivially iff it lies in `C1^⊥`.
    pub fn phase_residual_is_trivial(&self, residual: &[bool]) -> bool {
        residual.len() == self.n() && self.c1.generator().row_iter().all(|g| !dot(g, residual))
    }
}

/// `H·eᵀ` over GF(2).
pub fn syndrome(h: &BinaryMatrix, e: &[bool]) -> Result<Vec<bool>> {
    h.mul_vec(e)
}

/// Decodes a bit/phase syndrome pair with the code's tables.
pub fn decode(code: &CssCode, s_bit: &[bool], s_phase: &[bool]) -> Result<(Vec<bool>, Vec<bool>)> {
    code.decode(s_bit, s_phase)
}

/// The `[[7, 1]]` Steane code: `C1` the `[7, 4]` Hamming code, `C2` its dual.
///
/// Both `h1` and `h2` equal the Hamming parity-check matrix whose column `j`
/// is the binary expansion of `j + 1`.
pub fn steane_css() -> CssCode {
    let h = BinaryMatrix::from_strs(&["1010101", "0110011", "0001111"]).expect("static matrix");
    let g = BinaryMatrix::from_strs(&["1110000", "1001100", "0101010", "1101001"]).expect("static matrix");
    let c1 = LinearCode::with_check(g.clone(), h.clone()).expect("Hamming code");
    let c2 = LinearCode::with_check(h, g).expect("simplex code");
    validate_css(c1, c2).expect("Steane pair is nested")
}

/// Pauli axis for [`row_operator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Z,
}

/// `σ^{r_1} ⊗ … ⊗ σ^{r_n}` as a dense `2ⁿ × 2ⁿ` matrix (qubit 0 most significant).
pub fn row_operator(axis: PauliAxis, row: &[bool]) -> CMatrix {
    let sigma = match axis {
        PauliAxis::X => pauli_x(),
        PauliAxis::Z => pauli_z(),
    };
    let id = CMatrix::identity(2, 2);
    row.iter()
        .fold(CMatrix::from_element(1, 1, c(1.0)), |acc, &bit| kron(&acc, if bit { &sigma } else { &id }))
}
