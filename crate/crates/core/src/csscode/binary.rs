//! Dense GF(2) matrices and vectors.

use std::fmt;

use crate::{Error, Result};

/// Number of ones.
pub fn weight(v: &[bool]) -> usize {
    v.iter().filter(|&&b| b).count()
}

pub fn xor(a: &[bool], b: &[bool]) -> Vec<bool> {
    assert_eq!(a.len(), b.len(), "xor of vectors with different lengths");
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

pub fn dot(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).fold(false, |acc, (x, y)| acc ^ (x & y))
}

/// Parses a string of `0`/`1` characters.
pub fn parse_bits(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|ch| match ch {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

pub fn format_bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Bits `0..len` of `x`, least significant first.
pub(crate) fn bits_of(x: u64, len: usize) -> Vec<bool> {
    (0..len).map(|i| (x >> i) & 1 == 1).collect()
}

/// Packs up to 64 bits, first element least significant.
pub(crate) fn pack(v: &[bool]) -> u64 {
    debug_assert!(v.len() <= 64);
    v.iter().enumerate().fold(0, |acc, (i, &b)| acc | ((b as u64) << i))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_bits(self.row(r)))?;
        }
        write!(f, "]")
    }
}

impl BinaryMatrix {
    pub fn new(rows: usize, cols: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: bits.len() });
        }
        Ok(Self { rows, cols, bits })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, bits: vec![false; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// All rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<bool>], cols: usize) -> Result<Self> {
        let mut bits = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            bits.extend_from_slice(r);
        }
        Ok(Self { rows: rows.len(), cols, bits })
    }

    /// Rows given as `0`/`1` strings of equal length.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .enumerate()
            .map(|(i, s)| parse_bits(s).ok_or_else(|| Error::Parse { line: i + 1, msg: format!("not a bit string: {s:?}") }))
            .collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, Vec::len);
        Self::from_rows(&parsed, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.bits[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[bool] {
        &self.bits[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[bool]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<bool> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// `M·v` over GF(2).
    pub fn mul_vec(&self, v: &[bool]) -> Result<Vec<bool>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok(self.row_iter().map(|row| dot(row, v)).collect())
    }

    pub fn mul(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let v = (0..self.cols).fold(false, |acc, k| acc ^ (self.get(r, k) & other.get(k, c)));
                out.set(r, c, v);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (BinaryMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(p, lead);
            for r in 0..m.rows {
                if r != lead && m.get(r, c) {
                    m.add_row(lead, r);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (as rows) of `{x : M·x = 0}`.
    pub fn nullspace(&self) -> BinaryMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            basis.set(i, f, true);
            for (pr, &pc) in pivots.iter().enumerate() {
                if r.get(pr, f) {
                    basis.set(i, pc, true);
                }
            }
        }
        basis
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[bool]) -> bool {
        if v.len() != self.cols {
            return false;
        }
        let mut rows: Vec<Vec<bool>> = self.row_iter().map(<[bool]>::to_vec).collect();
        let base = rows.len();
        rows.push(v.to_vec());
        let stacked = Self::from_rows(&rows, self.cols).expect("consistent widths");
        stacked.rank() == Self::from_rows(&rows[..base], self.cols).expect("consistent widths").rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.bits.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// row[dst] ^= row[src]
    fn add_row(&mut self, src: usize, dst: usize) {
        for c in 0..self.cols {
            let v = self.get(src, c);
            if v {
                let i = dst * self.cols + c;
                self.bits[i] = !self.bits[i];
            }
        }
    }
}
