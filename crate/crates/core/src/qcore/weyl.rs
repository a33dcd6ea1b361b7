use std::f64::consts::PI;

use super::{c, CMatrix, C64};

/// Shift `X|l⟩ = |l+1 mod d⟩` and clock `Z|l⟩ = ω^l |l⟩`, `ω = e^{2πi/d}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylPair {
    d: usize,
    shift: CMatrix,
    clock: CMatrix,
}

impl WeylPair {
    pub fn new(d: usize) -> Self {
        let shift = CMatrix::from_fn(d, d, |r, col| if r == (col + 1) % d { c(1.0) } else { c(0.0) });
        let clock = CMatrix::from_fn(d, d, |r, col| if r == col { root_of_unity(d, r) } else { c(0.0) });
        Self { d, shift, clock }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn omega(&self) -> C64 {
        root_of_unity(self.d, 1)
    }

    pub fn shift(&self) -> &CMatrix {
        &self.shift
    }

    pub fn clock(&self) -> &CMatrix {
        &self.clock
    }

    /// `X^a Z^b`, built entrywise: it maps `|l⟩` to `ω^{bl} |l+a⟩`.
    pub fn displacement(&self, a: usize, b: usize) -> CMatrix {
        let d = self.d;
        CMatrix::from_fn(d, d, |r, col| {
            if r == (col + a) % d {
                root_of_unity(d, (b * col) % d)
            } else {
                c(0.0)
            }
        })
    }
}

/// `e^{2πi k/d}`.
pub(crate) fn root_of_unity(d: usize, k: usize) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * (k % d) as f64 / d as f64)
}
