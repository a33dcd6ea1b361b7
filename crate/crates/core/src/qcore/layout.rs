//! Subsystem bookkeeping: flat-index arithmetic and subsystem permutations.

use crate::{Error, Result};

/// A reordering of subsystems. Slot `i` of the permuted system holds
/// subsystem `self[i]` of the original one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &o in &order {
            if o >= order.len() || seen[o] {
                return Err(Error::InvalidSelection(format!("{order:?} is not a permutation")));
            }
            seen[o] = true;
        }
        Ok(Self(order))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &o)| i == o)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (slot, &orig) in self.0.iter().enumerate() {
            inv[orig] = slot;
        }
        Self(inv)
    }

    /// Subsystem dimensions after permuting.
    pub fn apply_to_dims(&self, dims: &[usize]) -> Vec<usize> {
        self.0.iter().map(|&o| dims[o]).collect()
    }

    /// `map[old_flat] = new_flat` for a system with the given dims.
    pub(crate) fn index_map(&self, dims: &[usize]) -> Vec<usize> {
        assert_eq!(dims.len(), self.0.len(), "permutation arity");
        let new_dims = self.apply_to_dims(dims);
        let new_strides = strides(&new_dims);
        // stride, in the new layout, of each original subsystem
        let mut stride_of_orig = vec![0; dims.len()];
        for (slot, &orig) in self.0.iter().enumerate() {
            stride_of_orig[orig] = new_strides[slot];
        }
        let total: usize = dims.iter().product();
        let mut map = Vec::with_capacity(total);
        let mut digits = vec![0usize; dims.len()];
        for _ in 0..total {
            map.push(digits.iter().zip(&stride_of_orig).map(|(d, s)| d * s).sum());
            increment(&mut digits, dims);
        }
        map
    }
}

pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

/// Row-major odometer increment; wraps to all zeros after the last index.
pub(crate) fn increment(digits: &mut [usize], dims: &[usize]) {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < dims[i] {
            return;
        }
        digits[i] = 0;
    }
}

/// Checks a subsystem selection: nonempty, in range, no repeats.
pub(crate) fn check_selection(sel: &[usize], count: usize) -> Result<()> {
    if sel.is_empty() {
        return Err(Error::InvalidSelection("empty subsystem selection".into()));
    }
    let mut seen = vec![false; count];
    for &i in sel {
        if i >= count {
            return Err(Error::SubsystemOutOfRange { index: i, count });
        }
        if seen[i] {
            return Err(Error::InvalidSelection(format!("subsystem {i} listed twice")));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Permutation bringing `front` (in the given order) to the leading slots,
/// followed by the remaining subsystems in their original order.
pub(crate) fn front_permutation(front: &[usize], count: usize) -> Permutation {
    let mut order = front.to_vec();
    order.extend((0..count).filter(|i| !front.contains(i)));
    Permutation(order)
}
